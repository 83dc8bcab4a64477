#include <doctest.h>

#include <algorithm>
#include <vector>

#include "lacunary/numerics.hpp"
#include "oracles.hpp"

using namespace lacunary;

TEST_CASE("binomial small cases and out-of-range k") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(7, 7) == 1);
  CHECK(binomial(7, -1) == 0);
  CHECK(binomial(7, 8) == 0);
  CHECK(binomial(0, 0) == 1);
}

TEST_CASE("binomial(60, 30) matches Pascal's triangle") {
  auto rows = oracle::pascal_triangle(60);
  CHECK(rows[60][30] == BigInt("118264581564861424"));
  CHECK(binomial(60, 30) == rows[60][30]);
}

TEST_CASE("binomial satisfies Pascal's rule for all 1 <= k <= n <= 200") {
  for (unsigned long n = 1; n <= 200; ++n) {
    for (long k = 1; k <= static_cast<long>(n); ++k) {
      REQUIRE(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST_CASE("log_sum_exp examples") {
  PrecisionContext ctx;
  const Bits b = ctx.bits();
  auto ln = [&](long v) { return log(Real(v, b)); };

  std::vector<Real> equal{Real(0, b), Real(0, b)};
  CHECK(oracle::rel_err(log_sum_exp(equal, ctx), ln(2)) <= ctx.eps());

  std::vector<Real> single{ln(3)};
  CHECK(oracle::rel_err(log_sum_exp(single, ctx), ln(3)) <= ctx.eps());

  std::vector<Real> powers{ln(1), ln(2), ln(4), ln(8)};
  CHECK(oracle::rel_err(log_sum_exp(powers, ctx), ln(15)) <= ctx.eps() * 4);
}

TEST_CASE("log_sum_exp rejects an empty sequence") {
  PrecisionContext ctx;
  std::vector<Real> none;
  try {
    log_sum_exp(none, ctx);
    FAIL("expected empty-sum");
  } catch (const Error& e) {
    CHECK(e.code() == "empty-sum");
  }
}

TEST_CASE("log_sum_exp is at least the max and permutation invariant") {
  PrecisionContext ctx;
  auto gen = oracle::rng(1);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Real> xs;
    const int len = 1 + trial % 17;
    for (int i = 0; i < len; ++i) xs.emplace_back(dist(gen), ctx.bits());
    Real lse = log_sum_exp(xs, ctx);
    Real peak = *std::max_element(xs.begin(), xs.end(), [](const Real& a, const Real& b) { return a < b; });
    CHECK(lse >= peak);

    std::shuffle(xs.begin(), xs.end(), gen);
    Real again = log_sum_exp(xs, ctx);
    CHECK(abs(again - lse) <= ctx.eps() * static_cast<long>(len) * max(abs(lse), Real(1, ctx.bits())));
  }
}

TEST_CASE("compensated_sum examples") {
  PrecisionContext ctx;
  const Bits b = ctx.bits();
  Real tiny = ldexp(Real(1, b), -60);

  std::vector<Real> cancel{Real(1, b), Real(-1, b), tiny};
  CHECK(compensated_sum(cancel, ctx) == tiny);

  std::vector<Real> empty;
  CHECK(compensated_sum(empty, ctx).is_zero());

  std::vector<Real> tenths(10, ctx.real("0.1"));
  CHECK(abs(compensated_sum(tenths, ctx) - 1L) <= ctx.eps());
}

TEST_CASE("compensated_sum error is bounded independent of order") {
  PrecisionContext ctx;
  auto gen = oracle::rng(2);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  for (int trial = 0; trial < 50; ++trial) {
    // exact reference from rationals with power-of-two denominators
    std::vector<Real> xs;
    ExactRational exact = 0;
    Real abs_total = Real::zero(ctx.bits());
    for (int i = 0; i < 64; ++i) {
      long v = num(gen);
      long shift = (i * 7) % 90;
      ExactRational q(v);
      q /= ExactRational(BigInt(1) << static_cast<mp_bitcnt_t>(shift));
      exact += q;
      xs.push_back(ctx.real(q));
      abs_total += abs(xs.back());
    }
    std::shuffle(xs.begin(), xs.end(), gen);
    Real got = compensated_sum(xs, ctx);
    CHECK(abs(got - ctx.real(exact)) <= ctx.eps() * 2 * abs_total);
  }
}

TEST_CASE("exact rational arithmetic is associative and commutative") {
  auto gen = oracle::rng(3);
  std::uniform_int_distribution<long> small(-50, 50);
  auto draw = [&] {
    long d = 0;
    while (d == 0) d = small(gen);
    return make_rational(small(gen), d);
  };
  for (int trial = 0; trial < 500; ++trial) {
    ExactRational a = draw(), b = draw(), c = draw();
    CHECK(ExactRational(a + b) == ExactRational(b + a));
    CHECK(ExactRational(a * b) == ExactRational(b * a));
    CHECK(ExactRational((a + b) + c) == ExactRational(a + (b + c)));
    CHECK(ExactRational((a * b) * c) == ExactRational(a * (b * c)));
    ExactRational sum = a + b;
    CHECK(gcd(sum.get_num(), sum.get_den()) == 1);
    CHECK(sum.get_den() > 0);
  }
}

TEST_CASE("parse_rational accepts fractions, integers and decimals exactly") {
  CHECK(parse_rational("7/2") == ExactRational(7, 2));
  CHECK(parse_rational("14/4") == ExactRational(7, 2));
  CHECK(parse_rational("2") == ExactRational(2));
  CHECK(parse_rational("1.5") == ExactRational(3, 2));
  CHECK(parse_rational("1.01") == ExactRational(101, 100));
  CHECK(parse_rational("1e6") == ExactRational(1000000));
  CHECK(parse_rational("-2.5e-1") == ExactRational(-1, 4));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK_THROWS_AS(parse_rational("1.2.3"), Error);
}

TEST_CASE("precision context invariants") {
  PrecisionContext ctx;
  CHECK(ctx.bits() == 128);
  CHECK(ctx.guard_bits() == 16);
  CHECK(ctx.eps() == ldexp(Real(1, 128), -112));
  CHECK(ctx.resid_tol() == ctx.eps() * 4);
  CHECK_THROWS_AS(PrecisionContext(52), Error);
  CHECK_THROWS_AS(PrecisionContext(128, 4), Error);
  CHECK(PrecisionContext(256).eps() == ldexp(Real(1, 256), -240));
}

TEST_CASE("LogValue addition is log-sum-exp and zero is the identity") {
  PrecisionContext ctx;
  LogValue a = LogValue::from_log(log(ctx.real(3)));
  LogValue b = LogValue::from_log(log(ctx.real(5)));
  CHECK(oracle::rel_err((a + b).log_magnitude, log(ctx.real(8))) <= ctx.eps());
  CHECK(oracle::rel_err((a * b).log_magnitude, log(ctx.real(15))) <= ctx.eps());
  CHECK((a + LogValue::zero(ctx.bits())).log_magnitude == a.log_magnitude);
  // far beyond double range
  LogValue huge = LogValue::from_log(ctx.real(100000));
  CHECK((huge + huge).log_magnitude > 100000);
}

TEST_CASE("Real keeps the larger operand precision") {
  Real a(1, 64);
  Real b(3, 200);
  CHECK((a / b).precision() == 200);
  CHECK((b * 2).precision() == 200);
  CHECK(Real("1.5", 128) == Real(3, 128) / 2);
  CHECK_THROWS(Real("1.5x", 128));
}
