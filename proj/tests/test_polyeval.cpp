#include <doctest.h>

#include "lacunary/polyeval.hpp"
#include "oracles.hpp"

using namespace lacunary;

namespace {

const PrecisionContext kCtx;

Real as_real(const ExactRational& q) { return kCtx.real(q); }

}  // namespace

TEST_CASE("eval_exact small cases") {
  CHECK(eval_exact(0, 2) == 1);
  CHECK(eval_exact(2, 2) == ExactRational(7, 2));
  CHECK(eval_exact(5, 2) == ExactRational(12625, 1024));
  CHECK(oracle::brute_force_sum(5, 0, 2) == ExactRational(12625, 1024));
  CHECK(eval_exact(1, 10) == 2);
}

TEST_CASE("eval_exact matches term-by-term summation") {
  for (const ExactRational y : {ExactRational(2), ExactRational(3, 2), ExactRational(7, 2), ExactRational(101, 100)}) {
    for (unsigned long n = 0; n <= 60; ++n) {
      REQUIRE(eval_exact(n, y) == oracle::brute_force_sum(n, 0, y));
    }
  }
}

TEST_CASE("eval_exact accepts y <= 1 as a plain polynomial value") {
  CHECK(eval_exact(10, 1) == 1024);  // (1 + 1)^10
  CHECK(eval_exact(7, ExactRational(1, 2)) == oracle::brute_force_sum(7, 0, ExactRational(1, 2)));
  CHECK_THROWS_AS(eval_exact(3, 0), Error);
}

TEST_CASE("eval_exact enforces the exact-mode cap") {
  try {
    eval_exact(kExactModeCap + 1, 2);
    FAIL("expected exact-cap-exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == "exact-cap-exceeded");
    CHECK(std::string(e.what()).find("3000") != std::string::npos);
  }
}

TEST_CASE("eval_float examples") {
  FloatEval five = eval_float(5, kCtx.real(2), kCtx);
  CHECK(five.value == kCtx.real("12.3291015625"));
  CHECK(eval_float(1, kCtx.real(10), kCtx).value == kCtx.real(2));

  FloatEval big = eval_float(1000, kCtx.real(2), kCtx);
  CHECK(oracle::rel_err(big.value, as_real(eval_exact(1000, 2))) <= kCtx.eps());
  CHECK(big.truncation.first_omitted_index.has_value());
  CHECK(big.truncation.terms_used < 100);
}

TEST_CASE("eval_float and eval_log reject y <= 1") {
  for (long bad : {1L, 0L}) {
    try {
      eval_float(5, kCtx.real(bad), kCtx);
      FAIL("expected y-out-of-domain");
    } catch (const Error& e) {
      CHECK(e.code() == "y-out-of-domain");
    }
    CHECK_THROWS_AS(eval_log(5, kCtx.real(bad), kCtx), Error);
  }
}

TEST_CASE("eval_log examples") {
  CHECK(oracle::rel_err(eval_log(1, kCtx.real(2), kCtx).value.log_magnitude, log(kCtx.real(2))) <= kCtx.eps());

  Real want = log(as_real(ExactRational(12625, 1024)));
  CHECK(oracle::rel_err(eval_log(5, kCtx.real(2), kCtx).value.log_magnitude, want) <= kCtx.eps());
  CHECK(want.to_double() == doctest::Approx(2.5119624485441077).epsilon(1e-14));

  Real via_float = log(eval_float(10000, kCtx.real(2), kCtx).value);
  CHECK(oracle::rel_err(eval_log(10000, kCtx.real(2), kCtx).value.log_magnitude, via_float) <= kCtx.eps());
}

TEST_CASE("float and log modes agree with exact evaluation for n <= 200") {
  for (const ExactRational y : {ExactRational(3, 2), ExactRational(2), ExactRational(4), ExactRational(7, 2)}) {
    const Real yr = as_real(y);
    for (unsigned long n = 1; n <= 200; ++n) {
      Real exact = as_real(eval_exact(n, y));
      REQUIRE(oracle::rel_err(eval_float(n, yr, kCtx).value, exact) <= kCtx.eps());
      REQUIRE(oracle::rel_err(eval_log(n, yr, kCtx).value.log_magnitude, log(exact)) <= kCtx.eps());
    }
  }
}

TEST_CASE("float and log modes agree with exact evaluation at n = 1000 and 3000") {
  for (unsigned long n : {1000UL, 3000UL}) {
    Real exact = as_real(eval_exact(n, 2));
    CHECK(oracle::rel_err(eval_float(n, kCtx.real(2), kCtx).value, exact) <= kCtx.eps());
    CHECK(oracle::rel_err(eval_log(n, kCtx.real(2), kCtx).value.log_magnitude, log(exact)) <= kCtx.eps());
  }
}

TEST_CASE("truncation bound covers everything that was cut") {
  for (const char* y_text : {"1.5", "2", "4"}) {
    const Real y = kCtx.real(y_text);
    for (unsigned long n = 1; n <= 500; n += (n < 50 ? 1 : 7)) {
      FloatEval cut = eval_float(n, y, kCtx);
      FloatEval full = eval_float(n, y, kCtx, SumPolicy::kFull);
      CHECK(full.truncation.terms_used == n + 1);
      CHECK_FALSE(full.truncation.first_omitted_index.has_value());
      Real omitted = full.value - cut.value;
      // the two sums round differently, allow one eps of slack
      REQUIRE(omitted <= cut.truncation.omitted_tail_bound + kCtx.eps() * full.value);
      if (cut.truncation.first_omitted_index) {
        CHECK(cut.truncation.omitted_tail_bound <= kCtx.eps() * cut.value);
      }
    }
  }
}

TEST_CASE("adaptive and full log sums agree for n <= 10^4") {
  for (unsigned long n : {10UL, 1000UL, 10000UL}) {
    LogEval cut = eval_log(n, kCtx.real(2), kCtx);
    LogEval full = eval_log(n, kCtx.real(2), kCtx, SumPolicy::kFull);
    CHECK(oracle::rel_err(cut.value.log_magnitude, full.value.log_magnitude) <= kCtx.eps());
  }
}

TEST_CASE("log mode reaches n = 10^7 and beyond with few terms") {
  LogEval big = eval_log(10000000, kCtx.real("1.01"), kCtx);
  CHECK(big.value.log_magnitude.is_finite());
  CHECK(big.value.log_magnitude > 700);  // beyond double range for f_n itself
  CHECK(big.truncation.terms_used < 10000);

  LogEval huge = eval_log(1000000000, kCtx.real(2), kCtx);
  CHECK(huge.truncation.terms_used < 200);
}

TEST_CASE("f_n(1/y) grows strictly with n") {
  for (const ExactRational y : {ExactRational(2), ExactRational(3, 2), ExactRational(11, 10)}) {
    ExactRational prev = eval_exact(0, y);
    for (unsigned long n = 1; n <= 200; ++n) {
      ExactRational cur = eval_exact(n, y);
      REQUIRE(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("forward_difference examples") {
  CHECK(forward_difference(1, 1, 2) == ExactRational(3, 2));
  CHECK(forward_difference(3, 0, 2) == ExactRational(45, 8));
  ExactRational second = eval_exact(4, 2) - 2 * eval_exact(3, 2) + eval_exact(2, 2);
  CHECK(forward_difference(2, 2, 2) == second);
  CHECK_THROWS_AS(forward_difference(2990, 11, 2), Error);
}

TEST_CASE("closed-form differences equal r-fold telescoping, n + r <= 60, r <= 10") {
  for (const ExactRational y : {ExactRational(2), ExactRational(7, 2)}) {
    std::vector<ExactRational> f;
    for (unsigned long n = 0; n <= 60; ++n) f.push_back(eval_exact(n, y));
    auto seq = [&](unsigned long m) { return f.at(m); };
    for (unsigned long r = 0; r <= 10; ++r) {
      for (unsigned long n = 0; n + r <= 60; ++n) {
        REQUIRE(forward_difference(n, r, y) == oracle::telescoped(seq, n, r));
      }
    }
  }
}

TEST_CASE("absolute monotonicity certificates") {
  MonotonicityCertificate small = certify_absolute_monotonicity(5, 3, 2);
  CHECK(small.entries.size() == 24);
  for (const auto& e : small.entries) CHECK(sgn(e.value) > 0);

  MonotonicityCertificate trivial = certify_absolute_monotonicity(0, 0, 2);
  REQUIRE(trivial.entries.size() == 1);
  CHECK(trivial.entries[0].n == 0);
  CHECK(trivial.entries[0].r == 0);
  CHECK(trivial.entries[0].value == 1);

  MonotonicityCertificate wider = certify_absolute_monotonicity(10, 5, 3);
  CHECK(wider.entries.size() == 66);
  for (const auto& e : wider.entries) {
    CHECK(sgn(e.value) > 0);
    CHECK(e.value == oracle::brute_force_sum(e.n, e.r, 3));
  }

  CHECK_THROWS_AS(certify_absolute_monotonicity(2000, 1001, 2), Error);
}

TEST_CASE("log f_n / (log^2 n / (2 log y)) approaches 1 slowly") {
  // The ratio behaves like 1 - 2(log log n - log(sqrt(y) log y) - 1)/log n, whose
  // turning point lies near n = 1.4e3 for y = 2 and n = 1e9 for y = 4.
  auto ratio = [](unsigned long n, const char* y_text) {
    Real y = kCtx.real(y_text);
    Real ln = log(kCtx.real(static_cast<long>(n)));
    return eval_log(n, y, kCtx).value.log_magnitude / (square(ln) / (log(y) * 2));
  };
  const std::vector<unsigned long> grid{100, 1000, 10000, 100000, 1000000};

  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(ratio(grid[i], "1.5") > ratio(grid[i - 1], "1.5"));
    CHECK(ratio(grid[i], "4") < ratio(grid[i - 1], "4"));
    if (grid[i - 1] >= 1000) CHECK(ratio(grid[i], "2") > ratio(grid[i - 1], "2"));
  }
  for (const char* y : {"1.5", "2", "4"}) {
    Real last = ratio(1000000, y);
    CHECK(last > kCtx.real("0.5"));
    CHECK(last < kCtx.real("1.2"));
  }
}
