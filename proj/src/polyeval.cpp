#include "lacunary/polyeval.hpp"

#include <string>

namespace lacunary {

namespace {

void require_exact_cap(unsigned long size, const char* what) {
  if (size > kExactModeCap) {
    throw Error(ErrorKind::kExactCapExceeded, std::string(what) + " = " + std::to_string(size) +
                                                  " exceeds the exact-mode cap " +
                                                  std::to_string(kExactModeCap));
  }
}

void require_positive(const ExactRational& y) {
  if (sgn(y) <= 0) {
    throw Error(ErrorKind::kYOutOfDomain, "y must be positive, got " + y.get_str());
  }
}

void require_above_one(const Real& y) {
  if (!(y > 1)) {
    throw Error(ErrorKind::kYOutOfDomain, "y must exceed 1");
  }
}

BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// sum_{k=0}^{n} C(n,k) z^{C(k+r,2)} for z = 1/y = q/p, exactly.
//
// Nested form: z^{C(r,2)} (c_0 + z^r (c_1 + z^{r+1} (c_2 + ...))). Each bracket
// B_k = N_k / p^{D_k} with D_k = D_{k+1} + k + r keeps an integer numerator,
//   N_k = c_k p^{D_k} + q^{k+r} N_{k+1},
// so the whole sum costs one gcd at the end.
ExactRational lacunary_sum(unsigned long n, unsigned long r, const ExactRational& y) {
  const BigInt& p = y.get_num();
  const BigInt& q = y.get_den();
  const bool integral_y = q == 1;

  BigInt coeff = 1;  // C(n, k), walked down from k = n
  BigInt numer = 1;  // N_n = c_n
  BigInt p_pow = 1;  // p^{D_k}
  for (unsigned long k = n; k-- > 0;) {
    // c_k = c_{k+1} * (k+1) / (n-k)
    coeff *= k + 1;
    mpz_divexact_ui(coeff.get_mpz_t(), coeff.get_mpz_t(), n - k);
    p_pow *= ipow(p, k + r);
    if (!integral_y) {
      numer *= ipow(q, k + r);
    }
    numer += coeff * p_pow;
  }

  const unsigned long shift = r * (r - (r > 0 ? 1 : 0)) / 2;  // C(r,2)
  BigInt num = numer;
  BigInt den = p_pow;
  if (shift > 0) {
    den *= ipow(p, shift);
    if (!integral_y) num *= ipow(q, shift);
  }
  return make_rational(num, den);
}

}  // namespace

ExactRational eval_exact(unsigned long n, const ExactRational& y) {
  require_exact_cap(n, "n");
  require_positive(y);
  return lacunary_sum(n, 0, y);
}

ExactRational forward_difference(unsigned long n, unsigned long r, const ExactRational& y) {
  require_exact_cap(n + r, "n + r");
  require_positive(y);
  return lacunary_sum(n, r, y);
}

FloatEval eval_float(unsigned long n, const Real& y_in, const PrecisionContext& ctx, SumPolicy policy) {
  require_above_one(y_in);
  const Bits prec = ctx.bits();
  const Real y = y_in.with_precision(prec);
  const Real inv_y = 1L / y;
  const Real eps = ctx.eps();

  FloatEval out{Real::zero(prec), {0, std::nullopt, Real::zero(prec)}};
  Real sum = Real::zero(prec);
  Real carry = Real::zero(prec);
  Real term(1, prec);       // t_k
  Real inv_y_pow(1, prec);  // y^{-k}

  for (unsigned long k = 0;; ++k) {
    Real next_sum = sum + term;
    carry += (sum - next_sum) + term;  // terms are positive and sum >= term after k = 0
    sum = std::move(next_sum);
    out.truncation.terms_used = k + 1;
    if (k == n) break;

    // t_{k+1} / t_k = ((n-k)/(k+1)) y^{-k}, strictly decreasing in k.
    Real ratio = inv_y_pow * static_cast<long>(n - k) / static_cast<long>(k + 1);
    Real next = term * ratio;
    if (policy == SumPolicy::kAdaptive && ratio < 1 && k + 1 < n) {
      Real ratio_next = inv_y_pow * inv_y * static_cast<long>(n - k - 1) / static_cast<long>(k + 2);
      if (ratio_next < 1) {
        Real bound = next / (1L - ratio_next);
        if (bound <= eps * (sum + carry)) {
          out.truncation.first_omitted_index = k + 1;
          out.truncation.omitted_tail_bound = std::move(bound);
          break;
        }
      }
    }
    term = std::move(next);
    inv_y_pow *= inv_y;
  }
  out.value = sum + carry;
  return out;
}

LogEval eval_log(unsigned long n, const Real& y_in, const PrecisionContext& ctx, SumPolicy policy) {
  require_above_one(y_in);
  const Bits prec = ctx.bits();
  const Real log_y = log(y_in.with_precision(prec));
  const Real log_eps = log(ctx.eps());

  LogEval out{LogValue::zero(prec), {0, std::nullopt, Real::zero(prec)}};
  LogSumAccumulator acc(prec);
  Real log_term = Real::zero(prec);  // log t_k

  // log of t_{k+1}/t_k
  auto log_ratio = [&](unsigned long k) {
    return log(Real(n - k, prec)) - log(Real(k + 1, prec)) - log_y * static_cast<long>(k);
  };

  for (unsigned long k = 0;; ++k) {
    acc.add(log_term);
    out.truncation.terms_used = k + 1;
    if (k == n) break;

    Real step = log_ratio(k);
    Real log_next = log_term + step;
    if (policy == SumPolicy::kAdaptive && step.sign() < 0 && k + 1 < n) {
      Real step_next = log_ratio(k + 1);
      if (step_next.sign() < 0) {
        // tail <= t_{k+1} / (1 - ratio_{k+1})
        Real log_bound = log_next - log(-expm1(step_next));
        if (log_bound <= log_eps + acc.result()) {
          out.truncation.first_omitted_index = k + 1;
          out.truncation.omitted_tail_bound = exp(log_bound);
          break;
        }
      }
    }
    log_term = std::move(log_next);
  }
  out.value = LogValue::from_log(acc.result());
  return out;
}

MonotonicityCertificate certify_absolute_monotonicity(unsigned long max_n, unsigned long max_r,
                                                      const ExactRational& y) {
  require_exact_cap(max_n + max_r, "N + R");
  require_positive(y);

  // table[r][n] = Delta^r f_n for n + r <= max_n + max_r
  const unsigned long span = max_n + max_r;
  std::vector<std::vector<ExactRational>> table(max_r + 1);
  for (unsigned long r = 0; r <= max_r; ++r) {
    for (unsigned long n = 0; n + r <= span; ++n) {
      table[r].push_back(lacunary_sum(n, r, y));
    }
  }

  auto violation = [](unsigned long n, unsigned long r, const std::string& why) {
    return Error(ErrorKind::kMonotonicityViolation,
                 "at (n=" + std::to_string(n) + ", r=" + std::to_string(r) + "): " + why);
  };

  MonotonicityCertificate cert{y, max_n, max_r, {}};
  cert.entries.reserve((max_n + 1) * (max_r + 1));
  for (unsigned long n = 0; n <= max_n; ++n) {
    for (unsigned long r = 0; r <= max_r; ++r) {
      const ExactRational& value = table[r][n];
      if (sgn(value) <= 0) {
        throw violation(n, r, "non-positive difference " + value.get_str());
      }
      if (r > 0 && value != table[r - 1][n + 1] - table[r - 1][n]) {
        throw violation(n, r, "closed form disagrees with the telescoped difference");
      }
      cert.entries.push_back({n, r, value});
    }
  }
  return cert;
}

}  // namespace lacunary
