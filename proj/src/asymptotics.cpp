#include "lacunary/asymptotics.hpp"

#include <string>
#include <utility>

#include "lacunary/solvers.hpp"

namespace lacunary {

namespace {

// i^nu * c as a complex number with an exactly zero other component.
Complex times_i_power(const Real& c, int nu) {
  Real zero = Real::zero(c.precision());
  switch (nu % 4) {
    case 0: return {c, zero};
    case 1: return {zero, c};
    case 2: return {-c, zero};
    default: return {zero, -c};
  }
}

Real factorial(int nu, Bits prec) {
  Real out(1, prec);
  for (int j = 2; j <= nu; ++j) out *= j;
  return out;
}

// sum_{k>=1} k^{nu-1} (-x)^k for 0 < x < 1. Past the peak the magnitudes
// decay with ratio ((k+1)/k)^{nu-1} x, decreasing in k, so the remaining tail
// is bounded by the next term over (1 - its ratio).
Real alternating_power_series(const Real& x, int nu, const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  const Real eps = ctx.eps();
  const unsigned long power = static_cast<unsigned long>(nu - 1);
  auto ratio_at = [&](unsigned long k) {
    return pow(Real(k + 1, prec) / static_cast<long>(k), power) * x;
  };

  Real partial = Real::zero(prec);
  Real abs_sum = Real::zero(prec);
  Real magnitude = x;  // k^{nu-1} x^k at k = 1
  for (unsigned long k = 1;; ++k) {
    if (k % 2 == 1) {
      partial -= magnitude;
    } else {
      partial += magnitude;
    }
    abs_sum += magnitude;

    Real ratio = ratio_at(k);
    Real next = magnitude * ratio;
    if (ratio < 1) {
      Real ratio_next = ratio_at(k + 1);
      Real bound = next / (1L - ratio_next);
      if (bound <= eps * abs(partial) || bound <= eps * eps * abs_sum) break;
    }
    magnitude = std::move(next);
  }
  return partial;
}

// sum_{k=1}^{K} q^{k^2} cos(2kz) with K from the theta tail rule.
ThetaResult theta_tail(const Real& z, const Real& q, const Real& eps, const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  if (q.sign() < 0 || !(q < 1)) {
    throw Error(ErrorKind::kNomeOutOfDomain, "theta nome must lie in [0, 1)");
  }
  if (q.is_zero()) {
    return {Real::zero(prec), 0};
  }
  const Real log_q = log(q);
  const Real log_limit = log(eps) - log(Real(2, prec)) + log1p(-q);
  unsigned long terms = 0;
  while (log_q * static_cast<long>((terms + 1) * (terms + 1)) > log_limit) {
    ++terms;
  }
  Real sum = Real::zero(prec);
  for (unsigned long k = 1; k <= terms; ++k) {
    sum += exp(log_q * static_cast<long>(k * k)) * cos(z * static_cast<long>(2 * k));
  }
  return {std::move(sum), terms};
}

}  // namespace

SaddleData saddle_data(unsigned long n, const Real& y_in, int order, const PrecisionContext& ctx) {
  if (n < kMinSaddleN) {
    throw Error(ErrorKind::kSaddleHypothesisViolated,
                "sqrt(y) e^{-r(n)} < 1 needs n >= " + std::to_string(kMinSaddleN) + ", got n = " + std::to_string(n));
  }
  if (order < 3) {
    throw Error(ErrorKind::kInvalidArgument, "Taylor order must be at least 3");
  }
  const Bits prec = ctx.bits();
  const SaddleEquationSpec spec = SaddleEquationSpec::make(Real(n, prec), y_in, ctx);
  Real r = solve_r(spec.n, spec.y, ctx).t;
  Real x = spec.sqrt_y * exp(-r);
  if (!(x < 1)) {
    throw Error(ErrorKind::kSaddleHypothesisViolated,
                "sqrt(y) e^{-r(n)} >= 1 at n = " + std::to_string(n) + "; minimal admissible n is " +
                    std::to_string(kMinSaddleN));
  }
  const Real two_log_y = spec.log_y * 2;
  Real one_plus_x = x + 1;
  Real a = 1L / two_log_y + spec.n * x / (square(one_plus_x) * 2);
  Real psi0 = square(r) / two_log_y + spec.n * log1p(x);

  std::vector<Complex> b;
  for (int nu = 3; nu <= order; ++nu) {
    Real coeff = -(spec.n * alternating_power_series(x, nu, ctx)) / factorial(nu, prec);
    b.push_back(times_i_power(coeff, nu));
  }
  return {n, spec.y, std::move(r), std::move(x), std::move(a), std::move(psi0), std::move(b)};
}

std::vector<BigInt> euler_frobenius(unsigned nu) {
  if (nu > kMaxEulerFrobenius) {
    throw Error(ErrorKind::kInvalidArgument, "Euler-Frobenius degree above " + std::to_string(kMaxEulerFrobenius));
  }
  // P_{m+1}(z) = z (1 - z) P_m'(z) + (m + 1) z P_m(z),  P_0 = 1
  std::vector<BigInt> poly{1};
  for (unsigned m = 0; m < nu; ++m) {
    std::vector<BigInt> next(poly.size() + 1, 0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      // z P_m' contributes j c_j z^j, -z^2 P_m' contributes -j c_j z^{j+1}
      next[j] += poly[j] * static_cast<unsigned long>(j);
      next[j + 1] -= poly[j] * static_cast<unsigned long>(j);
      next[j + 1] += poly[j] * static_cast<unsigned long>(m + 1);
    }
    poly = std::move(next);
  }
  return poly;
}

Complex b_closed_form(unsigned long n, const Real& x_in, int nu, const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  const Real x = x_in.with_precision(prec);
  const std::vector<BigInt> coeffs = euler_frobenius(static_cast<unsigned>(nu - 1));
  // Horner at z = -x
  Real value = Real::zero(prec);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    value = value * (-x) + Real(*it, prec);
  }
  Real coeff = -(Real(n, prec) * value) / (pow(x + 1, static_cast<unsigned long>(nu)) * factorial(nu, prec));
  return times_i_power(coeff, nu);
}

ThetaResult theta3(const Real& z, const Real& q, const Real& eps, const PrecisionContext& ctx) {
  ThetaResult tail = theta_tail(z.with_precision(ctx.bits()), q.with_precision(ctx.bits()), eps, ctx);
  tail.value = ldexp(tail.value, 1) + 1;
  return tail;
}

Real theta_nome(const Real& y, const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  return exp(-(square(pi(prec)) * 2) / log(y.with_precision(prec)));
}

Real rho(unsigned long n, const Real& y, const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  Real r = solve_r(Real(n, prec), y, ctx).t;
  Real z = pi(prec) * r / log(y.with_precision(prec));
  return ldexp(theta_tail(z, theta_nome(y, ctx), ctx.eps(), ctx).value, 1);
}

Real rho_bound(const Real& y, const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  return Real(2, prec) / expm1(square(pi(prec)) * 2 / log(y.with_precision(prec)));
}

namespace {

// -log(t)/2 + (t^2 + 2t) / (2 log y)
Real log_leading_factor(const Real& t, const Real& log_y) {
  return (square(t) + t * 2) / (log_y * 2) - ldexp(log(t), -1);
}

}  // namespace

Real approx_bdm(unsigned long n, const Real& y, const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  Real w = solve_w(Real(n, prec), y, ctx).t;
  return log_leading_factor(w, log(y.with_precision(prec)));
}

ApproxRecord approx_theorem(unsigned long n, const Real& y_in, const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  const Real y = y_in.with_precision(prec);
  const Real log_y = log(y);

  Real w = solve_w(Real(n, prec), y, ctx).t;
  Real r = solve_r(Real(n, prec), y, ctx).t;
  LogValue log_exact = eval_log(n, y, ctx).value;
  Real log_bdm = log_leading_factor(w, log_y);
  Real log_thm = log_leading_factor(r, log_y);

  ThetaResult tail = theta_tail(pi(prec) * r / log_y, theta_nome(y, ctx), ctx.eps(), ctx);
  Real rho_value = ldexp(tail.value, 1);
  Real theta = rho_value + 1;

  Real ratio_bdm = exp(log_exact.log_magnitude - log_bdm);
  Real ratio_thm = exp(log_exact.log_magnitude - log_thm) / theta;
  return {n,
          y,
          std::move(log_exact),
          std::move(log_bdm),
          std::move(log_thm),
          std::move(theta),
          std::move(rho_value),
          std::move(ratio_bdm),
          std::move(ratio_thm),
          std::move(w),
          std::move(r)};
}

ProofResiduals proof_residuals(const SaddleData& s, const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  const Real log_y = log(s.y.with_precision(prec));
  Real two_a_log_y = s.a * log_y * 2;
  Real identity_err = abs(two_a_log_y - 1L - s.r / (s.x + 1));
  Real psi0_residual = s.psi0 - (square(s.r) + s.r * 2) / (log_y * 2);
  Real s_form_log = s.psi0 - ldexp(log(two_a_log_y), -1);
  return {std::move(identity_err), std::move(psi0_residual), std::move(s_form_log)};
}

ProofResiduals proof_residuals(unsigned long n, const Real& y, const PrecisionContext& ctx) {
  return proof_residuals(saddle_data(n, y, 3, ctx), ctx);
}

}  // namespace lacunary
