#include "lacunary/quadrature.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "lacunary/solvers.hpp"

namespace lacunary {

namespace {

void require_quadrature_domain(unsigned long n, const Real& y) {
  if (n > kQuadratureCap) {
    throw Error(ErrorKind::kQuadCap,
                "n = " + std::to_string(n) + " exceeds the quadrature cap " + std::to_string(kQuadratureCap));
  }
  if (!(y > 1)) {
    throw Error(ErrorKind::kYOutOfDomain, "y must exceed 1");
  }
}

// Bits lost to cancellation when an integrand of size 2^magnitude_bits
// integrates to something of order one, plus the context guard.
Bits working_bits(const PrecisionContext& ctx, double magnitude_bits) {
  return ctx.bits() + ctx.guard_bits() + static_cast<Bits>(std::ceil(std::max(magnitude_bits, 0.0))) + 8;
}

// exp(-s^2 / (2L)) (1 + sqrt(y) e^{is})^n
struct OriginalIntegrand {
  unsigned long n;
  Real log_y;
  Real sqrt_y;

  Complex operator()(const Real& s) const {
    Complex unit = polar(Real(1, s.precision()), s);
    Complex base{unit.re * sqrt_y + 1, unit.im * sqrt_y};
    // n is an integer, so e^{i n arg} does not depend on the branch of arg.
    Real modulus = exp(-square(s) / (log_y * 2)) * pow(abs(base), n);
    return polar(modulus, arg(base) * static_cast<long>(n));
  }
};

// exp(-(s^2 + 2irs - r^2) / (2L)) (1 + x e^{is})^n with x = sqrt(y) e^{-r}
struct ShiftedIntegrand {
  unsigned long n;
  Real log_y;
  Real r;
  Real x;

  Complex operator()(const Real& s) const {
    Complex unit = polar(Real(1, s.precision()), s);
    Complex base{unit.re * x + 1, unit.im * x};
    Real gauss = exp((square(r) - square(s)) / (log_y * 2));
    Real phase = -(r * s) / log_y + arg(base) * static_cast<long>(n);
    return polar(gauss * pow(abs(base), n), phase);
  }
};

// Both tails of sup * exp(-s^2/(2L)) beyond |s| = S, normalised by sqrt(2 pi L):
//   2 sup (L/S) exp(-S^2/(2L)) / sqrt(2 pi L)
Real gaussian_tail_bound(const Real& log_sup, const Real& half_width, const Real& log_y) {
  const Bits prec = half_width.precision();
  Real two_l = log_y * 2;
  return exp(log_sup - square(half_width) / two_l) * log_y * 2 / half_width / sqrt(pi(prec) * two_l);
}

Real radius_for(const Real& log_sup, const Real& log_y, const Real& target_eps) {
  return sqrt(log_y * 2 * (log_sup - log(target_eps) + 5));
}

QuadratureResult normalise(QuadratureResult raw, const Real& log_y) {
  Real norm = sqrt(pi(log_y.precision()) * log_y * 2);
  raw.value /= norm;
  raw.imag /= norm;
  for (Real& v : raw.halving_history) v /= norm;
  return raw;
}

}  // namespace

QuadratureResult trapezoid_halving(const std::function<Complex(const Real&)>& f, const Real& half_width_in,
                                   const Real& initial_step, const Real& target_eps, Bits bits) {
  const Real half_width = half_width_in.with_precision(bits);
  const Real width = half_width * 2;
  unsigned long panels = 1;
  while (width / static_cast<long>(panels) > initial_step) panels *= 2;

  Real step = width / static_cast<long>(panels);
  Complex sum = f(-half_width) * Real("0.5", bits) + f(half_width) * Real("0.5", bits);
  for (unsigned long j = 1; j < panels; ++j) {
    sum += f(step * static_cast<long>(j) - half_width);
  }
  Complex estimate = sum * step;

  QuadratureResult out;
  out.halving_history.push_back(estimate.re);
  Real last_change = Real::zero(bits);
  for (int halving = 1; halving <= kMaxHalvings; ++halving) {
    panels *= 2;
    step = width / static_cast<long>(panels);
    for (unsigned long j = 1; j < panels; j += 2) {
      sum += f(step * static_cast<long>(j) - half_width);
    }
    Complex refined = sum * step;
    last_change = abs(refined - estimate);
    estimate = std::move(refined);
    out.halving_history.push_back(estimate.re);
    if (last_change <= target_eps * abs(estimate)) {
      out.value = estimate.re;
      out.imag = estimate.im;
      out.half_width = half_width;
      out.step = step;
      out.panels = panels;
      out.working_bits = bits;
      return out;
    }
  }
  throw Error(ErrorKind::kQuadratureStalled,
              "no convergence after " + std::to_string(kMaxHalvings) + " halvings (" + std::to_string(panels) +
                  " panels, last relative change " +
                  std::to_string((last_change / abs(estimate)).to_double()) + ")");
}

Complex integrand_original(const Real& s, unsigned long n, const Real& y, const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  const Real yp = y.with_precision(prec);
  return OriginalIntegrand{n, log(yp), sqrt(yp)}(s.with_precision(prec));
}

QuadratureResult integrate_original(unsigned long n, const Real& y, const PrecisionContext& ctx,
                                    const Real& target_eps) {
  require_quadrature_domain(n, y);
  const double sup_bits = static_cast<double>(n) * std::log2(1.0 + std::sqrt(y.to_double()));
  const Bits bits = working_bits(ctx, sup_bits);
  const Real yw = y.with_precision(bits);
  OriginalIntegrand f{n, log(yw), sqrt(yw)};

  const Real log_sup = log(f.sqrt_y + 1) * static_cast<long>(n);  // sup |(1 + sqrt(y) e^{is})^n|
  const Real eps = target_eps.with_precision(bits);
  Real half_width = radius_for(log_sup, f.log_y, eps);
  Real initial_step = pi(bits) / static_cast<long>(n + 1);

  QuadratureResult out = trapezoid_halving(std::cref(f), half_width, initial_step, eps, bits);
  out.truncation_bound = gaussian_tail_bound(log_sup, out.half_width, f.log_y);
  return normalise(std::move(out), f.log_y);
}

Complex psi_exp(const Real& s, unsigned long n, const Real& y, const Real& r, const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  const Real yp = y.with_precision(prec);
  const Real rp = r.with_precision(prec);
  Real x = sqrt(yp) * exp(-rp);
  if (!(x < 1)) {
    throw Error(ErrorKind::kSaddleHypothesisViolated, "psi_exp needs sqrt(y) e^{-r} < 1");
  }
  return ShiftedIntegrand{n, log(yp), rp, std::move(x)}(s.with_precision(prec));
}

QuadratureResult integrate_shifted(unsigned long n, const Real& y, const PrecisionContext& ctx,
                                   const Real& target_eps) {
  require_quadrature_domain(n, y);
  Real r = n == 0 ? Real::zero(ctx.bits()) : solve_r(Real(n, ctx.bits()), y, ctx).t;

  // sup |integrand| = exp(psi(0)) = exp(r^2 / (2L) + n log(1 + x))
  const Real log_y_ctx = log(y.with_precision(ctx.bits()));
  const Real x_ctx = sqrt(y.with_precision(ctx.bits())) * exp(-r);
  const Real psi0_ctx = square(r) / (log_y_ctx * 2) + log1p(x_ctx) * static_cast<long>(n);
  const Bits bits = working_bits(ctx, psi0_ctx.to_double() / std::log(2.0));

  const Real yw = y.with_precision(bits);
  const Real rw = r.with_precision(bits);
  ShiftedIntegrand f{n, log(yw), rw, sqrt(yw) * exp(-rw)};
  const Real log_sup = square(rw) / (f.log_y * 2) + log1p(f.x) * static_cast<long>(n);
  const Real eps = target_eps.with_precision(bits);
  Real half_width = radius_for(log_sup, f.log_y, eps);
  Real initial_step = pi(bits) / (rw / f.log_y + static_cast<long>(n + 1));

  QuadratureResult out = trapezoid_halving(std::cref(f), half_width, initial_step, eps, bits);
  out.truncation_bound = gaussian_tail_bound(log_sup, out.half_width, f.log_y);
  return normalise(std::move(out), f.log_y);
}

QuadratureResult gaussian_fourier(unsigned long k, const Real& y, const PrecisionContext& ctx,
                                  const Real& target_eps) {
  if (!(y > 1)) {
    throw Error(ErrorKind::kYOutOfDomain, "y must exceed 1");
  }
  // The result is y^{-k^2/2} against an integrand of size one.
  const double lost_bits = static_cast<double>(k * k) * std::log2(y.to_double()) / 2.0;
  const Bits bits = working_bits(ctx, lost_bits);
  const Real log_y = log(y.with_precision(bits));
  const Real eps = target_eps.with_precision(bits);
  const long freq = static_cast<long>(k);

  auto f = [&](const Real& s) { return polar(exp(-square(s) / (log_y * 2)), s * freq); };
  // Cut where the Gaussian falls below eps * y^{-k^2/2}.
  const Real log_sup = log_y * static_cast<long>(k * k) / 2;
  Real half_width = radius_for(log_sup, log_y, eps);
  Real initial_step = pi(bits) / (freq + 1);

  QuadratureResult out = trapezoid_halving(f, half_width, initial_step, eps, bits);
  out.truncation_bound = gaussian_tail_bound(Real::zero(bits), out.half_width, log_y);
  return normalise(std::move(out), log_y);
}

}  // namespace lacunary
