#pragma once

// Independent numerical oracle for f_n(1/y) through its Gaussian-weight
// integral representation
//
//   f_n(1/y) = (2 pi log y)^{-1/2} * int exp(-s^2 / (2 log y)) (1 + sqrt(y) e^{is})^n ds
//
// and through the same integral with the line moved to Im s = r(n), where the
// integrand becomes exp(psi_n(s)).

#include <functional>
#include <vector>

#include "lacunary/numerics.hpp"

namespace lacunary {

// Largest n the quadrature oracle accepts. The truncation radius grows like
// sqrt(n) and the working precision like n.
inline constexpr unsigned long kQuadratureCap = 60;
inline constexpr int kMaxHalvings = 18;

struct QuadratureResult {
  Real value;             // real part of the normalised integral
  Real imag;              // imaginary part; zero up to rounding for these integrands
  Real truncation_bound;  // bound on the normalised contribution of |s| > half_width
  Real half_width;
  Real step;
  unsigned long panels = 0;
  Bits working_bits = 0;
  std::vector<Real> halving_history;  // trapezoid values, coarse to fine
};

Complex integrand_original(const Real& s, unsigned long n, const Real& y, const PrecisionContext& ctx);

// n <= kQuadratureCap, y > 1.
QuadratureResult integrate_original(unsigned long n, const Real& y, const PrecisionContext& ctx,
                                    const Real& target_eps);

// exp(psi_n(s)) for a shift height r with sqrt(y) e^{-r} < 1; throws
// kSaddleHypothesisViolated otherwise.
Complex psi_exp(const Real& s, unsigned long n, const Real& y, const Real& r, const PrecisionContext& ctx);

// Shift height r(n) (0 for n = 0). Any height gives the same integral; the
// saddle height keeps the integrand free of cancellation.
QuadratureResult integrate_shifted(unsigned long n, const Real& y, const PrecisionContext& ctx,
                                   const Real& target_eps);

// (2 pi log y)^{-1/2} int exp(-s^2 / (2 log y) + iks) ds, which equals y^{-k^2/2}.
QuadratureResult gaussian_fourier(unsigned long k, const Real& y, const PrecisionContext& ctx,
                                  const Real& target_eps);

// Composite trapezoid rule on [-half_width, half_width], halving the step from
// initial_step until two successive values agree to target_eps relative.
// Throws kQuadratureStalled after kMaxHalvings halvings.
QuadratureResult trapezoid_halving(const std::function<Complex(const Real&)>& integrand,
                                   const Real& half_width, const Real& initial_step,
                                   const Real& target_eps, Bits working_bits);

}  // namespace lacunary
