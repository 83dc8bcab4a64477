#pragma once

// Saddle-point data of the shifted integrand, the theta-function factor and
// the two competing large-n approximations of f_n(1/y):
//
//   conjectured:  w^{-1/2} exp((w^2 + 2w) / (2 log y))
//   refined:      r^{-1/2} exp((r^2 + 2r) / (2 log y)) * theta3(pi r / log y, exp(-2 pi^2 / log y))
//
// with w = W(n sqrt(y) log y) and r the root of t (e^t + sqrt y) = n sqrt(y) log y.

#include <vector>

#include "lacunary/numerics.hpp"
#include "lacunary/polyeval.hpp"

namespace lacunary {

// x = sqrt(y) e^{-r(n)} < 1 exactly when n > 1, because r(1) = log(y) / 2.
inline constexpr unsigned long kMinSaddleN = 2;
inline constexpr int kDefaultTaylorOrder = 8;

struct SaddleData {
  unsigned long n = 0;
  Real y;
  Real r;
  Real x;     // sqrt(y) e^{-r}
  Real a;     // -psi''(0) / 2
  Real psi0;  // psi(0)
  // Taylor coefficients b_3 ... b_K of psi at the saddle; b[i] is b_{i+3}.
  std::vector<Complex> b;
};

SaddleData saddle_data(unsigned long n, const Real& y, int order, const PrecisionContext& ctx);

// Same b_nu, through the Euler-Frobenius polynomial:
//   b_nu = (-n i^nu / nu!) P_{nu-1}(-x) / (1 + x)^nu
Complex b_closed_form(unsigned long n, const Real& x, int nu, const PrecisionContext& ctx);

// Integer coefficients (ascending powers) of P_nu, defined by
//   sum_{l>=0} l^nu z^l = P_nu(z) / (1 - z)^{nu+1}.
inline constexpr unsigned kMaxEulerFrobenius = 64;
std::vector<BigInt> euler_frobenius(unsigned nu);

struct ThetaResult {
  Real value;
  unsigned long terms = 0;  // K: the series is summed through k = K
};

// theta3(z, q) = 1 + 2 sum_{k>=1} q^{k^2} cos(2kz), truncated at the first K
// with 2 q^{(K+1)^2} / (1 - q) <= eps. Throws kNomeOutOfDomain unless 0 <= q < 1.
ThetaResult theta3(const Real& z, const Real& q, const Real& eps, const PrecisionContext& ctx);

// exp(-2 pi^2 / log y)
Real theta_nome(const Real& y, const PrecisionContext& ctx);

// 2 sum_{k>=1} q^{k^2} cos(2 pi k r(n) / log y)
Real rho(unsigned long n, const Real& y, const PrecisionContext& ctx);

// 2 / (e^{2 pi^2 / log y} - 1), the termwise bound on |rho|.
Real rho_bound(const Real& y, const PrecisionContext& ctx);

// Log of the conjectured approximation.
Real approx_bdm(unsigned long n, const Real& y, const PrecisionContext& ctx);

struct ApproxRecord {
  unsigned long n = 0;
  Real y;
  LogValue log_exact;
  Real log_bdm;
  Real log_thm_prefactor;
  Real theta_factor;
  Real rho;
  Real ratio_bdm;  // f_n / exp(log_bdm)
  Real ratio_thm;  // f_n / (exp(log_thm_prefactor) * theta_factor)
  Real w;
  Real r;
};

ApproxRecord approx_theorem(unsigned long n, const Real& y, const PrecisionContext& ctx);

struct ProofResiduals {
  Real prefactor_identity_err;  // |2 a log y - 1 - r / (1 + x)|
  Real psi0_residual;           // psi(0) - (r^2 + 2r) / (2 log y)
  Real s_form_log;              // psi(0) - log(2 a log y) / 2
};

ProofResiduals proof_residuals(const SaddleData& saddle, const PrecisionContext& ctx);
ProofResiduals proof_residuals(unsigned long n, const Real& y, const PrecisionContext& ctx);

}  // namespace lacunary
