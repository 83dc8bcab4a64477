#pragma once

// Positive roots of the two saddle-point equations
//
//   t e^t            = n sqrt(y) log y     (w(n), via Lambert W)
//   t (e^t + sqrt y) = n sqrt(y) log y     (r(n))
//
// n is a positive real so that constructed inverses are testable.

#include "lacunary/numerics.hpp"

namespace lacunary {

inline constexpr int kSolverMaxIter = 200;

struct SaddleEquationSpec {
  Real n;
  Real y;
  Real sqrt_y;
  Real log_y;
  Real rhs;  // n sqrt(y) log y

  // Throws kYOutOfDomain for y <= 1 and kInvalidArgument for n <= 0.
  static SaddleEquationSpec make(const Real& n, const Real& y, const PrecisionContext& ctx);
};

struct RootResult {
  Real t;
  Real residual;  // signed: f(t) - rhs
  int iterations = 0;
};

struct Bracket {
  Real lo;
  Real hi;
};

// Principal branch on x > 0. Throws kXOutOfDomain for x <= 0.
RootResult lambert_w(const Real& x, const PrecisionContext& ctx);

RootResult solve_w(const Real& n, const Real& y, const PrecisionContext& ctx);
RootResult solve_r(const Real& n, const Real& y, const PrecisionContext& ctx);

// [W(rhs / (1 + sqrt y)), W(rhs)] encloses r(n): on t > 0,
// t e^t <= t (e^t + sqrt y) <= t e^t (1 + sqrt y).
Bracket r_bracket(const SaddleEquationSpec& spec, const PrecisionContext& ctx);

struct RemarkRelations {
  Real w;
  Real r;
  Real w_minus_r;
  Real w2_minus_r2;
  Real w_over_r;
};

RemarkRelations residual_relations(const Real& n, const Real& y, const PrecisionContext& ctx);

}  // namespace lacunary
