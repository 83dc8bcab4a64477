#include "lacunary/solvers.hpp"

#include <string>
#include <utility>

namespace lacunary {

namespace {

struct Eval {
  Real value;
  Real slope;
};

// Newton on an increasing function, clipped to a bracket that is narrowed on
// every evaluation; steps that leave the bracket are replaced by bisection.
template <class Fn>
RootResult safeguarded_newton(Fn f, Bracket bracket, Real t, const Real& scale,
                              const PrecisionContext& ctx, const char* what) {
  const Bits prec = ctx.bits();
  const Real step_tol = ldexp(Real(1, prec), -(prec - 2));
  if (t < bracket.lo) t = bracket.lo;
  if (t > bracket.hi) t = bracket.hi;

  int iter = 0;
  for (;;) {
    if (++iter > kSolverMaxIter) {
      throw Error(ErrorKind::kSolverDiverged,
                  std::string(what) + ": no convergence in " + std::to_string(kSolverMaxIter) + " iterations");
    }
    Eval e = f(t);
    if (e.value.is_zero()) break;
    if (e.value.sign() < 0) {
      bracket.lo = t;
    } else {
      bracket.hi = t;
    }
    Real next = t - e.value / e.slope;
    if (next < bracket.lo || next > bracket.hi || !next.is_finite()) {
      next = ldexp(bracket.lo + bracket.hi, -1);
    }
    Real delta = abs(next - t);
    t = std::move(next);
    if (delta <= step_tol * abs(t) || bracket.hi - bracket.lo <= step_tol * abs(t)) break;
  }

  Real residual = f(t).value;
  if (abs(residual) > ctx.resid_tol() * scale) {
    throw Error(ErrorKind::kSolverDiverged, std::string(what) + ": residual above tolerance at convergence");
  }
  return {std::move(t), std::move(residual), iter};
}

}  // namespace

SaddleEquationSpec SaddleEquationSpec::make(const Real& n_in, const Real& y_in, const PrecisionContext& ctx) {
  if (!(y_in > 1)) {
    throw Error(ErrorKind::kYOutOfDomain, "y must exceed 1");
  }
  if (!(n_in > 0)) {
    throw Error(ErrorKind::kInvalidArgument, "n must be positive");
  }
  Real n = n_in.with_precision(ctx.bits());
  Real y = y_in.with_precision(ctx.bits());
  Real sqrt_y = sqrt(y);
  Real log_y = log(y);
  Real rhs = n * sqrt_y * log_y;
  return {std::move(n), std::move(y), std::move(sqrt_y), std::move(log_y), std::move(rhs)};
}

RootResult lambert_w(const Real& x_in, const PrecisionContext& ctx) {
  if (!(x_in > 0)) {
    throw Error(ErrorKind::kXOutOfDomain, "Lambert W needs x > 0");
  }
  const Bits prec = ctx.bits();
  const Real x = x_in.with_precision(prec);
  const Real e = exp(Real(1, prec));

  Bracket bracket;
  Real t0;
  if (x > e) {
    // ln x - ln ln x <= W(x) < ln x for x >= e
    Real log_x = log(x);
    bracket = {Real(1, prec), log_x};
    t0 = log_x - log(log_x);
  } else {
    // W(x) <= min(x, 1) on (0, e]
    bracket = {Real::zero(prec), min(x, Real(1, prec))};
    t0 = x;
  }

  auto f = [&](const Real& t) {
    Real et = exp(t);
    return Eval{t * et - x, et * (t + 1)};
  };
  return safeguarded_newton(f, std::move(bracket), std::move(t0), x, ctx, "lambert_w");
}

RootResult solve_w(const Real& n, const Real& y, const PrecisionContext& ctx) {
  return lambert_w(SaddleEquationSpec::make(n, y, ctx).rhs, ctx);
}

Bracket r_bracket(const SaddleEquationSpec& spec, const PrecisionContext& ctx) {
  Real lo = lambert_w(spec.rhs / (spec.sqrt_y + 1), ctx).t;
  Real hi = lambert_w(spec.rhs, ctx).t;
  return {std::move(lo), std::move(hi)};
}

RootResult solve_r(const Real& n, const Real& y, const PrecisionContext& ctx) {
  const SaddleEquationSpec spec = SaddleEquationSpec::make(n, y, ctx);
  Bracket bracket = r_bracket(spec, ctx);
  Real t0 = bracket.hi;  // w(n) bounds r(n) from above

  auto f = [&](const Real& t) {
    Real et = exp(t);
    return Eval{t * (et + spec.sqrt_y) - spec.rhs, et * (t + 1) + spec.sqrt_y};
  };
  return safeguarded_newton(f, std::move(bracket), std::move(t0), spec.rhs, ctx, "solve_r");
}

RemarkRelations residual_relations(const Real& n, const Real& y, const PrecisionContext& ctx) {
  Real w = solve_w(n, y, ctx).t;
  Real r = solve_r(n, y, ctx).t;
  Real diff = w - r;
  Real diff_sq = diff * (w + r);
  Real ratio = w / r;
  return {std::move(w), std::move(r), std::move(diff), std::move(diff_sq), std::move(ratio)};
}

}  // namespace lacunary
