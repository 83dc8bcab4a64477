#pragma once

// Evaluation of the lacunary polynomials
//
//   f_n(z) = sum_{k=0}^{n} C(n,k) z^{C(k,2)}
//
// at z = 1/y, exactly for rational y and in high precision / log space for
// real y > 1, plus the iterated forward differences in n.

#include <optional>
#include <vector>

#include "lacunary/numerics.hpp"

namespace lacunary {

// Largest n (or n + r for differences) accepted by the exact paths. The
// denominator of f_n(1/2) alone has C(n,2) bits.
inline constexpr unsigned long kExactModeCap = 3000;

enum class EvalMode { kExact, kFloat, kLog };

struct EvalRequest {
  unsigned long n = 0;
  ExactRational y;
  EvalMode mode = EvalMode::kLog;
};

struct TruncationReport {
  unsigned long terms_used = 0;
  std::optional<unsigned long> first_omitted_index;
  // Upper bound on the sum of every omitted term; zero when nothing was cut.
  Real omitted_tail_bound;
};

enum class SumPolicy {
  kAdaptive,  // stop past the peak term once the geometric tail bound is below eps * partial
  kFull,      // all n + 1 terms
};

struct FloatEval {
  Real value;
  TruncationReport truncation;
};

struct LogEval {
  LogValue value;
  TruncationReport truncation;
};

ExactRational eval_exact(unsigned long n, const ExactRational& y);

FloatEval eval_float(unsigned long n, const Real& y, const PrecisionContext& ctx,
                     SumPolicy policy = SumPolicy::kAdaptive);

LogEval eval_log(unsigned long n, const Real& y, const PrecisionContext& ctx,
                 SumPolicy policy = SumPolicy::kAdaptive);

// Delta^r f_n(1/y) = sum_k C(n,k) y^{-C(k+r,2)}.
ExactRational forward_difference(unsigned long n, unsigned long r, const ExactRational& y);

struct MonotonicityEntry {
  unsigned long n = 0;
  unsigned long r = 0;
  ExactRational value;
};

struct MonotonicityCertificate {
  ExactRational y;
  unsigned long max_n = 0;
  unsigned long max_r = 0;
  std::vector<MonotonicityEntry> entries;  // n-major, (max_n + 1) * (max_r + 1) rows
};

// Checks, for all n <= max_n and r <= max_r, that the closed-form difference
// is positive and that Delta^{r+1} f_n = Delta^r f_{n+1} - Delta^r f_n holds
// exactly. Throws kMonotonicityViolation naming the first bad (n, r).
MonotonicityCertificate certify_absolute_monotonicity(unsigned long max_n, unsigned long max_r,
                                                      const ExactRational& y);

}  // namespace lacunary
