#pragma once

#include <gmpxx.h>

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lacunary/real.hpp"

namespace lacunary {

using BigInt = mpz_class;
using ExactRational = mpq_class;  // always kept canonical: gcd(num, den) = 1, den > 0

enum class ErrorKind {
  kEmptySum,
  kExactCapExceeded,
  kYOutOfDomain,
  kXOutOfDomain,
  kSolverDiverged,
  kSaddleHypothesisViolated,
  kNomeOutOfDomain,
  kQuadratureStalled,
  kMonotonicityViolation,
  kQuadCap,
  kInvalidArgument,
};

// Stable machine-readable code, e.g. "exact-cap-exceeded".
std::string_view error_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const { return kind_; }
  std::string_view code() const { return error_code(kind_); }

 private:
  ErrorKind kind_;
};

// Working precision and the tolerance policy derived from it.
//   eps       = 2^-(bits - guard_bits)   target relative accuracy
//   resid_tol = 4 * eps                  root-finder residual bound
class PrecisionContext {
 public:
  static constexpr Bits kMinBits = 53;
  static constexpr Bits kGuardBits = 16;

  PrecisionContext() : PrecisionContext(kDefaultBits) {}
  explicit PrecisionContext(Bits bits, Bits guard_bits = kGuardBits);

  Bits bits() const { return bits_; }
  Bits guard_bits() const { return guard_bits_; }

  Real eps() const { return ldexp(Real(1, bits_), -(bits_ - guard_bits_)); }
  Real resid_tol() const { return eps() * 4; }

  Real real(long value) const { return Real(value, bits_); }
  Real real(std::string_view text) const { return Real(text, bits_); }
  Real real(const ExactRational& q) const { return Real(q, bits_); }

 private:
  Bits bits_;
  Bits guard_bits_;
};

// A positive quantity carried by its natural log. is_zero marks the additive
// identity, whose log would be -inf.
struct LogValue {
  Real log_magnitude;
  bool is_zero = false;

  static LogValue zero(Bits prec) { return {Real::zero(prec), true}; }
  static LogValue from_log(Real log_magnitude) { return {std::move(log_magnitude), false}; }

  // log(e^a + e^b), exact to working precision.
  friend LogValue operator+(const LogValue& a, const LogValue& b);
  friend LogValue operator*(const LogValue& a, const LogValue& b);
};

// Exact C(n, k); zero when k < 0 or k > n.
BigInt binomial(unsigned long n, long k);

// Canonical num/den. Throws kInvalidArgument on a zero denominator.
ExactRational make_rational(const BigInt& num, const BigInt& den);

// Parses "7/2", "3", "1.5", "2.5e-3" into an exact rational.
ExactRational parse_rational(std::string_view text);

// log(sum exp(t_i)). Throws kEmptySum on an empty input.
Real log_sum_exp(std::span<const Real> terms, const PrecisionContext& ctx);

// Neumaier-compensated sum at ctx precision.
Real compensated_sum(std::span<const Real> terms, const PrecisionContext& ctx);

// Streaming log-sum-exp accumulator used by the long unimodal sums.
class LogSumAccumulator {
 public:
  explicit LogSumAccumulator(Bits prec) : max_(Real::zero(prec)), scaled_(Real::zero(prec)) {}

  void add(const Real& log_term);
  bool empty() const { return empty_; }
  // Throws kEmptySum if nothing was added.
  Real result() const;

 private:
  Real max_;
  Real scaled_;  // sum of exp(t_i - max_)
  bool empty_ = true;
};

}  // namespace lacunary
