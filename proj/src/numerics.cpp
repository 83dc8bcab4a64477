#include "lacunary/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace lacunary {

std::string_view error_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptySum: return "empty-sum";
    case ErrorKind::kExactCapExceeded: return "exact-cap-exceeded";
    case ErrorKind::kYOutOfDomain: return "y-out-of-domain";
    case ErrorKind::kXOutOfDomain: return "x-out-of-domain";
    case ErrorKind::kSolverDiverged: return "solver-diverged";
    case ErrorKind::kSaddleHypothesisViolated: return "saddle-hypothesis-violated";
    case ErrorKind::kNomeOutOfDomain: return "nome-out-of-domain";
    case ErrorKind::kQuadratureStalled: return "quadrature-stalled";
    case ErrorKind::kMonotonicityViolation: return "monotonicity-violation";
    case ErrorKind::kQuadCap: return "quad-cap";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_code(kind)) + ": " + detail), kind_(kind) {}

PrecisionContext::PrecisionContext(Bits bits, Bits guard_bits) : bits_(bits), guard_bits_(guard_bits) {
  if (bits < kMinBits) {
    throw Error(ErrorKind::kInvalidArgument, "precision must be at least 53 bits, got " + std::to_string(bits));
  }
  if (guard_bits < 8 || guard_bits >= bits) {
    throw Error(ErrorKind::kInvalidArgument, "guard bits must lie in [8, bits)");
  }
}

LogValue operator+(const LogValue& a, const LogValue& b) {
  if (a.is_zero) return b;
  if (b.is_zero) return a;
  const Real& hi = a.log_magnitude < b.log_magnitude ? b.log_magnitude : a.log_magnitude;
  const Real& lo = a.log_magnitude < b.log_magnitude ? a.log_magnitude : b.log_magnitude;
  return LogValue::from_log(hi + log1p(exp(lo - hi)));
}

LogValue operator*(const LogValue& a, const LogValue& b) {
  if (a.is_zero) return a;
  if (b.is_zero) return b;
  return LogValue::from_log(a.log_magnitude + b.log_magnitude);
}

BigInt binomial(unsigned long n, long k) {
  if (k < 0 || static_cast<unsigned long>(k) > n) {
    return 0;
  }
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, static_cast<unsigned long>(k));
  return out;
}

ExactRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) {
    throw Error(ErrorKind::kInvalidArgument, "zero denominator");
  }
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

ExactRational parse_rational(std::string_view text) {
  auto fail = [&] { return Error(ErrorKind::kInvalidArgument, "not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num;
    BigInt den;
    if (num.set_str(std::string(text.substr(0, slash)), 10) != 0 ||
        den.set_str(std::string(text.substr(slash + 1)), 10) != 0) {
      throw fail();
    }
    return make_rational(num, den);
  }

  // [sign] digits [. digits] [e|E [sign] digits]
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string mantissa;
  long frac_digits = 0;
  bool seen_point = false;
  for (; pos < text.size() && text[pos] != 'e' && text[pos] != 'E'; ++pos) {
    char c = text[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw fail();
    }
  }
  if (mantissa.empty()) throw fail();

  long exponent = 0;
  if (pos < text.size()) {
    std::string exp_text(text.substr(pos + 1));
    if (exp_text.empty()) throw fail();
    try {
      std::size_t used = 0;
      exponent = std::stol(exp_text, &used);
      if (used != exp_text.size()) throw fail();
    } catch (const std::logic_error&) {
      throw fail();
    }
  }

  BigInt num(mantissa, 10);
  if (negative) num = -num;
  long scale = exponent - frac_digits;
  BigInt power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  return scale < 0 ? make_rational(num, power) : make_rational(num * power, 1);
}

void LogSumAccumulator::add(const Real& log_term) {
  if (empty_) {
    max_ = log_term;
    scaled_ = Real(1, max_.precision());
    empty_ = false;
  } else if (log_term > max_) {
    scaled_ = scaled_ * exp(max_ - log_term) + 1;
    max_ = log_term;
  } else {
    scaled_ += exp(log_term - max_);
  }
}

Real LogSumAccumulator::result() const {
  if (empty_) {
    throw Error(ErrorKind::kEmptySum, "log-sum-exp of an empty sequence");
  }
  return max_ + log(scaled_);
}

Real log_sum_exp(std::span<const Real> terms, const PrecisionContext& ctx) {
  if (terms.empty()) {
    throw Error(ErrorKind::kEmptySum, "log-sum-exp of an empty sequence");
  }
  Real peak = *std::max_element(terms.begin(), terms.end(),
                                [](const Real& a, const Real& b) { return a < b; });
  peak = peak.with_precision(ctx.bits());
  std::vector<Real> shifted;
  shifted.reserve(terms.size());
  for (const Real& t : terms) {
    shifted.push_back(exp(t.with_precision(ctx.bits()) - peak));
  }
  return peak + log(compensated_sum(shifted, ctx));
}

Real compensated_sum(std::span<const Real> terms, const PrecisionContext& ctx) {
  Real sum = Real::zero(ctx.bits());
  Real carry = Real::zero(ctx.bits());
  for (const Real& raw : terms) {
    Real t = raw.with_precision(ctx.bits());
    Real next = sum + t;
    if (abs(sum) >= abs(t)) {
      carry += (sum - next) + t;
    } else {
      carry += (t - next) + sum;
    }
    sum = std::move(next);
  }
  return sum + carry;
}

}  // namespace lacunary
