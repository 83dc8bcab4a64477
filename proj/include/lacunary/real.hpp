#pragma once

// Value type over an MPFR variable. Every value carries its own precision;
// binary operations produce a result at the larger of the operand precisions,
// and operations with plain scalars keep the precision of the Real operand.
// All rounding is to nearest, ties to even.

#include <mpfr.h>

#include <concepts>
#include <gmpxx.h>
#include <string>
#include <string_view>
#include <utility>

namespace lacunary {

using Bits = mpfr_prec_t;

inline constexpr Bits kDefaultBits = 128;

class Real {
 public:
  Real() : Real(0L, kDefaultBits) {}

  static Real zero(Bits prec) { return Real(0L, prec); }

  template <std::signed_integral I>
  Real(I value, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, static_cast<long>(value), MPFR_RNDN);
  }

  template <std::unsigned_integral U>
  Real(U value, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_ui(v_, static_cast<unsigned long>(value), MPFR_RNDN);
  }

  template <std::floating_point F>
  Real(F value, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, static_cast<double>(value), MPFR_RNDN);
  }

  Real(const mpz_class& value, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
  }

  Real(const mpq_class& value, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
  }

  // Decimal or scientific literal, e.g. "1.5", "-2e-30". Throws on garbage.
  Real(std::string_view text, Bits prec);

  Real(const Real& other) {
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }

  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, other.precision());
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }

  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }

  ~Real() { mpfr_clear(v_); }

  Bits precision() const { return mpfr_get_prec(v_); }

  // Same value rounded to `prec` bits.
  Real with_precision(Bits prec) const {
    Real out = zero(prec);
    mpfr_set(out.v_, v_, MPFR_RNDN);
    return out;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long_floor() const { return mpfr_get_si(v_, MPFR_RNDD); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // Binary exponent e with |x| in [2^(e-1), 2^e); 0 for zero.
  long exponent2() const { return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(v_)); }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  Real operator-() const {
    Real out = zero(precision());
    mpfr_neg(out.v_, v_, MPFR_RNDN);
    return out;
  }

  Real& operator+=(const Real& rhs) { return assign_binary(rhs, mpfr_add); }
  Real& operator-=(const Real& rhs) { return assign_binary(rhs, mpfr_sub); }
  Real& operator*=(const Real& rhs) { return assign_binary(rhs, mpfr_mul); }
  Real& operator/=(const Real& rhs) { return assign_binary(rhs, mpfr_div); }

  Real& operator+=(long rhs) {
    mpfr_add_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(long rhs) {
    mpfr_sub_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(long rhs) {
    mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(long rhs) {
    mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
  }

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }

  friend Real operator+(Real lhs, long rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, long rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, long rhs) { return lhs /= rhs; }
  friend Real operator+(long lhs, Real rhs) { return rhs += lhs; }
  friend Real operator*(long lhs, Real rhs) { return rhs *= lhs; }
  friend Real operator-(long lhs, const Real& rhs) {
    Real out = zero(rhs.precision());
    mpfr_si_sub(out.v_, lhs, rhs.v_, MPFR_RNDN);
    return out;
  }
  friend Real operator/(long lhs, const Real& rhs) {
    Real out = zero(rhs.precision());
    mpfr_si_div(out.v_, lhs, rhs.v_, MPFR_RNDN);
    return out;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

  friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0 && !mpfr_nan_p(a.v_); }

 private:
  using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  Real& assign_binary(const Real& rhs, BinaryFn fn) {
    if (rhs.precision() > precision()) {
      mpfr_prec_round(v_, rhs.precision(), MPFR_RNDN);
    }
    fn(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

// Mixing a Real with a plain double would go through the `long` overloads and
// truncate; construct a Real at the intended precision instead.
template <std::floating_point F> Real operator+(const Real&, F) = delete;
template <std::floating_point F> Real operator-(const Real&, F) = delete;
template <std::floating_point F> Real operator*(const Real&, F) = delete;
template <std::floating_point F> Real operator/(const Real&, F) = delete;
template <std::floating_point F> Real operator+(F, const Real&) = delete;
template <std::floating_point F> Real operator-(F, const Real&) = delete;
template <std::floating_point F> Real operator*(F, const Real&) = delete;
template <std::floating_point F> Real operator/(F, const Real&) = delete;
template <std::floating_point F> bool operator<(const Real&, F) = delete;
template <std::floating_point F> bool operator>(const Real&, F) = delete;
template <std::floating_point F> bool operator<=(const Real&, F) = delete;
template <std::floating_point F> bool operator>=(const Real&, F) = delete;
template <std::floating_point F> bool operator==(const Real&, F) = delete;

Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sqrt(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real atan2(const Real& y, const Real& x);
Real abs(const Real& x);
Real square(const Real& x);
Real pow(const Real& base, unsigned long exponent);
Real pow(const Real& base, const Real& exponent);
Real ldexp(const Real& x, long e);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
Real pi(Bits prec);
Real lgamma_int(unsigned long n, Bits prec);  // log(n!) = lgamma(n+1)

// Exact ratio of two GMP integers p/q -> Real.
Real to_real(const mpq_class& q, Bits prec);

// Plain decimal-digit significand and exponent, mpfr_get_str semantics:
// value = 0.DIGITS * 10^exponent. Digits may carry a leading '-'.
struct DecimalDigits {
  std::string digits;
  long exponent = 0;
};
DecimalDigits to_decimal_digits(const Real& x, std::size_t significant);

// Complex number over Real. Only what the quadrature and saddle code needs.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real re_part, Real im_part) : re(std::move(re_part)), im(std::move(im_part)) {}
  explicit Complex(const Real& re_part) : re(re_part), im(Real::zero(re_part.precision())) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Complex operator*(const Real& s, const Complex& a) { return {a.re * s, a.im * s}; }
};

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex polar(const Real& modulus, const Real& angle);
Complex exp(const Complex& z);

}  // namespace lacunary
