#include "lacunary/real.hpp"

#include <stdexcept>

namespace lacunary {

Real::Real(std::string_view text, Bits prec) {
  mpfr_init2(v_, prec);
  std::string buffer(text);
  char* end = nullptr;
  if (!buffer.empty()) {
    mpfr_strtofr(v_, buffer.c_str(), &end, 10, MPFR_RNDN);
  }
  if (buffer.empty() || end != buffer.c_str() + buffer.size()) {
    mpfr_clear(v_);
    throw std::invalid_argument("not a real number: '" + buffer + "'");
  }
}

namespace {

template <class Fn>
Real unary(const Real& x, Fn fn) {
  Real out = Real::zero(x.precision());
  fn(out.get(), x.get(), MPFR_RNDN);
  return out;
}

}  // namespace

Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real expm1(const Real& x) { return unary(x, mpfr_expm1); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real square(const Real& x) { return unary(x, mpfr_sqr); }

Real atan2(const Real& y, const Real& x) {
  Real out = Real::zero(std::max(x.precision(), y.precision()));
  mpfr_atan2(out.get(), y.get(), x.get(), MPFR_RNDN);
  return out;
}

Real pow(const Real& base, unsigned long exponent) {
  Real out = Real::zero(base.precision());
  mpfr_pow_ui(out.get(), base.get(), exponent, MPFR_RNDN);
  return out;
}

Real pow(const Real& base, const Real& exponent) {
  Real out = Real::zero(std::max(base.precision(), exponent.precision()));
  mpfr_pow(out.get(), base.get(), exponent.get(), MPFR_RNDN);
  return out;
}

Real ldexp(const Real& x, long e) {
  Real out = Real::zero(x.precision());
  mpfr_mul_2si(out.get(), x.get(), e, MPFR_RNDN);
  return out;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real pi(Bits prec) {
  Real out = Real::zero(prec);
  mpfr_const_pi(out.get(), MPFR_RNDN);
  return out;
}

Real lgamma_int(unsigned long n, Bits prec) {
  Real arg(n, prec);
  arg += 1;
  Real out = Real::zero(prec);
  mpfr_lngamma(out.get(), arg.get(), MPFR_RNDN);
  return out;
}

Real to_real(const mpq_class& q, Bits prec) { return Real(q, prec); }

DecimalDigits to_decimal_digits(const Real& x, std::size_t significant) {
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, significant, x.get(), MPFR_RNDN);
  if (raw == nullptr) {
    throw std::runtime_error("mpfr_get_str failed");
  }
  DecimalDigits out{raw, static_cast<long>(exponent)};
  mpfr_free_str(raw);
  return out;
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Real abs(const Complex& z) {
  Real out = Real::zero(std::max(z.re.precision(), z.im.precision()));
  mpfr_hypot(out.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return out;
}

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex polar(const Real& modulus, const Real& angle) {
  Real s = Real::zero(angle.precision());
  Real c = Real::zero(angle.precision());
  mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
  return {modulus * c, modulus * s};
}

Complex exp(const Complex& z) { return polar(exp(z.re), z.im); }

}  // namespace lacunary
