// Scalar-type support for the solver core.  All numerical kernels are
// templated on the working precision; `quad` (binary128) is used where an
// eigenvalue difference has to survive a ~1e-19 relative cancellation.
#ifndef TBWE_REAL_HPP
#define TBWE_REAL_HPP

#include <boost/multiprecision/float128.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace tbwe {

using quad = boost::multiprecision::float128;

template <class Real>
constexpr Real real_eps() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real real_pi() {
  return 2 * acos(Real(0));
}

inline double to_double(double x) { return x; }
inline double to_double(long double x) { return static_cast<double>(x); }
inline double to_double(const quad& x) { return x.convert_to<double>(); }

// log1p/expm1/cbrt wrappers: the installed boost.multiprecision float128
// versions of these do not compile, so call quadmath directly.
inline double r_log1p(double x) { return std::log1p(x); }
inline long double r_log1p(long double x) { return std::log1p(x); }
inline quad r_log1p(const quad& x) { return quad(::log1pq(x.backend().value())); }
inline double r_expm1(double x) { return std::expm1(x); }
inline long double r_expm1(long double x) { return std::expm1(x); }
inline quad r_expm1(const quad& x) { return quad(::expm1q(x.backend().value())); }
inline double r_cbrt(double x) { return std::cbrt(x); }
inline long double r_cbrt(long double x) { return std::cbrt(x); }
inline quad r_cbrt(const quad& x) { return quad(::cbrtq(x.backend().value())); }

template <class Real>
std::string real_name();
template <> inline std::string real_name<double>() { return "double"; }
template <> inline std::string real_name<long double>() { return "longdouble"; }
template <> inline std::string real_name<quad>() { return "quad"; }

// Minimal complex value type that works for every Real above (std::complex
// is only specified for the builtin floating types).
template <class Real>
struct cplx {
  Real re{}, im{};
  cplx() = default;
  cplx(Real r) : re(r) {}
  cplx(Real r, Real i) : re(r), im(i) {}
  friend cplx operator+(const cplx& a, const cplx& b) { return {a.re + b.re, a.im + b.im}; }
  friend cplx operator-(const cplx& a, const cplx& b) { return {a.re - b.re, a.im - b.im}; }
  friend cplx operator-(const cplx& a) { return {-a.re, -a.im}; }
  friend cplx operator*(const cplx& a, const cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend cplx operator/(const cplx& a, const cplx& b) {
    const Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  cplx& operator+=(const cplx& b) { *this = *this + b; return *this; }
  cplx& operator-=(const cplx& b) { *this = *this - b; return *this; }
  cplx& operator*=(const cplx& b) { *this = *this * b; return *this; }
};

template <class Real>
Real abs2(const cplx<Real>& z) { return z.re * z.re + z.im * z.im; }

template <class Real>
Real cabs(const cplx<Real>& z) {
  using std::sqrt;
  return sqrt(abs2(z));
}

}  // namespace tbwe

#endif
