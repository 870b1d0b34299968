// Truncated Laurent series in r about the origin.  The radial coefficient
// matrices are built once as series (for the Frobenius start) and once
// pointwise from the same templated formulas, so both representations agree
// by construction.
#ifndef TBWE_SERIES_HPP
#define TBWE_SERIES_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "tbwe/real.hpp"

namespace tbwe {

template <class Real>
class Series {
 public:
  // coefficient of r^k is c[k - lo]
  int lo = 0;
  std::vector<Real> c;
  // truncation order (inclusive highest power kept); thread-local so
  // concurrent solves can expand to different depths independently
  static thread_local int order;

  Series() : c(1, Real(0)) {}
  Series(Real x) : c(1, x) {}

  static Series var() {  // the monomial r
    Series s;
    s.lo = 1;
    s.c = {Real(1)};
    return s;
  }
  static Series inv_var() {  // 1/r
    Series s;
    s.lo = -1;
    s.c = {Real(1)};
    return s;
  }
  // 1/(a + b r): geometric expansion, radius of convergence |a/b|
  static Series inv_linear(Real a, Real b) {
    if (a == Real(0)) {
      if (b == Real(0)) throw std::domain_error("series: 1/0");
      Series s = inv_var();
      s.c[0] = Real(1) / b;
      return s;
    }
    Series s;
    s.lo = 0;
    s.c.assign(order + 1, Real(0));
    Real t = Real(1) / a;
    for (int k = 0; k <= order; ++k) {
      s.c[k] = t;
      t *= -b / a;
    }
    return s;
  }

  Real at(int k) const {
    if (k < lo || k >= lo + static_cast<int>(c.size())) return Real(0);
    return c[k - lo];
  }

  Real eval(Real r) const {
    using std::pow;
    Real acc = Real(0);
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * r + c[k];
    return acc * pow(r, Real(lo));
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series s;
    s.lo = std::min(a.lo, b.lo);
    const int hi = std::min(order, std::max(a.lo + static_cast<int>(a.c.size()),
                                            b.lo + static_cast<int>(b.c.size())) - 1);
    s.c.assign(std::max(1, hi - s.lo + 1), Real(0));
    for (int k = s.lo; k <= hi; ++k) s.c[k - s.lo] = a.at(k) + b.at(k);
    return s;
  }
  friend Series operator-(const Series& a, const Series& b) { return a + (Real(-1) * b); }
  friend Series operator*(Real x, const Series& a) {
    Series s = a;
    for (auto& v : s.c) v *= x;
    return s;
  }
  friend Series operator*(const Series& a, Real x) { return x * a; }
  friend Series operator*(const Series& a, const Series& b) {
    Series s;
    s.lo = a.lo + b.lo;
    const int hi = std::min(order, s.lo + static_cast<int>(a.c.size() + b.c.size()) - 2);
    s.c.assign(std::max(1, hi - s.lo + 1), Real(0));
    for (int i = 0; i < static_cast<int>(a.c.size()); ++i)
      for (int j = 0; j < static_cast<int>(b.c.size()); ++j) {
        const int k = a.lo + i + b.lo + j;
        if (k <= hi) s.c[k - s.lo] += a.c[i] * b.c[j];
      }
    return s;
  }
  Series& operator+=(const Series& b) { *this = *this + b; return *this; }
  Series& operator-=(const Series& b) { *this = *this - b; return *this; }
};

template <class Real>
thread_local int Series<Real>::order = 40;

// Scoped truncation-order override.
template <class Real>
struct SeriesOrderGuard {
  int saved;
  explicit SeriesOrderGuard(int n) : saved(Series<Real>::order) { Series<Real>::order = n; }
  ~SeriesOrderGuard() { Series<Real>::order = saved; }
};

}  // namespace tbwe

#endif
