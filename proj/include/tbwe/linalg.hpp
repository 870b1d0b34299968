// Small dense linear algebra for the radial systems (dimension <= 4).
// Hand-rolled so the same code runs at double, long double and quad
// precision; dimensions are tiny and fixed, nothing here is performance
// critical beyond the matrix-vector product used by the integrator.
#ifndef TBWE_LINALG_HPP
#define TBWE_LINALG_HPP

#include <algorithm>
#include <array>
#include <cassert>
#include <stdexcept>
#include <vector>

#include "tbwe/real.hpp"

namespace tbwe {

// systems have dimension <= 4; integration states bundle two columns (<= 8)
constexpr int kMaxDim = 8;

template <class T>
struct SmallVec {
  int n = 0;
  std::array<T, kMaxDim> v{};
  SmallVec() = default;
  explicit SmallVec(int n_) : n(n_) {}
  T& operator[](int i) { return v[i]; }
  const T& operator[](int i) const { return v[i]; }
};

template <class T>
struct SmallMat {
  int n = 0;
  std::array<T, kMaxDim * kMaxDim> a{};
  SmallMat() = default;
  explicit SmallMat(int n_) : n(n_) {}
  T& operator()(int i, int j) { return a[i * kMaxDim + j]; }
  const T& operator()(int i, int j) const { return a[i * kMaxDim + j]; }

  SmallVec<T> apply(const SmallVec<T>& x) const {
    SmallVec<T> y(n);
    for (int i = 0; i < n; ++i) {
      T s{};
      for (int j = 0; j < n; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  friend SmallMat operator*(const SmallMat& A, const SmallMat& B) {
    SmallMat C(A.n);
    for (int i = 0; i < A.n; ++i)
      for (int j = 0; j < A.n; ++j) {
        T s{};
        for (int k = 0; k < A.n; ++k) s += A(i, k) * B(k, j);
        C(i, j) = s;
      }
    return C;
  }
};

// Determinant by Gaussian elimination with partial pivoting. Works for any
// field type with abs-comparable magnitude via the supplied `mag` functor.
template <class T, class Mag>
T det_pivot(SmallMat<T> m, Mag mag) {
  T det = T(1);
  for (int c = 0; c < m.n; ++c) {
    int p = c;
    for (int r = c + 1; r < m.n; ++r)
      if (mag(m(r, c)) > mag(m(p, c))) p = r;
    if (p != c) {
      for (int j = 0; j < m.n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    if (!(mag(m(c, c)) > 0)) return T(0);
    det *= m(c, c);
    for (int r = c + 1; r < m.n; ++r) {
      const T f = m(r, c) / m(c, c);
      for (int j = c; j < m.n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

template <class Real>
Real det(const SmallMat<Real>& m) {
  using std::abs;
  return det_pivot(m, [](const Real& x) { using std::abs; return abs(x); });
}

// Solve A x = b in place (partial pivoting); throws on numerically singular A.
template <class Real>
SmallVec<Real> solve(SmallMat<Real> A, SmallVec<Real> b) {
  using std::abs;
  const int n = A.n;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (abs(A(r, c)) > abs(A(p, c))) p = r;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(A(p, j), A(c, j));
      std::swap(b[p], b[c]);
    }
    if (abs(A(c, c)) == Real(0)) throw std::runtime_error("linalg: singular system");
    for (int r = c + 1; r < n; ++r) {
      const Real f = A(r, c) / A(c, c);
      for (int j = c; j < n; ++j) A(r, j) -= f * A(c, j);
      b[r] -= f * b[c];
    }
  }
  SmallVec<Real> x(n);
  for (int i = n - 1; i >= 0; --i) {
    Real s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
    x[i] = s / A(i, i);
  }
  return x;
}

// Characteristic polynomial p(x) = det(xI - A) via Faddeev-LeVerrier.
// Returns coefficients c[0..n] with c[n] = 1, p(x) = sum c[k] x^k.
template <class Real>
std::vector<Real> char_poly(const SmallMat<Real>& A) {
  const int n = A.n;
  std::vector<Real> c(n + 1, Real(0));
  c[n] = Real(1);
  SmallMat<Real> M(n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    SmallMat<Real> AM = A * M;
    for (int i = 0; i < n; ++i) AM(i, i) += c[n - k + 1];
    M = AM;
    SmallMat<Real> P = A * M;
    Real tr{};
    for (int i = 0; i < n; ++i) tr += P(i, i);
    c[n - k] = -tr / Real(k);
  }
  return c;
}

// All roots of a monic polynomial by the Durand-Kerner iteration; robust for
// the degree <= 4 polynomials used here, at any precision.
template <class Real>
std::vector<cplx<Real>> poly_roots(const std::vector<Real>& coeff) {
  using std::abs;
  const int n = static_cast<int>(coeff.size()) - 1;
  std::vector<cplx<Real>> z(n);
  // scatter the initial guesses on a circle of the root-magnitude bound
  Real radius = Real(0);
  for (int k = 0; k < n; ++k) radius = std::max(radius, Real(abs(coeff[k])));
  radius = Real(1) + radius;
  for (int i = 0; i < n; ++i) {
    const Real ang = Real(2) * real_pi<Real>() * Real(i) / Real(n) + Real(0.3);
    using std::cos;
    using std::sin;
    z[i] = cplx<Real>(radius * cos(ang), radius * sin(ang));
  }
  auto eval = [&](const cplx<Real>& x) {
    cplx<Real> p(coeff[n]);
    for (int k = n - 1; k >= 0; --k) p = p * x + cplx<Real>(coeff[k]);
    return p;
  };
  for (int it = 0; it < 200; ++it) {
    Real shift = Real(0);
    for (int i = 0; i < n; ++i) {
      cplx<Real> d(Real(1));
      for (int j = 0; j < n; ++j)
        if (j != i) d = d * (z[i] - z[j]);
      const cplx<Real> corr = eval(z[i]) / d;
      z[i] = z[i] - corr;
      shift = std::max(shift, cabs(corr));
    }
    if (shift < real_eps<Real>() * radius * 16) break;
  }
  return z;
}

template <class Real>
struct EigenPair {
  cplx<Real> value;
  SmallVec<cplx<Real>> vec;
};

// Null vector of a complex matrix by full-pivot elimination: the column left
// without a pivot carries the kernel direction.
template <class Real>
SmallVec<cplx<Real>> null_vector(SmallMat<cplx<Real>> m) {
  const int n = m.n;
  std::vector<int> col(n);
  for (int i = 0; i < n; ++i) col[i] = i;
  int rank = 0;
  for (int step = 0; step < n - 1; ++step) {
    int pr = step, pc = step;
    Real best = Real(0);
    for (int r = step; r < n; ++r)
      for (int c = step; c < n; ++c)
        if (abs2(m(r, c)) > best) { best = abs2(m(r, c)); pr = r; pc = c; }
    using std::sqrt;
    if (!(sqrt(best) > Real(0))) break;
    for (int j = 0; j < n; ++j) std::swap(m(pr, j), m(step, j));
    for (int r = 0; r < n; ++r) std::swap(m(r, pc), m(r, step));
    std::swap(col[pc], col[step]);
    for (int r = step + 1; r < n; ++r) {
      const cplx<Real> f = m(r, step) / m(step, step);
      for (int j = step; j < n; ++j) m(r, j) -= f * m(step, j);
    }
    ++rank;
  }
  // back substitute with x[last pivot column] = 1
  SmallVec<cplx<Real>> xp(n);
  xp[n - 1] = cplx<Real>(Real(1));
  for (int i = rank - 1; i >= 0; --i) {
    cplx<Real> s{};
    for (int j = i + 1; j < n; ++j) s += m(i, j) * xp[j];
    xp[i] = (cplx<Real>(Real(0)) - s) / m(i, i);
  }
  SmallVec<cplx<Real>> x(n);
  for (int i = 0; i < n; ++i) x[col[i]] = xp[i];
  // normalize
  Real nrm = Real(0);
  for (int i = 0; i < n; ++i) nrm += abs2(x[i]);
  using std::sqrt;
  nrm = sqrt(nrm);
  for (int i = 0; i < n; ++i) x[i] = x[i] / cplx<Real>(nrm);
  return x;
}

// Eigen decomposition of a small real matrix: characteristic-polynomial roots
// (Durand-Kerner) plus kernel solves.  Adequate and precision-generic for the
// 2x2/4x4 coefficient matrices this project needs.
template <class Real>
std::vector<EigenPair<Real>> eigen_small(const SmallMat<Real>& A) {
  const auto roots = poly_roots(char_poly(A));
  std::vector<EigenPair<Real>> out;
  for (const auto& r : roots) {
    SmallMat<cplx<Real>> m(A.n);
    for (int i = 0; i < A.n; ++i)
      for (int j = 0; j < A.n; ++j)
        m(i, j) = cplx<Real>(A(i, j)) - (i == j ? r : cplx<Real>(Real(0)));
    EigenPair<Real> p;
    p.value = r;
    p.vec = null_vector(m);
    out.push_back(p);
  }
  return out;
}

}  // namespace tbwe

#endif
