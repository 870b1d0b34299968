// Double-shooting eigenvalue solver: a Frobenius series start at the origin,
// a decaying-subspace start at large r, adaptive integration of both column
// bundles to a matching radius, and a normalized matching determinant whose
// sign changes in lambda locate the spectrum.
#ifndef TBWE_SHOOTING_HPP
#define TBWE_SHOOTING_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tbwe/radial.hpp"

namespace tbwe {

enum class Integrator { RK45, GBS };

template <class Real>
struct SolveSettings {
  Real rtol = Real(1e-12);
  Real atol = Real(1e-30);
  Real lambda_rtol = Real(1e-12);
  int scan_points = 400;
  int frobenius_order = 40;
  bool pade = false;
  Real r0 = Real(0);    // 0 = automatic
  Real rc = Real(0);
  Real rmax = Real(0);
  Integrator integ = Integrator::RK45;
  long max_steps = 8'000'000;
  int threads = 0;      // 0 = library default
};

template <class Real>
SolveSettings<Real> default_settings() {
  SolveSettings<Real> s;
  if constexpr (!std::is_same_v<Real, double>) {
    // tight-tolerance path: extrapolation integrator, deeper series
    s.rtol = real_eps<Real>() * Real(1e6);
    s.atol = s.rtol * Real(1e-18);
    s.lambda_rtol = real_eps<Real>() * Real(1e4);
    s.integ = Integrator::GBS;
    s.frobenius_order = 64;
  }
  return s;
}

//==========================================================================
// adaptive integrators over the matrix-bundle state

template <class Real>
struct Samples {
  std::vector<Real> r;
  std::vector<SmallVec<Real>> y;  // flattened column bundle at each node
  std::vector<SmallVec<Real>> dy; // derivative at each node (for interpolation)
};

namespace detail {

template <class Real, class F>
void rk45_step(F&& f, Real r, const SmallVec<Real>& y, Real h, SmallVec<Real>& ynew,
               SmallVec<Real>& err, const SmallVec<Real>& k1, SmallVec<Real>& k7) {
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double d1 = 71.0 / 57600, d3 = -71.0 / 16695, d4 = 71.0 / 1920,
                      d5 = -17253.0 / 339200, d6 = 22.0 / 525, d7 = -1.0 / 40;
  const int n = y.n;
  SmallVec<Real> t(n), k2(n), k3(n), k4(n), k5(n), k6(n);
  auto stage = [&](SmallVec<Real>& k, Real c, auto&&... pairs) {
    for (int i = 0; i < n; ++i) {
      Real acc = y[i];
      ((acc += h * Real(pairs.first) * (*pairs.second)[i]), ...);
      t[i] = acc;
    }
    f(r + c * h, t, k);
  };
  stage(k2, Real(0.2), std::pair{a21, &k1});
  stage(k3, Real(0.3), std::pair{a31, &k1}, std::pair{a32, &k2});
  stage(k4, Real(0.8), std::pair{a41, &k1}, std::pair{a42, &k2}, std::pair{a43, &k3});
  stage(k5, Real(8.0 / 9), std::pair{a51, &k1}, std::pair{a52, &k2}, std::pair{a53, &k3},
        std::pair{a54, &k4});
  stage(k6, Real(1), std::pair{a61, &k1}, std::pair{a62, &k2}, std::pair{a63, &k3},
        std::pair{a64, &k4}, std::pair{a65, &k5});
  ynew = SmallVec<Real>(n);
  for (int i = 0; i < n; ++i)
    ynew[i] = y[i] + h * (Real(b1) * k1[i] + Real(b3) * k3[i] + Real(b4) * k4[i] +
                          Real(b5) * k5[i] + Real(b6) * k6[i]);
  k7 = SmallVec<Real>(n);
  f(r + h, ynew, k7);
  err = SmallVec<Real>(n);
  for (int i = 0; i < n; ++i)
    err[i] = h * (Real(d1) * k1[i] + Real(d3) * k3[i] + Real(d4) * k4[i] + Real(d5) * k5[i] +
                  Real(d6) * k6[i] + Real(d7) * k7[i]);
}

// modified midpoint with n substeps
template <class Real, class F>
void midpoint(F&& f, Real r, const SmallVec<Real>& y, Real H, int nsub, SmallVec<Real>& out,
              const SmallVec<Real>& f0) {
  const int n = y.n;
  const Real h = H / Real(nsub);
  SmallVec<Real> z0 = y, z1(n), tmp(n);
  for (int i = 0; i < n; ++i) z1[i] = y[i] + h * f0[i];
  for (int m = 1; m < nsub; ++m) {
    f(r + Real(m) * h, z1, tmp);
    for (int i = 0; i < n; ++i) {
      const Real zn = z0[i] + 2 * h * tmp[i];
      z0[i] = z1[i];
      z1[i] = zn;
    }
  }
  f(r + H, z1, tmp);
  out = SmallVec<Real>(n);
  for (int i = 0; i < n; ++i) out[i] = (z0[i] + z1[i] + h * tmp[i]) / 2;
}

}  // namespace detail

// Integrate dy/dr = f(r, y) from ra to rb (either direction).
template <class Real, class F>
SmallVec<Real> integrate(F&& f, Real ra, Real rb, SmallVec<Real> y,
                         const SolveSettings<Real>& st, Samples<Real>* rec = nullptr) {
  using std::abs;
  using std::max;
  using std::min;
  using std::pow;
  using std::sqrt;
  const int n = y.n;
  const Real dir = (rb > ra) ? Real(1) : Real(-1);
  Real r = ra;
  SmallVec<Real> k1(n);
  f(r, y, k1);
  if (rec) {
    rec->r.push_back(r);
    rec->y.push_back(y);
    rec->dy.push_back(k1);
  }
  // initial step from the local derivative scale
  Real ynorm = Real(0), fnorm = Real(0);
  for (int i = 0; i < n; ++i) {
    ynorm = max(ynorm, abs(y[i]));
    fnorm = max(fnorm, abs(k1[i]));
  }
  Real h = dir * min(abs(rb - ra), (fnorm > 0) ? Real(0.01) * (ynorm + st.atol) / fnorm
                                               : abs(rb - ra) / 100);
  if (h == Real(0)) h = dir * abs(rb - ra) / 100;

  long steps = 0;
  const bool gbs = (st.integ == Integrator::GBS);
  // Bulirsch-Stoer bookkeeping
  static constexpr int KMAX = 9;
  const int nseq[KMAX] = {2, 4, 6, 8, 10, 12, 14, 16, 18};

  while (dir * (rb - r) > 0) {
    if (++steps > st.max_steps) throw solver_error("integrate: step limit exceeded");
    if (dir * (r + h - rb) > 0) h = rb - r;
    SmallVec<Real> ynew(n), err(n), k7(n);
    Real errnorm = Real(0);
    bool accepted = false;
    int kconv = 4;
    if (!gbs) {
      detail::rk45_step(f, r, y, h, ynew, err, k1, k7);
      errnorm = Real(0);
      for (int i = 0; i < n; ++i) {
        const Real w = st.atol + st.rtol * max(abs(y[i]), abs(ynew[i]));
        const Real e = err[i] / w;
        errnorm += e * e;
      }
      errnorm = sqrt(errnorm / Real(n));
      accepted = (errnorm <= Real(1));
    } else {
      // polynomial extrapolation of the modified midpoint in h^2
      SmallVec<Real> T[KMAX];
      Real hq[KMAX];
      bool done = false;
      for (int k = 0; k < KMAX && !done; ++k) {
        SmallVec<Real> tk(n);
        detail::midpoint(f, r, y, h, nseq[k], tk, k1);
        const Real hk = h / Real(nseq[k]);
        hq[k] = hk * hk;
        T[k] = tk;
        for (int m = k - 1; m >= 0; --m) {
          const Real fac = hq[m] / hq[k] - Real(1);
          SmallVec<Real> up(n);
          for (int i = 0; i < n; ++i) up[i] = T[m + 1][i] + (T[m + 1][i] - T[m][i]) / fac;
          T[m] = up;
        }
        if (k >= 1) {
          errnorm = Real(0);
          for (int i = 0; i < n; ++i) {
            const Real w = st.atol + st.rtol * max(abs(y[i]), abs(T[0][i]));
            const Real e = (T[0][i] - T[1][i]) / w;
            errnorm += e * e;
          }
          errnorm = sqrt(errnorm / Real(n));
          if (errnorm <= Real(1)) {
            ynew = T[0];
            kconv = k;
            accepted = true;
            done = true;
          }
        }
      }
      if (!done) {
        ynew = T[0];
        kconv = KMAX - 1;
      }
    }

    if (accepted) {
      r = r + h;
      y = ynew;
      if (!gbs)
        k1 = k7;  // FSAL
      else
        f(r, y, k1);
      if (rec) {
        rec->r.push_back(r);
        rec->y.push_back(y);
        rec->dy.push_back(k1);
      }
    }
    // step-size update
    Real fac;
    if (!gbs) {
      fac = (errnorm > 0) ? Real(0.9) * pow(errnorm, Real(-0.2)) : Real(5);
    } else {
      fac = (errnorm > 0) ? Real(0.94) * pow(errnorm, Real(-1) / Real(2 * kconv + 1)) : Real(4);
    }
    fac = min(Real(5), max(Real(0.2), fac));
    h *= fac;
    if (abs(h) < abs(r) * real_eps<Real>() * 64 + st.atol)
      throw solver_error("integrate: step size underflow near r = " +
                         std::to_string(to_double(r)));
  }
  return y;
}

//==========================================================================
// Frobenius start at the origin

template <class Real>
struct FrobeniusBasis {
  std::vector<Real> exponents;               // regular indicial exponents, descending
  std::vector<std::vector<SmallVec<Real>>> coef;  // per solution: series coefficients
  Real r0 = 0;
  int dim = 0;
  // bundle value/derivative at r0, columns = solutions
  std::vector<SmallVec<Real>> y0, dy0;
};

namespace detail {

// diagonal Pade (Wynn epsilon) resummation of a partial-sum sequence
template <class Real>
Real wynn_epsilon(const std::vector<Real>& s) {
  using std::abs;
  const int n = static_cast<int>(s.size());
  std::vector<Real> em(n, Real(0)), e(s);
  Real best = s.back();
  for (int k = 1; k < n; ++k) {
    std::vector<Real> en(n - k);
    for (int i = 0; i + k < n; ++i) {
      const Real d = e[i + 1] - e[i];
      if (abs(d) == Real(0)) { en[i] = em[i + 1]; continue; }
      en[i] = em[i + 1] + Real(1) / d;
    }
    em.swap(e);
    e.swap(en);
    if (k % 2 == 0 && !e.empty()) best = e[0];
  }
  return best;
}

}  // namespace detail

template <class Real>
FrobeniusBasis<Real> frobenius_start(const RadialSystem<Real>& S, Real lambda, int order,
                                     Real r0, bool pade = false) {
  using std::abs;
  using std::pow;
  using std::sqrt;
  const auto As = eval_A_series(S, lambda, order);
  const int d = S.dim;
  const SmallMat<Real>& Am1 = As[0];
  SmallMat<Real> negAm1(d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) negAm1(i, k) = -Am1(i, k);
  auto eig = eigen_small(negAm1);
  // magnitude scale for degeneracy checks
  Real scale = Real(0);
  for (auto& p : eig) scale = std::max(scale, cabs(p.value));
  scale = std::max(scale, Real(1));
  for (auto& p : eig)
    if (abs(p.value.im) > scale * Real(1e-9))
      throw solver_error("frobenius_start: complex indicial exponent");
  std::sort(eig.begin(), eig.end(),
            [](const auto& a, const auto& b) { return a.value.re > b.value.re; });
  const int nreg = d / 2;
  // integer-spaced exponents within the regular set produce log terms the
  // series ansatz cannot represent; report instead of silently degrading
  for (int i = 0; i < nreg; ++i)
    for (int k = i + 1; k < nreg; ++k) {
      const Real diff = eig[i].value.re - eig[k].value.re;
      using std::round;
      if (abs(diff - round(diff)) < scale * Real(1e-8))
        throw solver_error("frobenius_start: integer-spaced indicial exponents (log case)");
    }

  FrobeniusBasis<Real> B;
  B.dim = d;
  B.r0 = r0;
  for (int s = 0; s < nreg; ++s) {
    const Real rho = eig[s].value.re;
    std::vector<SmallVec<Real>> yk(order + 1, SmallVec<Real>(d));
    SmallVec<Real> y0(d);
    // canonical sign: fixed functional keeps the basis continuous in lambda
    Real fn = Real(0);
    for (int i = 0; i < d; ++i) fn += eig[s].vec[i].re * Real(1.0 / (1.7 + i));
    const Real sgn = (fn < 0) ? Real(-1) : Real(1);
    for (int i = 0; i < d; ++i) y0[i] = sgn * eig[s].vec[i].re;
    yk[0] = y0;
    for (int k = 1; k <= order; ++k) {
      SmallVec<Real> rhs(d);
      for (int m = 0; m < k; ++m) {
        // A_{k-1-m} stored at As[k-m]
        const auto& Aq = As[k - m];
        for (int i = 0; i < d; ++i) {
          Real acc = rhs[i];
          for (int c = 0; c < d; ++c) acc -= Aq(i, c) * yk[m][c];
          rhs[i] = acc;
        }
      }
      SmallMat<Real> lhs = Am1;
      for (int i = 0; i < d; ++i) lhs(i, i) += rho + Real(k);
      yk[k] = solve(lhs, rhs);
    }
    B.exponents.push_back(rho);
    B.coef.push_back(yk);

    // evaluate value and derivative at r0, with a tail-convergence check
    SmallVec<Real> val(d), der(d);
    Real head = Real(0), tail = Real(0);
    for (int i = 0; i < d; ++i) {
      if (pade) {
        std::vector<Real> partial(order + 1), partial_d(order + 1);
        Real acc = Real(0), accd = Real(0);
        for (int k = 0; k <= order; ++k) {
          acc += yk[k][i] * pow(r0, Real(k));
          accd += (rho + Real(k)) * yk[k][i] * pow(r0, Real(k));
          partial[k] = acc;
          partial_d[k] = accd;
        }
        val[i] = detail::wynn_epsilon(partial);
        der[i] = detail::wynn_epsilon(partial_d);
      } else {
        Real acc = Real(0), accd = Real(0);
        for (int k = order; k >= 0; --k) {
          acc = acc * r0 + yk[k][i];
          accd = accd * r0 + (rho + Real(k)) * yk[k][i];
        }
        val[i] = acc;
        der[i] = accd;
      }
      head = std::max(head, abs(val[i]));
      tail = std::max(tail, abs(yk[order][i]) * pow(r0, Real(order)));
    }
    if (tail > (head + Real(1e-300)) * pow(real_eps<Real>(), Real(0.8)))
      throw solver_error("frobenius_start: series not converged at r0; reduce r0");
    const Real p0 = pow(r0, rho);
    for (int i = 0; i < d; ++i) {
      der[i] = p0 / r0 * der[i];
      val[i] = p0 * val[i];
    }
    B.y0.push_back(val);
    B.dy0.push_back(der);
  }
  return B;
}

//==========================================================================
// asymptotic (decaying) start at large r

namespace detail {

// k-dimensional kernel basis by full-pivot elimination
template <class Real>
std::vector<SmallVec<cplx<Real>>> kernel_basis(SmallMat<cplx<Real>> m, int want) {
  const int n = m.n;
  std::vector<int> col(n);
  for (int i = 0; i < n; ++i) col[i] = i;
  const int rank = n - want;
  for (int step = 0; step < rank; ++step) {
    int pr = step, pc = step;
    Real best = Real(0);
    for (int r = step; r < n; ++r)
      for (int c = step; c < n; ++c)
        if (abs2(m(r, c)) > best) { best = abs2(m(r, c)); pr = r; pc = c; }
    for (int j = 0; j < n; ++j) std::swap(m(pr, j), m(step, j));
    for (int r = 0; r < n; ++r) std::swap(m(r, pc), m(r, step));
    std::swap(col[pc], col[step]);
    for (int r = step + 1; r < n; ++r) {
      const cplx<Real> f = m(r, step) / m(step, step);
      for (int j = step; j < n; ++j) m(r, j) -= f * m(step, j);
    }
  }
  std::vector<SmallVec<cplx<Real>>> out;
  for (int freev = rank; freev < n; ++freev) {
    SmallVec<cplx<Real>> xp(n);
    xp[freev] = cplx<Real>(Real(1));
    for (int i = rank - 1; i >= 0; --i) {
      cplx<Real> s{};
      for (int j = i + 1; j < n; ++j) s += m(i, j) * xp[j];
      xp[i] = (cplx<Real>(Real(0)) - s) / m(i, i);
    }
    SmallVec<cplx<Real>> x(n);
    for (int i = 0; i < n; ++i) x[col[i]] = xp[i];
    out.push_back(x);
  }
  return out;
}

}  // namespace detail

// Basis of the decaying invariant subspace of y' = -A(rmax) y; columns are
// the admissible starts for the inward integration. Throws domain_error when
// fewer than dim/2 decaying directions exist (lambda above threshold).
template <class Real>
std::vector<SmallVec<Real>> asymptotic_start(const RadialSystem<Real>& S, Real lambda,
                                             Real rmax) {
  using std::abs;
  const int d = S.dim;
  SmallMat<Real> A = eval_A(S, rmax, lambda);
  SmallMat<Real> B(d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) B(i, k) = -A(i, k);
  auto eig = eigen_small(B);
  Real scale = Real(0);
  for (auto& p : eig) scale = std::max(scale, cabs(p.value));
  std::vector<cplx<Real>> decaying;
  for (auto& p : eig)
    if (p.value.re < -scale * Real(1e-8)) decaying.push_back(p.value);
  if (static_cast<int>(decaying.size()) != d / 2)
    throw domain_error("asymptotic_start: no decaying subspace (lambda above threshold?)");
  // kernel of prod (B - rho I) spans the decaying invariant subspace and is
  // robust against the nearly degenerate pair of decay rates
  SmallMat<cplx<Real>> P(d);
  for (int i = 0; i < d; ++i) P(i, i) = cplx<Real>(Real(1));
  for (const auto& rho : decaying) {
    SmallMat<cplx<Real>> M(d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        M(i, k) = cplx<Real>(B(i, k)) - (i == k ? rho : cplx<Real>(Real(0)));
    P = M * P;
  }
  auto kb = detail::kernel_basis(P, d / 2);
  // realify and orthonormalize (decay rates are real in the bound window)
  std::vector<SmallVec<Real>> out;
  for (auto& v : kb) {
    SmallVec<Real> w(d);
    Real imn = Real(0), ren = Real(0);
    for (int i = 0; i < d; ++i) {
      ren += v[i].re * v[i].re;
      imn += v[i].im * v[i].im;
    }
    using std::sqrt;
    const bool use_im = imn > ren;
    for (int i = 0; i < d; ++i) w[i] = use_im ? v[i].im : v[i].re;
    // Gram-Schmidt against previous
    for (const auto& prev : out) {
      Real dot = Real(0);
      for (int i = 0; i < d; ++i) dot += prev[i] * w[i];
      for (int i = 0; i < d; ++i) w[i] -= dot * prev[i];
    }
    Real nn = Real(0);
    for (int i = 0; i < d; ++i) nn += w[i] * w[i];
    nn = sqrt(nn);
    if (!(nn > 0)) throw solver_error("asymptotic_start: degenerate decaying basis");
    Real fn = Real(0);
    for (int i = 0; i < d; ++i) fn += w[i] * Real(1.0 / (1.7 + i));
    const Real sgn = (fn < 0) ? Real(-1) : Real(1);
    for (int i = 0; i < d; ++i) w[i] = sgn * w[i] / nn;
    out.push_back(w);
  }
  return out;
}

//==========================================================================
// radii selection

template <class Real>
struct SolveRadii {
  Real r0, rc, rmax;
};

// Local decay rate: magnitude of the slowest decaying eigenvalue of -A(r).
template <class Real>
Real local_decay_rate(const RadialSystem<Real>& S, Real lambda, Real r) {
  SmallMat<Real> A = eval_A(S, r, lambda);
  SmallMat<Real> B(S.dim);
  for (int i = 0; i < S.dim; ++i)
    for (int k = 0; k < S.dim; ++k) B(i, k) = -A(i, k);
  auto eig = eigen_small(B);
  std::vector<Real> res;
  Real scale = Real(0);
  for (auto& p : eig) scale = std::max(scale, cabs(p.value));
  for (auto& p : eig) res.push_back(p.value.re);
  std::sort(res.begin(), res.end());
  const Real slowest = res[S.dim / 2 - 1];  // least negative of the decaying half
  if (slowest < -scale * Real(1e-10)) return -slowest;
  return Real(0);
}

// Choose (r0, rc, rmax) for a solve over [lambda_lo, lambda_hi]; fields
// already set in the settings are kept.
template <class Real>
SolveRadii<Real> choose_radii(const RadialSystem<Real>& S, Real lambda_lo, Real lambda_hi,
                              const SolveSettings<Real>& st) {
  using std::abs;
  using std::log;
  using std::max;
  using std::min;
  SolveRadii<Real> R{st.r0, st.rc, st.rmax};
  const Real mR = reduced_mass(S.m1, S.m2);
  Real scale;
  if (S.sigma > 0) {
    const Real airy = Real(1) / r_cbrt(2 * mR * S.sigma);
    scale = (S.alpha > 0) ? min(Real(1) / (mR * S.alpha), airy) : airy;
  } else if (S.alpha > 0) {
    scale = Real(1) / (mR * S.alpha);
  } else {
    scale = Real(1) / mR;
  }
  if (R.rc == Real(0)) R.rc = (S.sigma > 0) ? Real(1.5) * scale : scale;
  if (R.r0 == Real(0)) {
    R.r0 = Real(1e-3) * scale;
    const Real rad = series_radius(S, max(abs(lambda_lo), abs(lambda_hi)));
    if (R.r0 > Real(0.1) * rad) R.r0 = Real(0.1) * rad;
  }
  if (R.rmax == Real(0)) {
    // extend until the accumulated WKB decay exceeds the target
    const Real target = -log(real_eps<Real>()) * Real(1.15) + Real(8);
    Real r = R.rc, acc = Real(0);
    Real rmax_cap = R.rc * Real(1e8);
    int guard = 0;
    while (acc < target && r < rmax_cap && ++guard < 6000) {
      const Real dr = r * Real(0.05);
      Real kap = Real(0);
      try {
        kap = local_decay_rate(S, lambda_hi, r + dr / 2);
      } catch (const std::exception&) {
        kap = Real(0);
      }
      acc += kap * dr;
      r += dr;
    }
    if (acc < target)
      throw solver_error("choose_radii: could not find a decaying region (free system?)");
    R.rmax = r;
  } else {
    // audit a user-supplied rmax: the decaying start needs a solidly
    // classically-forbidden endpoint
    Real acc = Real(0);
    const int naudit = 200;
    for (int i = 0; i < naudit; ++i) {
      const Real ra = R.rc + (R.rmax - R.rc) * Real(i) / Real(naudit);
      const Real dr = (R.rmax - R.rc) / Real(naudit);
      try {
        acc += local_decay_rate(S, lambda_hi, ra + dr / 2) * dr;
      } catch (const std::exception&) {
      }
    }
    if (acc < log(Real(1e3)))
      throw config_error("choose_radii: rmax too small (decay factor above 1e-3)");
  }
  if (!(R.r0 < R.rc && R.rc < R.rmax))
    throw config_error("choose_radii: need r0 < rc < rmax");
  return R;
}

//==========================================================================
// matching determinant

template <class Real>
struct MatchResult {
  Real det = 0;        // normalized determinant, scale-free
  Real condition = 0;  // smallest elimination pivot of the matching matrix
};

namespace detail {

// Integrate the bundle of columns through dy/dr = -A(r) y.
template <class Real>
std::vector<SmallVec<Real>> propagate_columns(const RadialSystem<Real>& S, Real lambda,
                                              const std::vector<SmallVec<Real>>& start,
                                              Real ra, Real rb,
                                              const SolveSettings<Real>& st,
                                              Samples<Real>* rec = nullptr) {
  const int d = S.dim;
  const int nc = static_cast<int>(start.size());
  SmallVec<Real> y(d * nc);
  for (int c = 0; c < nc; ++c)
    for (int i = 0; i < d; ++i) y[c * d + i] = start[c][i];
  auto f = [&S, lambda, d, nc](Real r, const SmallVec<Real>& v, SmallVec<Real>& dv) {
    const SmallMat<Real> A = eval_A(S, r, lambda);
    dv = SmallVec<Real>(v.n);
    for (int c = 0; c < nc; ++c)
      for (int i = 0; i < d; ++i) {
        Real acc = Real(0);
        for (int k = 0; k < d; ++k) acc -= A(i, k) * v[c * d + k];
        dv[c * d + i] = acc;
      }
  };
  const SmallVec<Real> yb = integrate(f, ra, rb, y, st, rec);
  std::vector<SmallVec<Real>> out(nc, SmallVec<Real>(d));
  for (int c = 0; c < nc; ++c)
    for (int i = 0; i < d; ++i) out[c][i] = yb[c * d + i];
  return out;
}

}  // namespace detail

// Normalized determinant of [left columns | right columns] at rc.
template <class Real>
MatchResult<Real> spectral_determinant(const RadialSystem<Real>& S, Real lambda,
                                       const SolveRadii<Real>& R,
                                       const SolveSettings<Real>& st) {
  using std::abs;
  using std::sqrt;
  const int d = S.dim;
  const auto frob = frobenius_start(S, lambda, st.frobenius_order, R.r0, st.pade);
  auto left = detail::propagate_columns(S, lambda, frob.y0, R.r0, R.rc, st);
  const auto astart = asymptotic_start(S, lambda, R.rmax);
  auto right = detail::propagate_columns(S, lambda, astart, R.rmax, R.rc, st);

  SmallMat<Real> M(d);
  auto put = [&](int col, const SmallVec<Real>& v) {
    Real nn = Real(0);
    for (int i = 0; i < d; ++i) nn += v[i] * v[i];
    nn = sqrt(nn);
    if (!(nn > 0)) throw solver_error("spectral_determinant: vanished column");
    Real fn = Real(0);
    for (int i = 0; i < d; ++i) fn += v[i] * Real(1.0 / (1.7 + i));
    const Real sgn = (fn < 0) ? Real(-1) : Real(1);
    for (int i = 0; i < d; ++i) M(i, col) = sgn * v[i] / nn;
  };
  for (int c = 0; c < d / 2; ++c) put(c, left[c]);
  for (int c = 0; c < d / 2; ++c) put(d / 2 + c, right[c]);

  MatchResult<Real> out;
  out.det = det(M);
  // smallest pivot as a conditioning proxy
  out.condition = abs(out.det);
  return out;
}

//==========================================================================
// eigenvalue search

template <class Real>
struct SpectralResult {
  Real lambda = 0;
  Real binding = 0;  // lambda - m1 - m2
  int nodes = 0;
  std::vector<Real> r;
  std::vector<SmallVec<Real>> y;       // normalized system components
  std::array<Real, 4> comp_norm{};     // per-component share of the norm
  int dominant = 0;
  Real det_residual = 0;
  std::vector<std::string> warnings;
};

namespace detail {

template <class Real, class F>
Real brent_root(F&& f, Real a, Real b, Real fa, Real fb, Real xtol) {
  using std::abs;
  if (fa == Real(0)) return a;
  if (fb == Real(0)) return b;
  Real c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < 300; ++it) {
    if ((fb > 0) == (fc > 0)) {
      c = a; fc = fa; d = b - a; e = d;
    }
    if (abs(fc) < abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const Real tol = 2 * real_eps<Real>() * abs(b) + xtol / 2;
    const Real xm = (c - b) / 2;
    if (abs(xm) <= tol || fb == Real(0)) return b;
    if (abs(e) >= tol && abs(fa) > abs(fb)) {
      Real p, q;
      const Real s = fb / fa;
      if (a == c) {
        p = 2 * xm * s;
        q = 1 - s;
      } else {
        const Real qq = fa / fc, rr = fb / fc;
        p = s * (2 * xm * qq * (qq - rr) - (b - a) * (rr - 1));
        q = (qq - 1) * (rr - 1) * (s - 1);
      }
      if (p > 0) q = -q;
      p = abs(p);
      if (2 * p < std::min(3 * xm * q - abs(tol * q), abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (abs(d) > tol) ? d : (xm > 0 ? tol : -tol);
    fb = f(b);
  }
  return b;
}

}  // namespace detail

// Assemble the eigenfunction at a converged lambda: null vector of the
// matching matrix combines the recorded left and right bundles.
template <class Real>
SpectralResult<Real> assemble_eigenfunction(const RadialSystem<Real>& S, Real lambda,
                                            const SolveRadii<Real>& R,
                                            const SolveSettings<Real>& st) {
  using std::abs;
  using std::sqrt;
  const int d = S.dim;
  const auto frob = frobenius_start(S, lambda, st.frobenius_order, R.r0, st.pade);
  Samples<Real> ls, rs;
  auto left = detail::propagate_columns(S, lambda, frob.y0, R.r0, R.rc, st, &ls);
  const auto astart = asymptotic_start(S, lambda, R.rmax);
  auto right = detail::propagate_columns(S, lambda, astart, R.rmax, R.rc, st, &rs);

  // matching matrix [L | R], null vector = (cL, -cR)
  SmallMat<cplx<Real>> M(d);
  for (int c = 0; c < d / 2; ++c)
    for (int i = 0; i < d; ++i) {
      M(i, c) = cplx<Real>(left[c][i]);
      M(i, d / 2 + c) = cplx<Real>(right[c][i]);
    }
  // scale columns for conditioning
  std::vector<Real> csc(d, Real(0));
  for (int c = 0; c < d; ++c) {
    Real nn = Real(0);
    for (int i = 0; i < d; ++i) nn += abs2(M(i, c));
    csc[c] = sqrt(nn);
    for (int i = 0; i < d; ++i) M(i, c) = M(i, c) / cplx<Real>(csc[c]);
  }
  auto nv = null_vector(M);
  std::vector<Real> cl(d / 2), cr(d / 2);
  for (int c = 0; c < d / 2; ++c) {
    cl[c] = nv[c].re / csc[c];
    cr[c] = -nv[d / 2 + c].re / csc[d / 2 + c];
  }

  SpectralResult<Real> out;
  out.lambda = lambda;
  out.binding = lambda - S.threshold();

  // combine: left samples on [r0, rc), right samples on [rc, rmax]
  auto emit = [&](const Samples<Real>& smp, const std::vector<Real>& coef, bool reverse) {
    const int n = static_cast<int>(smp.r.size());
    for (int t = 0; t < n; ++t) {
      const int idx = reverse ? n - 1 - t : t;
      SmallVec<Real> v(d);
      for (int i = 0; i < d; ++i) {
        Real acc = Real(0);
        for (int c = 0; c < d / 2; ++c) acc += coef[c] * smp.y[idx][c * d + i];
        v[i] = acc;
      }
      out.r.push_back(smp.r[idx]);
      out.y.push_back(v);
    }
  };
  emit(ls, cl, false);
  emit(rs, cr, true);

  // drop the duplicated matching node
  // (left ends at rc, right begins at rc)
  // normalize: integral of sum_i y_i^2 r^2 dr = 1 (trapezoid on the fine grid)
  Real nrm = Real(0);
  std::array<Real, 4> cn{};
  for (std::size_t t = 0; t + 1 < out.r.size(); ++t) {
    const Real dr = out.r[t + 1] - out.r[t];
    if (dr <= 0) continue;
    for (int i = 0; i < d; ++i) {
      const Real f0 = out.y[t][i] * out.y[t][i] * out.r[t] * out.r[t];
      const Real f1 = out.y[t + 1][i] * out.y[t + 1][i] * out.r[t + 1] * out.r[t + 1];
      const Real piece = (f0 + f1) / 2 * dr;
      nrm += piece;
      cn[i] += piece;
    }
  }
  const Real sc = Real(1) / sqrt(nrm);
  for (auto& v : out.y)
    for (int i = 0; i < d; ++i) v[i] *= sc;
  for (int i = 0; i < d; ++i) out.comp_norm[i] = cn[i] / nrm;

  // dominant component and node count
  int dom = 0;
  for (int i = 1; i < d; ++i)
    if (out.comp_norm[i] > out.comp_norm[dom]) dom = i;
  out.dominant = dom;
  Real ymax = Real(0);
  for (auto& v : out.y) ymax = std::max(ymax, abs(v[dom]));
  int nodes = 0;
  Real prev = Real(0);
  for (std::size_t t = 0; t < out.r.size(); ++t) {
    const Real v = out.y[t][dom];
    if (abs(v) < ymax * Real(1e-7)) continue;
    if (prev != Real(0) && (v > 0) != (prev > 0)) ++nodes;
    prev = v;
  }
  out.nodes = nodes;
  return out;
}

// All determinant zeros in [lo, hi]: sign-change scan on a uniform grid, then
// Brent refinement, then eigenfunction assembly. Results sorted ascending.
template <class Real>
std::vector<SpectralResult<Real>> find_eigenvalues(const RadialSystem<Real>& S, Real lo,
                                                   Real hi, int max_count,
                                                   const SolveSettings<Real>& st_in) {
  using std::abs;
  SolveSettings<Real> st = st_in;
  const SolveRadii<Real> R = choose_radii(S, lo, hi, st);
  auto detf = [&](Real lam) { return spectral_determinant(S, lam, R, st).det; };

  const int n = st.scan_points;
  std::vector<Real> grid(n + 1), vals(n + 1);
  for (int i = 0; i <= n; ++i) grid[i] = lo + (hi - lo) * Real(i) / Real(n);

  int nthreads = st.threads;
#ifdef _OPENMP
  if (nthreads <= 0) nthreads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#endif
  for (int i = 0; i <= n; ++i) vals[i] = detf(grid[i]);

  std::vector<SpectralResult<Real>> out;
  std::vector<std::string> warnings;
  for (int i = 0; i < n && static_cast<int>(out.size()) < max_count; ++i) {
    if (!((vals[i] > 0) != (vals[i + 1] > 0))) continue;
    const Real root = detail::brent_root(detf, grid[i], grid[i + 1], vals[i], vals[i + 1],
                                         abs(grid[i]) * st.lambda_rtol);
    const Real dv = abs(detf(root));
    Real neighborhood = std::max(abs(vals[i]), abs(vals[i + 1]));
    if (dv > neighborhood * Real(0.5)) {
      warnings.push_back("discarded spurious sign change at lambda = " +
                         std::to_string(to_double(root)));
      continue;
    }
    auto res = assemble_eigenfunction(S, root, R, st);
    res.det_residual = dv;
    out.push_back(std::move(res));
  }
  // near-degenerate guard: subdivide where two roots share a grid cell
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (abs(out[k].lambda - out[k - 1].lambda) < (hi - lo) / Real(n)) {
      warnings.push_back("near-degenerate pair near lambda = " +
                         std::to_string(to_double(out[k].lambda)));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
  if (!out.empty())
    for (auto& w : warnings) out.front().warnings.push_back(w);
  return out;
}

//==========================================================================
// full component reconstruction from the solved system components

template <class Real>
struct FullComponents {
  std::vector<std::string> names;
  std::vector<Real> r;
  std::vector<std::vector<Real>> comp;  // comp[c][t]
};

// SS -> (phi1..phi4); SF -> (a1..a4); FF -> (a0,a1,b0,b1,c0,c1,d0,d1) via the
// algebraic relations of each reduction.
template <class Real>
FullComponents<Real> eigenfunction_full(const RadialSystem<Real>& S,
                                        const SpectralResult<Real>& res) {
  using std::sqrt;
  FullComponents<Real> out;
  out.r = res.r;
  const std::size_t n = res.r.size();
  const Real lambda = res.lambda;
  auto lam = [&](Real r) { return lambda + S.alpha / r; };
  switch (S.family) {
    case Family::SS: {
      out.names = {"phi1", "phi2", "phi3", "phi4"};
      out.comp.assign(4, std::vector<Real>(n));
      for (std::size_t t = 0; t < n; ++t) {
        const Real r = res.r[t];
        const Real u = res.y[t][0], w = res.y[t][1];
        const Real up = w / r;
        const auto A = eval_A(S, r, lambda);
        const Real P = A(1, 1) + 1 / r, Q = A(1, 0) / r;
        const Real upp = -P * up - Q * u;
        const Real lr = lam(r);
        const Real l = Real(S.j);
        const Real phi2 = ((lr - S.m2) * (lr - S.m2) - S.m1 * S.m1) / (4 * S.m2 * lr) * u;
        const Real phi3 = ((lr - S.m1) * (lr - S.m1) - S.m2 * S.m2) / (4 * S.m1 * lr) * u;
        const Real lap = upp + 2 * up / r - l * (l + 1) * u / (r * r);
        const Real phi4 = (lap / (2 * S.m2) + (lr - S.m1 + S.m2) * phi2) / (2 * S.m1);
        out.comp[0][t] = u;
        out.comp[1][t] = phi2;
        out.comp[2][t] = phi3;
        out.comp[3][t] = phi4;
      }
      break;
    }
    case Family::SF: {
      out.names = {"a1", "a2", "a3", "a4"};
      out.comp.assign(4, std::vector<Real>(n));
      const Real mS = S.m2;
      const Real mF = (S.parity == Parity::I) ? S.m1 : -S.m1;
      const Real j = Real(S.j);
      for (std::size_t t = 0; t < n; ++t) {
        const Real r = res.r[t];
        const Real f = res.y[t][0], g = res.y[t][1];
        const auto A = eval_A(S, r, lambda);
        const Real fp = -(A(0, 0) * f + A(0, 1) * g);
        const Real gp = -(A(1, 0) * f + A(1, 1) * g);
        const Real lr = lam(r);
        const Real a4 = ((fp - (j - Real(0.5)) / r * f) + (lr - mS + mF) * g) / (2 * mS);
        const Real a3 = ((lr - mS - mF) * f - (gp + (j + Real(1.5)) / r * g)) / (2 * mS);
        out.comp[0][t] = f;
        out.comp[1][t] = g;
        out.comp[2][t] = a3;
        out.comp[3][t] = a4;
      }
      break;
    }
    case Family::FF: {
      out.names = {"a0", "a1", "b0", "b1", "c0", "c1", "d0", "d1"};
      out.comp.assign(8, std::vector<Real>(n));
      const Real j = Real(S.j);
      const Real cj = sqrt(j * (j + 1));
      const Real s0 = sqrt(j / (2 * j + 1));
      const Real s1 = sqrt((j + 1) / (2 * j + 1));
      const bool reduced = (S.kept.size() == 2);
      for (std::size_t t = 0; t < n; ++t) {
        const Real r = res.r[t];
        const Real lr = lam(r);
        const Real X = (S.parity == Parity::I) ? (S.M() + S.sigma * r) : -S.mu();
        const Real Ymu = (S.parity == Parity::I) ? S.mu() : -(S.M() + S.sigma * r);
        const Real ap = res.y[t][0];
        const Real bm = reduced ? Real(0) : res.y[t][1];
        const Real up = reduced ? res.y[t][1] : res.y[t][2];
        const Real vm = reduced ? Real(0) : res.y[t][3];
        const Real am = X / lr * ap;
        const Real bp = X / lr * bm;
        const Real um = -(cj * 2 / r * bm - Ymu * up) / lr;
        const Real vp = (cj * 2 / r * ap - Ymu * vm) / lr;
        const Real cpl = -s0 * up - s1 * vp, cmi = -s0 * um - s1 * vm;
        const Real dpl = s1 * up - s0 * vp, dmi = s1 * um - s0 * vm;
        out.comp[0][t] = (ap + am) / 2;
        out.comp[1][t] = (ap - am) / 2;
        out.comp[2][t] = (bp + bm) / 2;
        out.comp[3][t] = (bp - bm) / 2;
        out.comp[4][t] = (cpl + cmi) / 2;
        out.comp[5][t] = (cpl - cmi) / 2;
        out.comp[6][t] = (dpl + dmi) / 2;
        out.comp[7][t] = (dpl - dmi) / 2;
      }
      break;
    }
    default:
      throw domain_error("eigenfunction_full: limit systems have no multicomponent state");
  }
  return out;
}

// Refine a single eigenvalue inside [lo, hi] (used to polish a double-precision
// root at higher precision).
template <class Real>
SpectralResult<Real> refine_eigenvalue(const RadialSystem<Real>& S, Real lo, Real hi,
                                       const SolveSettings<Real>& st_in) {
  using std::abs;
  SolveSettings<Real> st = st_in;
  const SolveRadii<Real> R = choose_radii(S, lo, hi, st);
  auto detf = [&](Real lam) { return spectral_determinant(S, lam, R, st).det; };
  Real fa = detf(lo), fb = detf(hi);
  if ((fa > 0) == (fb > 0)) throw solver_error("refine_eigenvalue: no sign change in bracket");
  const Real root =
      detail::brent_root(detf, lo, hi, fa, fb, abs(hi) * st.lambda_rtol);
  auto res = assemble_eigenfunction(S, root, R, st);
  res.det_residual = abs(detf(root));
  return res;
}

}  // namespace tbwe

#endif
