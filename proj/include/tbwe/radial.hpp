// Radial first-order systems y'(r) + A(r, lambda) y(r) = 0 for the three
// channels (two scalars, scalar-fermion, two fermions) and for the one-body
// limit systems (Dirac, Klein-Gordon, Schroedinger) used as oracles.
//
// The coefficient formulas are written once over an abstract field type F and
// instantiated both pointwise (F = Real) and as truncated Laurent series
// about r = 0 (F = Series<Real>), so the Frobenius start and the integrator
// see identical coefficients by construction.
//
// Second-order channels are recast with the state (u, r u') which keeps the
// system Fuchsian at the origin.
#ifndef TBWE_RADIAL_HPP
#define TBWE_RADIAL_HPP

#include <functional>
#include <limits>
#include <vector>

#include "tbwe/linalg.hpp"
#include "tbwe/model.hpp"
#include "tbwe/series.hpp"
#include "tbwe/angular.hpp"

namespace tbwe {

enum class Family { SS, SF, FF, Schr, KG, Dirac };
enum class LimitKind { DiracOfLighter, KleinGordonOfLighter, Schroedinger };

template <class Real>
struct RadialSystem {
  Family family = Family::FF;
  int dim = 4;
  Real m1 = 0, m2 = 0;     // pair masses, solver units (m1 = first particle)
  Real alpha = 0, sigma = 0;
  double j = 0;            // channel angular momentum (l for SS)
  Parity parity = Parity::I;
  // limit-system extras
  int ell = 0;             // orbital quantum number of a limit system
  Real kappa = 0;          // Dirac-limit kappa
  // FF j = 0: the (y2, y4) pair vanishes identically and is dropped
  std::vector<int> kept{0, 1, 2, 3};

  Real M() const { return m1 + m2; }
  Real mu() const { return m1 - m2; }
  Real threshold() const { return m1 + m2; }
};

namespace detail {

// Shared ingredients handed to the coefficient formulas.
template <class F>
struct CoeffArgs {
  F r, inv_r;          // r and 1/r
  F lam_r, inv_lam_r;  // lambda(r) = lambda + alpha/r and its reciprocal
};

template <class Real>
CoeffArgs<Real> point_args(Real r, Real lambda, Real alpha) {
  CoeffArgs<Real> a;
  a.r = r;
  a.inv_r = Real(1) / r;
  a.lam_r = lambda + alpha * a.inv_r;
  a.inv_lam_r = Real(1) / a.lam_r;
  return a;
}

template <class Real>
CoeffArgs<Series<Real>> series_args(Real lambda, Real alpha) {
  using S = Series<Real>;
  CoeffArgs<S> a;
  a.r = S::var();
  a.inv_r = S::inv_var();
  a.lam_r = S(lambda) + alpha * a.inv_r;
  // 1/(lambda + alpha/r) = r / (alpha + lambda r)
  a.inv_lam_r = S::var() * S::inv_linear(alpha, lambda);
  return a;
}

// Two-fermion 4x4 matrix, rows as in the boundary eigenvalue problem:
//   (0, E, -F, 0), (E, 1/r, 0, F), (G, 0, 2/r, E), (0, -G, E, 1/r).
// Parity II is parity I under M + sigma r -> -mu, mu -> -(M + sigma r).
template <class F, class Real>
SmallMat<F> ff_matrix(const RadialSystem<Real>& S, const CoeffArgs<F>& c) {
  using std::sqrt;
  const Real j = Real(S.j);
  const Real cj = sqrt(j * (j + 1));
  const Real half = Real(1) / 2;
  const F mass_plus = F(S.M()) + S.sigma * c.r;  // M + sigma r
  const F P = (S.parity == Parity::I) ? F(S.mu()) : Real(-1) * mass_plus;
  const F Q = (S.parity == Parity::I) ? mass_plus : F(-S.mu());
  const F E = cj * (P * (c.inv_r * c.inv_lam_r));
  const F Fc = half * c.lam_r - half * (P * P * c.inv_lam_r);
  const F G = half * c.lam_r - (2 * j * (j + 1)) * (c.inv_r * c.inv_r * c.inv_lam_r) -
              half * (Q * Q * c.inv_lam_r);
  SmallMat<F> A(4);
  A(0, 0) = F(Real(0));  A(0, 1) = E;            A(0, 2) = Real(-1) * Fc; A(0, 3) = F(Real(0));
  A(1, 0) = E;           A(1, 1) = c.inv_r;      A(1, 2) = F(Real(0));    A(1, 3) = Fc;
  A(2, 0) = G;           A(2, 1) = F(Real(0));   A(2, 2) = Real(2) * c.inv_r; A(2, 3) = E;
  A(3, 0) = F(Real(0));  A(3, 1) = Real(-1) * G; A(3, 2) = E;             A(3, 3) = c.inv_r;
  return A;
}

// Scalar-fermion pair (f, g); parity II is m_F -> -m_F.
template <class F, class Real>
SmallMat<F> sf_matrix(const RadialSystem<Real>& S, const CoeffArgs<F>& c, Real mF, Real mS) {
  const Real j = Real(S.j);
  const Real half = Real(1) / 2;
  const Real mf = (S.parity == Parity::I) ? mF : -mF;
  const Real dm = mF * mF - mS * mS;  // m_F^2 - m_S^2, parity independent
  // d(lambda(r))/dr / (2 lambda(r)) = -(alpha/2) / (r^2 lambda(r))
  const F dlam_term = (S.alpha * half) * (c.inv_r * c.inv_r * c.inv_lam_r);
  const F pot = half * c.lam_r + (dm * half) * c.inv_lam_r;
  SmallMat<F> A(2);
  A(0, 0) = Real(-(j - 0.5)) * c.inv_r - dlam_term;
  A(0, 1) = Real(-1) * pot - F(mf);
  A(1, 0) = pot - F(mf);
  A(1, 1) = Real(j + 1.5) * c.inv_r - dlam_term;
  return A;
}

// Two scalars: second-order radial equation in the state (u, r u').
//   u'' + P u' + Q u = 0,
//   P = 2/r - alpha / (2 r^2 lambda(r)),
//   Q = lambda(r)^2/4 + (m1^2-m2^2)^2/(4 lambda(r)^2) - (m1^2+m2^2)/2
//       - l(l+1)/r^2.
template <class F, class Real>
SmallMat<F> ss_matrix(const RadialSystem<Real>& S, const CoeffArgs<F>& c) {
  const Real l = Real(S.j);
  const Real quarter = Real(1) / 4;
  const Real dm2 = (S.m1 * S.m1 - S.m2 * S.m2);
  const F P = Real(2) * c.inv_r - (S.alpha / 2) * (c.inv_r * c.inv_r * c.inv_lam_r);
  const F Q = quarter * (c.lam_r * c.lam_r) +
              (quarter * dm2 * dm2) * (c.inv_lam_r * c.inv_lam_r) -
              F(Real(0.5) * (S.m1 * S.m1 + S.m2 * S.m2)) -
              (l * (l + 1)) * (c.inv_r * c.inv_r);
  SmallMat<F> A(2);
  A(0, 0) = F(Real(0));
  A(0, 1) = Real(-1) * c.inv_r;
  A(1, 0) = c.r * Q;
  A(1, 1) = P - c.inv_r;
  return A;
}

// Generic (u, r u') recast of u'' + (2/r) u' + Q u = 0.
template <class F, class Real>
SmallMat<F> radial_schr_form(const CoeffArgs<F>& c, const F& Q) {
  SmallMat<F> A(2);
  A(0, 0) = F(Real(0));
  A(0, 1) = Real(-1) * c.inv_r;
  A(1, 0) = c.r * Q;
  A(1, 1) = c.inv_r;  // P - 1/r with P = 2/r
  return A;
}

template <class F, class Real>
SmallMat<F> schr_matrix(const RadialSystem<Real>& S, Real lambda, const CoeffArgs<F>& c) {
  const Real mR = reduced_mass(S.m1, S.m2);
  const Real E = lambda - S.M();
  const Real l = Real(S.ell);
  const F Q = (2 * mR) * (F(E) + S.alpha * c.inv_r - S.sigma * c.r) -
              (l * (l + 1)) * (c.inv_r * c.inv_r);
  return radial_schr_form<F, Real>(c, Q);
}

template <class F, class Real>
SmallMat<F> kg_matrix(const RadialSystem<Real>& S, Real lambda, const CoeffArgs<F>& c) {
  using std::max;
  using std::min;
  const Real mh = max(S.m1, S.m2), ml = min(S.m1, S.m2);
  const Real lp = lambda - mh;  // m_light + E
  const Real l = Real(S.ell);
  // (lp + alpha/r)^2 - m^2 - l(l+1)/r^2
  const F Q = F(lp * lp - ml * ml) + (2 * lp * S.alpha) * c.inv_r +
              (S.alpha * S.alpha - l * (l + 1)) * (c.inv_r * c.inv_r);
  return radial_schr_form<F, Real>(c, Q);
}

// One-body Dirac system in (r f, r g).
template <class F, class Real>
SmallMat<F> dirac_matrix(const RadialSystem<Real>& S, Real lambda, const CoeffArgs<F>& c) {
  using std::max;
  using std::min;
  const Real mh = max(S.m1, S.m2), ml = min(S.m1, S.m2);
  const Real lp = lambda - mh;  // m_light + E
  const F lam2 = F(lp) + S.alpha * c.inv_r;
  SmallMat<F> A(2);
  A(0, 0) = S.kappa * c.inv_r;
  A(0, 1) = Real(-1) * lam2 - F(ml);
  A(1, 0) = lam2 - F(ml) - S.sigma * c.r;
  A(1, 1) = -S.kappa * c.inv_r;
  return A;
}

template <class F, class Real>
SmallMat<F> family_matrix(const RadialSystem<Real>& S, Real lambda, const CoeffArgs<F>& c) {
  switch (S.family) {
    case Family::FF: {
      SmallMat<F> A = ff_matrix(S, c);
      if (S.kept.size() == 4) return A;
      SmallMat<F> R(2);  // j = 0: rows/cols (y1, y3)
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) R(i, k) = A(S.kept[i], S.kept[k]);
      return R;
    }
    case Family::SF: {
      // identify which constituent is the fermion
      return sf_matrix(S, c, S.m1, S.m2);
    }
    case Family::SS:
      return ss_matrix(S, c);
    case Family::Schr:
      return schr_matrix(S, lambda, c);
    case Family::KG:
      return kg_matrix(S, lambda, c);
    case Family::Dirac:
      return dirac_matrix(S, lambda, c);
  }
  throw solver_error("unknown family");
}

}  // namespace detail

// Pointwise coefficient matrix A(r, lambda).
template <class Real>
SmallMat<Real> eval_A(const RadialSystem<Real>& S, Real r, Real lambda) {
  return detail::family_matrix(S, lambda, detail::point_args(r, lambda, S.alpha));
}

// Laurent coefficients of A about r = 0: out[k] multiplies r^(k-1),
// k = 0 .. order+1. Throws if the system is not Fuchsian in these variables.
template <class Real>
std::vector<SmallMat<Real>> eval_A_series(const RadialSystem<Real>& S, Real lambda, int order) {
  SeriesOrderGuard<Real> guard(order + 2);
  const auto args = detail::series_args(lambda, S.alpha);
  const auto A = detail::family_matrix(S, lambda, args);
  const int dim = A.n;
  std::vector<SmallMat<Real>> out(order + 2, SmallMat<Real>(dim));
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      const auto& s = A(i, k);
      if (s.lo < -1) {
        // only possible when alpha = 0 removes the lambda(r) ~ alpha/r shield
        for (int p = s.lo; p < -1; ++p)
          if (s.at(p) != Real(0))
            throw solver_error(
                "radial system has a higher-order pole at r = 0 (needs alpha > 0)");
      }
      for (int q = 0; q <= order + 1; ++q) out[q](i, k) = s.at(q - 1);
    }
  return out;
}

// Radius of convergence of the origin series (pole of 1/(lambda r + alpha)).
template <class Real>
Real series_radius(const RadialSystem<Real>& S, Real lambda) {
  const bool interacting =
      (S.family == Family::SS || S.family == Family::SF || S.family == Family::FF);
  if (!interacting || S.alpha == Real(0)) return std::numeric_limits<Real>::infinity();
  using std::abs;
  return S.alpha / abs(lambda);
}

//==========================================================================
// builders

// Masses in ParticleSpec/InteractionSpec are in MeV (or any common unit);
// unit_mev sets the solver mass scale, default the lighter constituent.
template <class Real>
RadialSystem<Real> build_system(const ChannelSpec& ch, const ParticleSpec& p1,
                                const ParticleSpec& p2, const InteractionSpec& inter,
                                double unit_mev = 0.0) {
  ch.validate();
  inter.validate();
  p1.validate();
  p2.validate();
  if (unit_mev == 0.0) unit_mev = std::min(p1.mass, p2.mass);
  const Real u = Real(unit_mev);
  const Real m1_scaled = Real(p1.mass) / u;
  const Real m2_scaled = Real(p2.mass) / u;
  RadialSystem<Real> S;
  S.alpha = Real(inter.alpha);
  S.sigma = Real(inter.sigma) / (u * u);
  S.j = ch.j();
  S.parity = ch.parity;
  switch (ch.kind) {
    case ChannelKind::ScalarScalar:
      if (p1.spin != Spin::Scalar || p2.spin != Spin::Scalar)
        throw config_error("SS channel needs two scalars");
      if (inter.sigma != 0) throw config_error("SS channel is derived for sigma = 0 only");
      S.family = Family::SS;
      S.dim = 2;
      S.m1 = m1_scaled;
      S.m2 = m2_scaled;
      S.kept = {0, 1};
      break;
    case ChannelKind::ScalarFermion: {
      if (p1.spin == p2.spin) throw config_error("SF channel needs one scalar and one fermion");
      if (inter.sigma != 0) throw config_error("SF channel is derived for sigma = 0 only");
      S.family = Family::SF;
      S.dim = 2;
      // store (m1, m2) = (fermion, scalar)
      const bool first_is_fermion = (p1.spin == Spin::Fermion);
      S.m1 = first_is_fermion ? m1_scaled : m2_scaled;
      S.m2 = first_is_fermion ? m2_scaled : m1_scaled;
      S.kept = {0, 1};
      break;
    }
    case ChannelKind::FermionFermion:
      if (p1.spin != Spin::Fermion || p2.spin != Spin::Fermion)
        throw config_error("FF channel needs two fermions");
      S.family = Family::FF;
      S.m1 = m1_scaled;
      S.m2 = m2_scaled;
      if (ch.two_j == 0) {
        // the components carrying sqrt(j(j+1)) vanish identically; drop them
        S.dim = 2;
        S.kept = {0, 2};
      } else {
        S.dim = 4;
        S.kept = {0, 1, 2, 3};
      }
      break;
  }
  return S;
}

// One-body limit systems, solved by the same engine as oracles.
// variant selects among the limit's decoupled branches where several exist:
//   Dirac of FF:  parity I -> kappa in {-(j+1), j}, parity II -> {-j, j+1}
//   Schroedinger: parity I -> l = j; parity II -> l = j -+ 1
template <class Real>
RadialSystem<Real> limit_system(LimitKind kind, const ChannelSpec& ch, Real m1, Real m2,
                                Real alpha, Real sigma, int variant = 0) {
  RadialSystem<Real> S;
  S.m1 = m1;
  S.m2 = m2;
  S.alpha = alpha;
  S.sigma = sigma;
  S.j = ch.j();
  S.parity = ch.parity;
  S.dim = 2;
  S.kept = {0, 1};
  const double j = ch.j();
  switch (kind) {
    case LimitKind::Schroedinger: {
      S.family = Family::Schr;
      if (ch.kind == ChannelKind::ScalarScalar) {
        S.ell = ch.two_j / 2;
      } else if (ch.kind == ChannelKind::ScalarFermion) {
        S.ell = static_cast<int>(j + (ch.parity == Parity::I ? -0.5 : 0.5));
      } else {
        if (ch.parity == Parity::I)
          S.ell = static_cast<int>(j);
        else
          S.ell = static_cast<int>(j) + (variant == 0 && j >= 1 ? -1 : 1);
      }
      break;
    }
    case LimitKind::KleinGordonOfLighter: {
      if (ch.kind == ChannelKind::FermionFermion)
        throw config_error("KG limit applies to the SS and SF channels");
      S.family = Family::KG;
      if (ch.kind == ChannelKind::ScalarScalar)
        S.ell = ch.two_j / 2;
      else
        S.ell = static_cast<int>(j + (ch.parity == Parity::I ? -0.5 : 0.5));
      break;
    }
    case LimitKind::DiracOfLighter: {
      if (ch.kind == ChannelKind::ScalarScalar)
        throw config_error("Dirac limit applies to the SF and FF channels");
      S.family = Family::Dirac;
      if (ch.kind == ChannelKind::ScalarFermion) {
        S.kappa = (ch.parity == Parity::I) ? Real(-(j + 0.5)) : Real(j + 0.5);
      } else {
        if (ch.parity == Parity::I)
          S.kappa = (variant == 0) ? Real(-(j + 1)) : Real(j);
        else
          S.kappa = (variant == 0) ? Real(-j) : Real(j + 1);
        if (S.kappa == Real(0))
          S.kappa = (ch.parity == Parity::I) ? Real(-(j + 1)) : Real(j + 1);
      }
      break;
    }
  }
  return S;
}

//==========================================================================
// closed-form free solutions (alpha = sigma = 0)

template <class Real>
struct FreeSolutionBasis {
  Real k = 0;
  int dim = 0;
  // members[i](r, y, yp): value and derivative of independent solution i
  std::vector<std::function<void(Real, SmallVec<Real>&, SmallVec<Real>&)>> members;
};

namespace detail {

// j_l'' from the spherical Bessel differential equation (independent of the
// radial systems under test).
template <class Real>
Real sph_bessel_j_dd(int l, Real x) {
  return -2 / x * sph_bessel_j_deriv(l, x) -
         (Real(1) - Real(l * (l + 1)) / (x * x)) * sph_bessel_j(l, x);
}

}  // namespace detail

template <class Real>
FreeSolutionBasis<Real> free_solution_basis(const RadialSystem<Real>& S, Real lambda) {
  if (S.alpha != Real(0) || S.sigma != Real(0))
    throw domain_error("free_solution_basis: system must be free (alpha = sigma = 0)");
  FreeSolutionBasis<Real> B;
  B.k = free_wavenumber(lambda, S.m1, S.m2);
  const Real k = B.k;
  switch (S.family) {
    case Family::SS: {
      const int l = static_cast<int>(S.j);
      B.dim = 2;
      B.members.push_back([l, k](Real r, SmallVec<Real>& y, SmallVec<Real>& yp) {
        y = SmallVec<Real>(2);
        yp = SmallVec<Real>(2);
        const Real x = k * r;
        const Real u = sph_bessel_j(l, x);
        const Real up = k * sph_bessel_j_deriv(l, x);
        const Real upp = k * k * detail::sph_bessel_j_dd(l, x);
        y[0] = u;
        y[1] = r * up;
        yp[0] = up;
        yp[1] = up + r * upp;
      });
      break;
    }
    case Family::SF: {
      // f = j_l(kr) with l = j - 1/2 (parity I) or j + 1/2 (parity II);
      // g = -2 k lambda / ((lambda + m_F)^2 - m_S^2) j_{l+1}(kr).
      // The sign of the g prefactor is fixed by requiring zero residual in
      // the reduced pair.
      const Real mf = (S.parity == Parity::I) ? S.m1 : -S.m1;
      const int l = static_cast<int>(S.j + (S.parity == Parity::I ? -0.5 : 0.5));
      const Real denom = (lambda + mf) * (lambda + mf) - S.m2 * S.m2;
      const Real c = -2 * k * lambda / denom;
      B.dim = 2;
      B.members.push_back([l, k, c](Real r, SmallVec<Real>& y, SmallVec<Real>& yp) {
        y = SmallVec<Real>(2);
        yp = SmallVec<Real>(2);
        const Real x = k * r;
        y[0] = sph_bessel_j(l, x);
        y[1] = c * sph_bessel_j(l + 1, x);
        yp[0] = k * sph_bessel_j_deriv(l, x);
        yp[1] = c * k * sph_bessel_j_deriv(l + 1, x);
      });
      break;
    }
    case Family::FF: {
      const int jj = static_cast<int>(S.j);
      // parity II under M -> -mu, mu -> -M
      const Real M = (S.parity == Parity::I) ? S.M() : -S.mu();
      const Real mu = (S.parity == Parity::I) ? S.mu() : -S.M();
      const Real lam = lambda;
      const Real D = lam * lam - mu * mu;
      const Real cj = std::sqrt(Real(S.j * (S.j + 1)));
      auto make = [&](Real A, Real Bc) {
        return [=, kept = S.kept](Real r, SmallVec<Real>& y, SmallVec<Real>& yp) {
          const Real x = k * r;
          const Real jn = sph_bessel_j(jj, x);
          const Real jn1 = sph_bessel_j(jj + 1, x);
          const Real djn = k * sph_bessel_j_deriv(jj, x);
          const Real djn1 = k * sph_bessel_j_deriv(jj + 1, x);
          SmallVec<Real> f(4), fp(4);
          f[0] = A * jn;
          f[1] = Bc * jn;
          const Real c3 = (2 * A * jj * lam + 2 * Bc * cj * mu) / D;
          const Real c4 = -(2 * A * cj * mu + 2 * Bc * (jj + 1) * lam) / D;
          const Real e3 = -2 * A * k * lam / D;
          const Real e4 = 2 * Bc * k * lam / D;
          f[2] = c3 / r * jn + e3 * jn1;
          f[3] = c4 / r * jn + e4 * jn1;
          fp[0] = A * djn;
          fp[1] = Bc * djn;
          fp[2] = -c3 / (r * r) * jn + c3 / r * djn + e3 * djn1;
          fp[3] = -c4 / (r * r) * jn + c4 / r * djn + e4 * djn1;
          const int d = static_cast<int>(kept.size());
          y = SmallVec<Real>(d);
          yp = SmallVec<Real>(d);
          for (int i = 0; i < d; ++i) {
            y[i] = f[kept[i]];
            yp[i] = fp[kept[i]];
          }
        };
      };
      if (S.kept.size() == 4) {
        B.dim = 4;
        B.members.push_back(make(Real(1), Real(0)));
        B.members.push_back(make(Real(0), Real(1)));
      } else {
        B.dim = 2;
        B.members.push_back(make(Real(1), Real(0)));
      }
      break;
    }
    default:
      throw domain_error("free_solution_basis: limit systems are not covered");
  }
  return B;
}

//==========================================================================
// Dirac-limit helpers for the two-fermion channel (test oracles)

// Coefficient matrix of the m1 -> infinity limit of the 4x4 system, with
// lambda2(r) = m2 + E + alpha/r.
template <class Real>
SmallMat<Real> ff_dirac_limit_matrix(Parity parity, double j, Real r, Real lambda2, Real m2,
                                     Real sigma) {
  using std::sqrt;
  const Real cj = sqrt(Real(j * (j + 1)));
  Real E, F, G;
  if (parity == Parity::I) {
    E = cj / r;
    F = lambda2 + m2;
    G = lambda2 - (m2 + sigma * r);
  } else {
    E = -cj / r;
    F = lambda2 - (m2 + sigma * r);
    G = lambda2 + m2;
  }
  SmallMat<Real> A(4);
  A(0, 0) = 0;  A(0, 1) = E;  A(0, 2) = -F; A(0, 3) = 0;
  A(1, 0) = E;  A(1, 1) = 1 / r; A(1, 2) = 0; A(1, 3) = F;
  A(2, 0) = G;  A(2, 1) = 0;  A(2, 2) = 2 / r; A(2, 3) = E;
  A(3, 0) = 0;  A(3, 1) = -G; A(3, 2) = E;  A(3, 3) = 1 / r;
  return A;
}

// Block mixing that decouples the Dirac-limit system into (y1, y4), (y2, y3).
template <class Real>
SmallMat<Real> ff_dirac_mixing(Parity parity, double j) {
  using std::sqrt;
  const Real s0 = sqrt(Real(j / (2 * j + 1)));
  const Real s1 = sqrt(Real((j + 1) / (2 * j + 1)));
  SmallMat<Real> T(4);
  if (parity == Parity::I) {
    // upper-right block s0*sz + s1*sx, lower-left block s1*I - i s0*sy
    T(0, 2) = s0;  T(0, 3) = s1;
    T(1, 2) = s1;  T(1, 3) = -s0;
    T(2, 0) = s1;  T(2, 1) = -s0;
    T(3, 0) = s0;  T(3, 1) = s1;
  } else {
    // upper-right block s0*I + i s1*sy, lower-left block s1*sz + s0*sx
    T(0, 2) = s0;  T(0, 3) = s1;
    T(1, 2) = -s1; T(1, 3) = s0;
    T(2, 0) = s1;  T(2, 1) = s0;
    T(3, 0) = s0;  T(3, 1) = -s1;
  }
  return T;
}

}  // namespace tbwe

#endif
