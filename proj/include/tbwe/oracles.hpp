// Closed-form reference spectra (Schroedinger, Klein-Gordon, Dirac, free
// system) and the confluent-Heun parameter map of the two-scalar equation.
// Templated so the same formulas evaluate at double or quad precision; the
// near-cancellation -1 + (1+x)^(-1/2) is written with log1p/expm1 so no
// digits are lost at any precision.
#ifndef TBWE_ORACLES_HPP
#define TBWE_ORACLES_HPP

#include <array>
#include <cmath>

#include "tbwe/model.hpp"

namespace tbwe {

template <class Real>
Real schrodinger_level(int n, Real mR, Real alpha) {
  if (n < 1) throw domain_error("schrodinger_level: n >= 1");
  return -mR * alpha * alpha / (2 * Real(n) * Real(n));
}

// Binding energy (rest mass excluded) of the Coulomb Klein-Gordon problem.
template <class Real>
Real klein_gordon_level(int n, int ell, Real m, Real alpha) {
  using std::sqrt;
  if (n < 1 || ell < 0 || ell > n - 1) throw domain_error("klein_gordon_level: bad (n, ell)");
  const Real lh = Real(ell) + Real(1) / 2;
  const Real disc = lh * lh - alpha * alpha;
  if (!(disc > 0)) throw domain_error("klein_gordon_level: alpha >= ell + 1/2");
  const Real denom = Real(n) - Real(ell) - Real(1) / 2 + sqrt(disc);
  const Real x = alpha * alpha / (denom * denom);
  return m * r_expm1(Real(-0.5) * r_log1p(x));
}

// Dirac-Sommerfeld binding energy; two_j is the doubled half-integer j.
template <class Real>
Real dirac_level(int n, int two_j, Real m, Real alpha) {
  using std::sqrt;
  const Real jh = Real(two_j + 1) / 2;  // j + 1/2
  if (n < 1 || two_j < 1) throw domain_error("dirac_level: bad (n, j)");
  const Real disc = jh * jh - alpha * alpha;
  if (!(disc > 0)) throw domain_error("dirac_level: alpha >= j + 1/2");
  const Real denom = Real(n) - jh + sqrt(disc);
  const Real x = alpha * alpha / (denom * denom);
  return m * r_expm1(Real(-0.5) * r_log1p(x));
}

// The four free-system branches +-sqrt(q^2+m1^2) +- sqrt(q^2+m2^2),
// ordered (++, --, +-, -+); at q = 0 this is (M, -M, mu, -mu).
template <class Real>
std::array<Real, 4> free_spectrum(Real q, Real m1, Real m2) {
  if (q < 0) throw domain_error("free_spectrum: q >= 0");
  using std::sqrt;
  const Real e1 = sqrt(q * q + m1 * m1), e2 = sqrt(q * q + m2 * m2);
  return {e1 + e2, -e1 - e2, e1 - e2, e2 - e1};
}

template <class Real>
struct HeunParams {
  Real eta, beta, gamma, delta, zeta;
};

// Parameter map of the confluent-Heun form of the two-scalar Coulomb
// equation. Real only inside the bound window.
template <class Real>
HeunParams<Real> heun_parameters(Real lambda, Real m1, Real m2, Real alpha, int ell) {
  using std::sqrt;
  const Real M = m1 + m2, mu = m1 - m2;
  const Real l2 = lambda * lambda;
  const Real ringA = (M * M - l2) * (l2 - mu * mu);
  if (!(ringA >= 0)) throw domain_error("heun_parameters: lambda outside the bound window");
  HeunParams<Real> p;
  const Real j = Real(ell);
  p.eta = alpha / l2 * sqrt(ringA);
  p.beta = sqrt(Real(0.25) + 4 * j * (j + 1) - alpha * alpha);
  const Real dm2 = (m1 * m1 - m2 * m2);
  p.gamma = sqrt(l2 * l2 - 4 * alpha * alpha * dm2 * dm2) / (2 * l2);
  p.delta = -alpha * alpha * (l2 * l2 - dm2 * dm2) / (2 * l2 * l2);
  p.zeta = Real(1) / 8 + alpha * alpha / 2;
  return p;
}

}  // namespace tbwe

#endif
