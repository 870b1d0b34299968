// Angular sector: Clebsch-Gordan coefficients, spherical harmonics, the
// spherical spinors (spin-1/2 x harmonics) and singlet/triplet vectors
// (spin-1 x harmonics), spherical Bessel functions, and the quadrature grid
// used for angular integrals.
#ifndef TBWE_ANGULAR_HPP
#define TBWE_ANGULAR_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "tbwe/model.hpp"

namespace tbwe {

// Condon-Shortley convention <j1 m1 j2 m2 | J M>; arguments are half-integers
// passed as doubles. Returns 0 when a selection rule fails; throws
// domain_error for non-half-integer input.
double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M);

// Y_l^m(theta, phi), Condon-Shortley phase.
std::complex<double> sph_harmonic(int l, int m, double theta, double phi);

enum class TripletKind { B, C, D };

using AngularVec = std::vector<std::complex<double>>;

// 2-component spherical spinor Omega_{j,l,m}; l must be j +- 1/2.
// two_j and two_m are doubled half-integers.
AngularVec spherical_spinor(int two_j, int ell, int two_m, double theta, double phi);

// 3-component spherical triplet Omega^(b|c|d)_{j,m}.
AngularVec spherical_triplet(TripletKind kind, int j, int m, double theta, double phi);

// Tensor-product quadrature grid: Gauss-Legendre in cos(theta), uniform
// (trapezoid) in phi. Exact for the polynomial orders appearing up to
// j ~ n_theta / 3.
struct AngularGrid {
  std::vector<double> theta, wtheta;  // Gauss-Legendre nodes mapped to theta
  std::vector<double> phi;
  double wphi = 0;
  explicit AngularGrid(int n_theta = 64, int n_phi = 128);

  // integrate f(theta, phi) over the unit sphere
  template <class F>
  auto integrate(F&& f) const -> decltype(f(0.0, 0.0)) {
    decltype(f(0.0, 0.0)) acc{};
    for (std::size_t i = 0; i < theta.size(); ++i) {
      decltype(f(0.0, 0.0)) row{};
      for (std::size_t k = 0; k < phi.size(); ++k) row += f(theta[i], phi[k]);
      acc += wtheta[i] * wphi * row;
    }
    return acc;
  }
};

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Spherical Bessel j_l(x): upward recurrence for x > l, Miller downward
// recurrence with normalization otherwise.
template <class Real>
Real sph_bessel_j(int ell, Real x) {
  using std::cos;
  using std::sin;
  if (ell < 0) throw domain_error("sph_bessel_j: negative order");
  const Real eps = real_eps<Real>();
  if (x < 0) throw domain_error("sph_bessel_j: negative argument");
  // near the origin the power series is exact enough and avoids 0/0
  if (x * x < 100 * eps) {
    if (ell == 0) return Real(1) - x * x / 6;
    // x^l / (2l+1)!!
    Real v = Real(1);
    for (int k = 1; k <= ell; ++k) v *= x / Real(2 * k + 1);
    return v * (Real(1) - x * x / Real(2 * (2 * ell + 3)));
  }
  const Real j0 = sin(x) / x;
  if (ell == 0) return j0;
  const Real j1 = sin(x) / (x * x) - cos(x) / x;
  if (ell == 1) return j1;
  if (x > Real(ell)) {
    Real jm = j0, jc = j1;
    for (int l = 1; l < ell; ++l) {
      const Real jn = Real(2 * l + 1) / x * jc - jm;
      jm = jc;
      jc = jn;
    }
    return jc;
  }
  // Miller's algorithm: recur down from well above ell, normalize with j0
  int start = ell + 16;
  {
    using std::ilogb;
    // enough headroom that the contaminating solution has decayed
    const int digits = std::numeric_limits<Real>::digits;
    start = ell + 16 + digits / 2;
  }
  Real jp = Real(0), jc = eps * eps * eps;
  Real target = Real(0);
  for (int l = start; l >= 0; --l) {
    const Real jm = Real(2 * l + 3) / x * jc - jp;
    jp = jc;
    jc = jm;
    if (l == ell) target = jc;
    // rescale to avoid overflow of the growing recurrence
    using std::abs;
    if (abs(jc) > Real(1e30)) {
      jc *= Real(1e-30);
      jp *= Real(1e-30);
      target *= Real(1e-30);
    }
  }
  return target * j0 / jc;
}

// d/dx j_l(x) from the standard identity.
template <class Real>
Real sph_bessel_j_deriv(int ell, Real x) {
  if (ell == 0) return -sph_bessel_j(1, x);
  return sph_bessel_j(ell - 1, x) - Real(ell + 1) / x * sph_bessel_j(ell, x);
}

}  // namespace tbwe

#endif
