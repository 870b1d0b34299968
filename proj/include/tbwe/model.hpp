// Domain model: particles, couplings, channels, and the reduced-phase-space
// kinematics of the free two-body system.
#ifndef TBWE_MODEL_HPP
#define TBWE_MODEL_HPP

#include <cmath>
#include <stdexcept>
#include <string>

#include "tbwe/real.hpp"

namespace tbwe {

struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct accuracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Spin { Scalar, Fermion };

// One constituent. Masses are stored in MeV; solver code rescales to the
// configured reference mass on entry.
struct ParticleSpec {
  double mass = 0;             // MeV
  Spin spin = Spin::Fermion;
  double kappa = 1.0;          // anomalous-moment factor, ignored for scalars

  void validate() const {
    if (!(mass > 0)) throw domain_error("particle mass must be positive");
    if (!std::isfinite(kappa)) throw domain_error("kappa must be finite");
  }
};

struct InteractionSpec {
  double alpha = 0;  // vector coupling, attractive convention lambda(r) = lambda + alpha/r
  double sigma = 0;  // string tension (MeV^2), coupled to the mass term
  double g = 0;      // Breit coupling; perturbative only, never enters the shooting solve

  void validate() const {
    if (alpha < 0) throw domain_error("alpha must be >= 0");
    if (sigma < 0) throw domain_error("sigma must be >= 0");
    if (!std::isfinite(g)) throw domain_error("g must be finite");
  }
};

enum class ChannelKind { ScalarScalar, ScalarFermion, FermionFermion };
enum class Parity { I, II };

// One radial boundary-value problem: (system kind, angular momentum, parity).
// two_j stores 2*j: integer j for SS (orbital l) and FF, half-integer for SF.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::FermionFermion;
  int two_j = 0;
  Parity parity = Parity::I;

  double j() const { return 0.5 * two_j; }

  void validate() const {
    if (two_j < 0) throw domain_error("angular momentum must be >= 0");
    switch (kind) {
      case ChannelKind::ScalarScalar:
        if (two_j % 2) throw domain_error("SS channel needs integer l");
        break;
      case ChannelKind::ScalarFermion:
        if (two_j % 2 == 0) throw domain_error("SF channel needs half-integer j");
        break;
      case ChannelKind::FermionFermion:
        if (two_j % 2) throw domain_error("FF channel needs integer j");
        break;
    }
  }
};

// Classical/free kinematic data in the P = 0 frame.
struct KinematicState {
  double lambda = 0;  // invariant mass sqrt(P^2)
  double L = 0;       // conserved angular momentum magnitude
  double q0 = 0;      // relative energy
};

template <class Real>
Real reduced_mass(Real m1, Real m2) {
  if (!(m1 > 0) || !(m2 > 0)) throw domain_error("reduced_mass: masses must be positive");
  return m1 * m2 / (m1 + m2);
}

template <class Real>
Real free_total_energy(Real q, Real m1, Real m2) {
  if (q < 0) throw domain_error("free_total_energy: q must be >= 0");
  using std::sqrt;
  return sqrt(q * q + m1 * m1) + sqrt(q * q + m2 * m2);
}

template <class Real>
Real relative_energy_q0(Real lambda, Real m1, Real m2) {
  if (!(lambda > 0)) throw domain_error("relative_energy_q0: lambda must be positive");
  return (m1 * m1 - m2 * m2) / (2 * lambda);
}

// Relative momentum of the free pair at invariant mass lambda (the wavenumber
// of the spherical-Bessel free solutions). Real only above threshold.
template <class Real>
Real free_wavenumber(Real lambda, Real m1, Real m2) {
  const Real M = m1 + m2, mu = m1 - m2;
  const Real t = (lambda * lambda - M * M) * (lambda * lambda - mu * mu);
  if (!(t > 0)) throw domain_error("free_wavenumber: lambda below threshold");
  using std::sqrt;
  return sqrt(t) / (2 * lambda);
}

// Decay constant of bound solutions at large r (Coulomb case), analytic
// continuation of the free wavenumber below threshold.
template <class Real>
Real bound_decay_constant(Real lambda, Real m1, Real m2) {
  const Real M = m1 + m2, mu = m1 - m2;
  const Real a = M * M - lambda * lambda;
  const Real b = lambda * lambda - mu * mu;
  if (!(a > 0) || !(b > 0)) throw domain_error("bound_decay_constant: lambda outside bound window");
  using std::sqrt;
  return sqrt(a) * sqrt(b) / (2 * lambda);
}

}  // namespace tbwe

#endif
