#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tbwe/radial.hpp"

using namespace tbwe;

namespace {

ParticleSpec scalar(double m) { return {m, Spin::Scalar, 1.0}; }
ParticleSpec fermion(double m, double kappa = 1.0) { return {m, Spin::Fermion, kappa}; }

// Independent transcription of the two-fermion coefficient functions.
struct FFRef {
  double m1, m2, alpha, sigma, j;
  double lam(double r, double l) const { return l + alpha / r; }
  double E(double r, double l, Parity p) const {
    const double cj = std::sqrt(j * (j + 1));
    if (p == Parity::I) return cj * (m1 - m2) / (r * lam(r, l));
    return -cj * (m1 + m2 + sigma * r) / (r * lam(r, l));
  }
  double F(double r, double l, Parity p) const {
    const double lr = lam(r, l);
    const double w = (p == Parity::I) ? (m1 - m2) : (m1 + m2 + sigma * r);
    return lr / 2 - w * w / (2 * lr);
  }
  double G(double r, double l, Parity p) const {
    const double lr = lam(r, l);
    const double w = (p == Parity::I) ? (m1 + m2 + sigma * r) : (m1 - m2);
    return lr / 2 - 2 * j * (j + 1) / (r * r * lr) - w * w / (2 * lr);
  }
};

}  // namespace

TEST_CASE("FF coefficient matrix matches the reference formulas entry by entry") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> U(0.2, 4.0);
  for (Parity p : {Parity::I, Parity::II}) {
    for (int j : {1, 2, 3}) {
      FFRef ref{1.7, 0.9, 0.31, 0.12, double(j)};
      ChannelSpec ch{ChannelKind::FermionFermion, 2 * j, p};
      InteractionSpec in{0.31, 0.12, 0.0};
      auto S = build_system<double>(ch, fermion(1.7), fermion(0.9), in, 1.0);
      for (int t = 0; t < 25; ++t) {
        const double r = U(rng), l = U(rng) + 2.0;
        auto A = eval_A(S, r, l);
        CHECK(A(0, 1) == doctest::Approx(ref.E(r, l, p)).epsilon(1e-14));
        CHECK(A(0, 2) == doctest::Approx(-ref.F(r, l, p)).epsilon(1e-14));
        CHECK(A(1, 0) == doctest::Approx(ref.E(r, l, p)).epsilon(1e-14));
        CHECK(A(1, 1) == doctest::Approx(1 / r).epsilon(1e-15));
        CHECK(A(1, 3) == doctest::Approx(ref.F(r, l, p)).epsilon(1e-14));
        CHECK(A(2, 0) == doctest::Approx(ref.G(r, l, p)).epsilon(1e-14));
        CHECK(A(2, 2) == doctest::Approx(2 / r).epsilon(1e-15));
        CHECK(A(2, 3) == doctest::Approx(ref.E(r, l, p)).epsilon(1e-14));
        CHECK(A(3, 1) == doctest::Approx(-ref.G(r, l, p)).epsilon(1e-14));
        CHECK(A(3, 2) == doctest::Approx(ref.E(r, l, p)).epsilon(1e-14));
        CHECK(A(3, 3) == doctest::Approx(1 / r).epsilon(1e-15));
        CHECK(A(0, 0) == 0.0);
        CHECK(A(0, 3) == 0.0);
        CHECK(A(1, 2) == 0.0);
        CHECK(A(2, 1) == 0.0);
        CHECK(A(3, 0) == 0.0);
      }
    }
  }
}

TEST_CASE("FF parity-I E vanishes for equal masses") {
  ChannelSpec ch{ChannelKind::FermionFermion, 2, Parity::I};
  InteractionSpec in{0.4, 0.2, 0.0};
  auto S = build_system<double>(ch, fermion(1.3), fermion(1.3), in, 1.0);
  for (double r : {0.1, 1.0, 7.0}) {
    auto A = eval_A(S, r, 3.1);
    CHECK(A(0, 1) == 0.0);
    CHECK(A(1, 0) == 0.0);
  }
}

TEST_CASE("FF parity substitution maps I to II pointwise") {
  // replacing M + sigma r -> -mu and mu -> -(M + sigma r) in the parity-I
  // functions yields the parity-II functions
  FFRef ref{2.1, 0.7, 0.25, 0.33, 2.0};
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> U(0.3, 5.0);
  for (int t = 0; t < 40; ++t) {
    const double r = U(rng), l = U(rng) + 2.5;
    const double lr = ref.lam(r, l);
    const double M = ref.m1 + ref.m2 + ref.sigma * r;  // M + sigma r
    const double mu = ref.m1 - ref.m2;
    const double cj = std::sqrt(ref.j * (ref.j + 1));
    // parity-I functions with the substituted arguments
    const double E_sub = cj * (-M) / (r * lr);
    const double F_sub = lr / 2 - M * M / (2 * lr);
    const double G_sub = lr / 2 - 2 * ref.j * (ref.j + 1) / (r * r * lr) - mu * mu / (2 * lr);
    CHECK(ref.E(r, l, Parity::II) == doctest::Approx(E_sub).epsilon(1e-14));
    CHECK(ref.F(r, l, Parity::II) == doctest::Approx(F_sub).epsilon(1e-14));
    CHECK(ref.G(r, l, Parity::II) == doctest::Approx(G_sub).epsilon(1e-14));
  }
}

TEST_CASE("SF coefficients and the m_F -> -m_F parity map") {
  const double mF = 1.9, mS = 0.6, alpha = 0.21;
  InteractionSpec in{alpha, 0.0, 0.0};
  ChannelSpec chI{ChannelKind::ScalarFermion, 3, Parity::I};   // j = 3/2
  ChannelSpec chII{ChannelKind::ScalarFermion, 3, Parity::II};
  auto SI = build_system<double>(chI, fermion(mF), scalar(mS), in, 1.0);
  auto SII = build_system<double>(chII, fermion(mF), scalar(mS), in, 1.0);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(0.2, 6.0);
  const double j = 1.5;
  for (int t = 0; t < 30; ++t) {
    const double r = U(rng), l = U(rng) + 2.0;
    auto A = eval_A(SI, r, l);
    // direct transcription of the Coulomb pair
    const double row0 = -(j - 0.5 + alpha / (2 * (l * r + alpha))) / r;
    const double pot = l / 2 + alpha / (2 * r) + (mF * mF - mS * mS) * r / (2 * (l * r + alpha));
    CHECK(A(0, 0) == doctest::Approx(row0).epsilon(1e-13));
    CHECK(A(0, 1) == doctest::Approx(-(pot + mF)).epsilon(1e-13));
    CHECK(A(1, 0) == doctest::Approx(pot - mF).epsilon(1e-13));
    CHECK(A(1, 1) == doctest::Approx((j + 1.5 - alpha / (2 * (l * r + alpha))) / r).epsilon(1e-13));
    // parity II = parity I with m_F negated
    auto AII = eval_A(SII, r, l);
    CHECK(AII(0, 1) == doctest::Approx(-(pot - mF)).epsilon(1e-13));
    CHECK(AII(1, 0) == doctest::Approx(pot + mF).epsilon(1e-13));
    CHECK(AII(0, 0) == doctest::Approx(A(0, 0)).epsilon(1e-15));
    CHECK(AII(1, 1) == doctest::Approx(A(1, 1)).epsilon(1e-15));
  }
}

TEST_CASE("SS second-order coefficients") {
  const double m1 = 1.8, m2 = 0.8, alpha = 0.17;
  InteractionSpec in{alpha, 0.0, 0.0};
  ChannelSpec ch{ChannelKind::ScalarScalar, 4, Parity::I};  // l = 2
  auto S = build_system<double>(ch, scalar(m1), scalar(m2), in, 1.0);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> U(0.2, 6.0);
  for (int t = 0; t < 30; ++t) {
    const double r = U(rng), l = U(rng) + 2.0;
    const double lr = l + alpha / r;
    const double P = 2 / r - alpha / (2 * r * r * lr);
    const double dm = m1 * m1 - m2 * m2;
    const double Q = lr * lr / 4 + dm * dm / (4 * lr * lr) - (m1 * m1 + m2 * m2) / 2 -
                     2.0 * 3.0 / (r * r);
    auto A = eval_A(S, r, l);
    CHECK(A(0, 1) == doctest::Approx(-1 / r).epsilon(1e-15));
    CHECK(A(1, 0) == doctest::Approx(r * Q).epsilon(1e-13));
    CHECK(A(1, 1) == doctest::Approx(P - 1 / r).epsilon(1e-13));
  }
}

TEST_CASE("origin series agrees with pointwise evaluation") {
  InteractionSpec in{0.3, 0.05, 0.0};
  ChannelSpec ch{ChannelKind::FermionFermion, 2, Parity::II};
  auto S = build_system<double>(ch, fermion(1.4), fermion(1.0), in, 1.0);
  const double lambda = 2.9;
  const auto As = eval_A_series(S, lambda, 24);
  const double rad = series_radius(S, lambda);
  for (double frac : {0.02, 0.1, 0.3}) {
    const double r = frac * rad;
    auto A = eval_A(S, r, lambda);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        double acc = 0;
        for (int q = (int)As.size() - 1; q >= 1; --q) acc = acc * r + As[q](i, k);
        acc = acc * r;
        acc += As[0](i, k) / r;
        const double scale = std::max(std::abs(A(i, k)), 1.0);
        CHECK(std::abs(acc - A(i, k)) / scale < 1e-10);
      }
  }
}

TEST_CASE("free solutions satisfy their systems (residual scan)") {
  // r k in [0.1, 50]; residual of y' + A y normalized by local solution scale
  InteractionSpec free_in{0.0, 0.0, 0.0};
  auto residual_max = [&](const RadialSystem<double>& S, double lambda) {
    auto B = free_solution_basis(S, lambda);
    double worst = 0;
    for (const auto& member : B.members) {
      for (int t = 0; t <= 200; ++t) {
        const double rk = 0.1 + (50.0 - 0.1) * t / 200.0;
        const double r = rk / B.k;
        SmallVec<double> y, yp;
        member(r, y, yp);
        auto A = eval_A(S, r, lambda);
        double scale = 1e-300;
        for (int i = 0; i < S.dim; ++i) scale = std::max(scale, std::abs(y[i]));
        for (int i = 0; i < S.dim; ++i) {
          double acc = yp[i];
          for (int k = 0; k < S.dim; ++k) acc += A(i, k) * y[k];
          // weight by the row scale so the figure is dimensionless
          double rowscale = std::abs(yp[i]);
          for (int k = 0; k < S.dim; ++k)
            rowscale = std::max(rowscale, std::abs(A(i, k)) * scale);
          worst = std::max(worst, std::abs(acc) / std::max(rowscale, scale));
        }
      }
    }
    return worst;
  };

  // SS, l = 0 and 2
  for (int l : {0, 2}) {
    ChannelSpec ch{ChannelKind::ScalarScalar, 2 * l, Parity::I};
    auto S = build_system<double>(ch, scalar(1.2), scalar(0.8), free_in, 1.0);
    CHECK(residual_max(S, 2.6) < 1e-9);
  }
  // SF, j = 1/2 and 3/2, both parities
  for (int tj : {1, 3}) {
    for (Parity p : {Parity::I, Parity::II}) {
      ChannelSpec ch{ChannelKind::ScalarFermion, tj, p};
      auto S = build_system<double>(ch, fermion(1.1), scalar(0.7), free_in, 1.0);
      CHECK(residual_max(S, 2.4) < 1e-9);
    }
  }
  // FF, j = 0, 1, 2, both parities
  for (int j : {0, 1, 2}) {
    for (Parity p : {Parity::I, Parity::II}) {
      ChannelSpec ch{ChannelKind::FermionFermion, 2 * j, p};
      auto S = build_system<double>(ch, fermion(1.5), fermion(0.9), free_in, 1.0);
      CHECK(residual_max(S, 3.2) < 1e-9);
    }
  }
}

TEST_CASE("SS free case: j0(kr) solves the alpha = 0 equation at matched lambda") {
  InteractionSpec in{0.0, 0.0, 0.0};
  ChannelSpec ch{ChannelKind::ScalarScalar, 0, Parity::I};
  auto S = build_system<double>(ch, scalar(1.0), scalar(1.0), in, 1.0);
  const double q = 0.7;
  const double lambda = free_total_energy(q, 1.0, 1.0);
  auto B = free_solution_basis(S, lambda);
  CHECK(B.k == doctest::Approx(q).epsilon(1e-13));
  // k for equal masses: sqrt(lambda^2 - 4 m^2) / 2
  CHECK(B.k == doctest::Approx(std::sqrt(lambda * lambda - 4.0) / 2).epsilon(1e-13));
}

TEST_CASE("free basis requires a free system and lambda above threshold") {
  InteractionSpec in{0.1, 0.0, 0.0};
  ChannelSpec ch{ChannelKind::ScalarScalar, 0, Parity::I};
  auto S = build_system<double>(ch, scalar(1.0), scalar(1.0), in, 1.0);
  CHECK_THROWS_AS(free_solution_basis(S, 2.5), domain_error);
  InteractionSpec zero{0.0, 0.0, 0.0};
  auto Sf = build_system<double>(ch, scalar(1.0), scalar(1.0), zero, 1.0);
  CHECK_THROWS_AS(free_solution_basis(Sf, 1.9), domain_error);
}

TEST_CASE("build_system validation") {
  InteractionSpec in{0.1, 0.0, 0.0};
  ChannelSpec ss{ChannelKind::ScalarScalar, 0, Parity::I};
  CHECK_THROWS_AS(build_system<double>(ss, fermion(1.0), scalar(1.0), in, 1.0), config_error);
  InteractionSpec cornell{0.1, 0.5, 0.0};
  CHECK_THROWS_AS(build_system<double>(ss, scalar(1.0), scalar(1.0), cornell, 1.0), config_error);
  ChannelSpec sf{ChannelKind::ScalarFermion, 1, Parity::I};
  CHECK_THROWS_AS(build_system<double>(sf, scalar(1.0), scalar(1.0), in, 1.0), config_error);
  CHECK_THROWS_AS(build_system<double>(sf, fermion(1.0), scalar(1.0), cornell, 1.0), config_error);
  // FF accepts the Cornell coupling
  ChannelSpec ff{ChannelKind::FermionFermion, 2, Parity::I};
  CHECK_NOTHROW(build_system<double>(ff, fermion(1.0), fermion(1.0), cornell, 1.0));
}

TEST_CASE("FF j=0 reduces to the (y1, y3) pair") {
  InteractionSpec in{0.3, 0.1, 0.0};
  ChannelSpec ch{ChannelKind::FermionFermion, 0, Parity::I};
  auto S = build_system<double>(ch, fermion(1.2), fermion(1.0), in, 1.0);
  CHECK(S.dim == 2);
  const double r = 0.9, l = 2.3;
  auto A2 = eval_A(S, r, l);
  ChannelSpec ch1{ChannelKind::FermionFermion, 2, Parity::I};
  auto S4 = build_system<double>(ch1, fermion(1.2), fermion(1.0), in, 1.0);
  S4.j = 0;  // widen the j=0 matrix for comparison
  auto A4 = eval_A(S4, r, l);
  CHECK(A2(0, 0) == doctest::Approx(A4(0, 0)));
  CHECK(A2(0, 1) == doctest::Approx(A4(0, 2)));
  CHECK(A2(1, 0) == doctest::Approx(A4(2, 0)));
  CHECK(A2(1, 1) == doctest::Approx(A4(2, 2)));
}

TEST_CASE("FF Dirac-limit mixing decouples (y1,y4) from (y2,y3)") {
  // T A T^-1 in the infinite-m1 limit splits into the two claimed pairs
  for (Parity p : {Parity::I, Parity::II}) {
    for (double j : {1.0, 2.0}) {
      std::mt19937 rng(31);
      std::uniform_real_distribution<double> U(0.4, 4.0);
      for (int t = 0; t < 10; ++t) {
        const double r = U(rng);
        const double lambda2 = 1.0 + 0.1 / r;  // m2 + E + alpha/r with m2 = 1
        auto A = ff_dirac_limit_matrix(p, j, r, lambda2, 1.0, 0.2);
        auto T = ff_dirac_mixing<double>(p, j);
        // blocks are orthogonal: T^-1 = T^T
        SmallMat<double> Tt(4);
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) Tt(a, b) = T(b, a);
        auto M = (T * A) * Tt;
        // coupling between {0, 3} and {1, 2} must vanish
        double off = 0;
        for (int a : {0, 3})
          for (int b : {1, 2}) off = std::max({off, std::abs(M(a, b)), std::abs(M(b, a))});
        CHECK(off < 1e-12);
      }
    }
  }
}

TEST_CASE("limit_system selection rules") {
  ChannelSpec ff{ChannelKind::FermionFermion, 2, Parity::I};
  CHECK_THROWS_AS(limit_system<double>(LimitKind::KleinGordonOfLighter, ff, 2.0, 1.0, 0.1, 0.0),
                  config_error);
  ChannelSpec ss{ChannelKind::ScalarScalar, 0, Parity::I};
  CHECK_THROWS_AS(limit_system<double>(LimitKind::DiracOfLighter, ss, 2.0, 1.0, 0.1, 0.0),
                  config_error);
  auto d = limit_system<double>(LimitKind::DiracOfLighter, ff, 2.0, 1.0, 0.1, 0.0);
  CHECK(d.kappa == -2.0);  // -(j+1) for j = 1
  auto d2 = limit_system<double>(LimitKind::DiracOfLighter, ff, 2.0, 1.0, 0.1, 0.0, 1);
  CHECK(d2.kappa == 1.0);  // j
  ChannelSpec sf{ChannelKind::ScalarFermion, 1, Parity::II};
  auto d3 = limit_system<double>(LimitKind::DiracOfLighter, sf, 2.0, 1.0, 0.1, 0.0);
  CHECK(d3.kappa == 1.0);  // +(j + 1/2)
  auto sc = limit_system<double>(LimitKind::Schroedinger, ff, 2.0, 1.0, 0.1, 0.0);
  CHECK(sc.ell == 1);
  ChannelSpec ff2{ChannelKind::FermionFermion, 2, Parity::II};
  CHECK(limit_system<double>(LimitKind::Schroedinger, ff2, 2.0, 1.0, 0.1, 0.0).ell == 0);
  CHECK(limit_system<double>(LimitKind::Schroedinger, ff2, 2.0, 1.0, 0.1, 0.0, 1).ell == 2);
}
