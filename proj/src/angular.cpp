#include "tbwe/angular.hpp"

#include <array>
#include <cmath>

namespace tbwe {

namespace {

// factorials as long double; n <= 350 stays well inside the exponent range
constexpr int kMaxFact = 350;
const long double* fact_table() {
  static const auto table = [] {
    static std::array<long double, kMaxFact + 1> t;
    t[0] = 1.0L;
    for (int i = 1; i <= kMaxFact; ++i) t[i] = t[i - 1] * i;
    return t.data();
  }();
  return table;
}

long double fact(int n) { return fact_table()[n]; }

// doubled half-integer from a double, throwing unless it is one
int doubled(double x, const char* what) {
  const double t = 2 * x;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9) throw domain_error(std::string("not a half-integer: ") + what);
  return static_cast<int>(r);
}

}  // namespace

double clebsch_gordan(double j1d, double m1d, double j2d, double m2d, double Jd, double Md) {
  const int tj1 = doubled(j1d, "j1"), tm1 = doubled(m1d, "m1");
  const int tj2 = doubled(j2d, "j2"), tm2 = doubled(m2d, "m2");
  const int tJ = doubled(Jd, "J"), tM = doubled(Md, "M");
  if (tj1 < 0 || tj2 < 0 || tJ < 0) throw domain_error("clebsch_gordan: negative j");
  // projections must match their j in half-integerness
  if ((tj1 + tm1) % 2 || (tj2 + tm2) % 2 || (tJ + tM) % 2) return 0.0;
  // selection rules
  if (tm1 + tm2 != tM) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) return 0.0;
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tJ) % 2) return 0.0;

  const int a = (tj1 + tj2 - tJ) / 2;
  const int b = (tj1 - tj2 + tJ) / 2;
  const int c = (-tj1 + tj2 + tJ) / 2;
  const int d = (tj1 + tj2 + tJ) / 2 + 1;

  const long double delta =
      fact(a) * fact(b) * fact(c) / fact(d);
  const long double pref = (tJ + 1) * delta *
      fact((tj1 + tm1) / 2) * fact((tj1 - tm1) / 2) *
      fact((tj2 + tm2) / 2) * fact((tj2 - tm2) / 2) *
      fact((tJ + tM) / 2) * fact((tJ - tM) / 2);

  const int k1 = (tj1 + tj2 - tJ) / 2;      // j1 + j2 - J
  const int k2 = (tj1 - tm1) / 2;           // j1 - m1
  const int k3 = (tj2 + tm2) / 2;           // j2 + m2
  const int k4 = (tJ - tj2 + tm1) / 2;      // J - j2 + m1 (may be negative)
  const int k5 = (tJ - tj1 - tm2) / 2;      // J - j1 - m2 (may be negative)

  const int kmin = std::max(0, std::max(-k4, -k5));
  const int kmax = std::min(k1, std::min(k2, k3));
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double term = fact(k) * fact(k1 - k) * fact(k2 - k) * fact(k3 - k) *
                             fact(k4 + k) * fact(k5 + k);
    sum += (k % 2 ? -1.0L : 1.0L) / term;
  }
  return static_cast<double>(std::sqrt(pref) * sum);
}

std::complex<double> sph_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw domain_error("sph_harmonic: bad (l, m)");
  const int am = std::abs(m);
  const double leg = std::sph_legendre(l, am, theta);  // includes Condon-Shortley
  const std::complex<double> ph(std::cos(am * phi), std::sin(am * phi));
  std::complex<double> y = leg * ph;
  if (m < 0) y = (am % 2 ? -1.0 : 1.0) * std::conj(y);
  return y;
}

AngularVec spherical_spinor(int two_j, int ell, int two_m, double theta, double phi) {
  if (two_j < 1 || two_j % 2 == 0) throw domain_error("spherical_spinor: j must be half-integer");
  if (std::abs(two_m) > two_j || (two_m + two_j) % 2) throw domain_error("spherical_spinor: bad m");
  const bool upper = 2 * ell == two_j - 1;  // l = j - 1/2
  if (!upper && 2 * ell != two_j + 1) throw domain_error("spherical_spinor: l must be j +- 1/2");
  const double j = 0.5 * two_j, m = 0.5 * two_m;
  AngularVec out(2, {0.0, 0.0});
  double w1, w2;
  if (upper) {
    // Omega_{l+1/2, l, m} with j = l + 1/2
    w1 = std::sqrt((j + m) / (2 * j));
    w2 = std::sqrt((j - m) / (2 * j));
  } else {
    // Omega_{l-1/2, l, m} with j = l - 1/2
    w1 = -std::sqrt((j - m + 1) / (2 * j + 2));
    w2 = std::sqrt((j + m + 1) / (2 * j + 2));
  }
  const int mu1 = (two_m - 1) / 2, mu2 = (two_m + 1) / 2;
  if (std::abs(mu1) <= ell) out[0] = w1 * sph_harmonic(ell, mu1, theta, phi);
  if (std::abs(mu2) <= ell) out[1] = w2 * sph_harmonic(ell, mu2, theta, phi);
  return out;
}

AngularVec spherical_triplet(TripletKind kind, int j, int m, double theta, double phi) {
  if (j < 0 || std::abs(m) > j) throw domain_error("spherical_triplet: bad (j, m)");
  int l = j;
  if (kind == TripletKind::C) {
    if (j < 1) throw domain_error("spherical_triplet: C kind needs j >= 1");
    l = j - 1;
  } else if (kind == TripletKind::D) {
    l = j + 1;
  }
  AngularVec out(3, {0.0, 0.0});
  const int ms[3] = {+1, 0, -1};  // spin projection attached to each slot
  for (int k = 0; k < 3; ++k) {
    const int ml = m - ms[k];
    if (std::abs(ml) > l) continue;
    const double cg = clebsch_gordan(l, ml, 1, ms[k], j, m);
    if (cg != 0.0) out[k] = cg * sph_harmonic(l, ml, theta, phi);
  }
  return out;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton from the Chebyshev-like initial guess
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * k + 1) * z * p1 - k * p2) / (k + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

AngularGrid::AngularGrid(int n_theta, int n_phi) {
  std::vector<double> xs, ws;
  gauss_legendre(n_theta, xs, ws);
  theta.resize(n_theta);
  wtheta.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    theta[i] = std::acos(xs[i]);
    wtheta[i] = ws[i];
  }
  phi.resize(n_phi);
  for (int k = 0; k < n_phi; ++k) phi[k] = 2.0 * M_PI * k / n_phi;
  wphi = 2.0 * M_PI / n_phi;
}

}  // namespace tbwe
