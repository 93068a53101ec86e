#include "reinhardt/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "reinhardt/errors.hpp"
#include "reinhardt/expression.hpp"

namespace reinhardt {
namespace {

constexpr double kPi = std::numbers::pi;

double example1_g(ModulusPoint p) {
  const double s = std::log(p.m1 * p.m2);
  const double sd = std::sin(std::log(p.m1 / p.m2));
  return std::max(sd - s, s - sd - 0.5);
}

struct Piece {
  double lo, hi;
};
constexpr std::array<Piece, 3> kCover{{{-0.25, 0.5}, {-1.0, -0.125}, {0.25, 1.5}}};
constexpr double kAnnulusLo = -1.0;
constexpr double kAnnulusHi = 1.5;

bool intervals_cover(std::vector<Piece> parts, double lo, double hi) {
  std::sort(parts.begin(), parts.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  if (parts.empty() || parts.front().lo > lo) return false;
  double reach = parts.front().hi;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].lo >= reach) break;
    reach = std::max(reach, parts[i].hi);
  }
  return reach >= hi;
}

double mod_sq(Complex z) { return std::norm(z); }

void require_finite(const C3Point& z) {
  for (Complex c : {z.z1, z.z2, z.z3})
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InputError("point must be finite");
}

}  // namespace

ReinhardtDomain example1_domain() { return ReinhardtDomain::custom(example1_g, {false, false}, kExample1Expression); }

MonomialMap example1_generator() { return MonomialMap::scaling(kPi, -kPi); }

FibrationReport example1_fibration_check(int n, std::uint64_t seed) {
  if (n < 1) throw InputError("fibration check needs n >= 1");
  const ReinhardtDomain d = example1_domain();
  std::mt19937_64 rng(seed);
  const double window = 4.0 * kPi;
  std::uniform_real_distribution<double> ud(-window, window);
  std::uniform_real_distribution<double> us(1e-9, 1.0 - 1e-9);

  struct Sample {
    double s, d;
  };
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(n));
  FibrationReport rep;
  rep.image_in_annulus = true;
  rep.image_lo = kInfinity;
  rep.image_hi = -kInfinity;
  while (samples.size() < static_cast<std::size_t>(n)) {
    const double dd = ud(rng);
    const double ss = std::sin(dd) + 0.5 * us(rng);
    const ModulusPoint p{std::exp(0.5 * (ss + dd)), std::exp(0.5 * (ss - dd))};
    if (!contains(d, p)) continue;  // rounding at the walls
    const double img = std::log(p.m1 * p.m2);
    rep.image_lo = std::min(rep.image_lo, img);
    rep.image_hi = std::max(rep.image_hi, img);
    if (!(img > kAnnulusLo && img < kAnnulusHi)) rep.image_in_annulus = false;
    samples.push_back({img, std::log(p.m1 / p.m2)});
  }

  rep.pieces_cover_image = intervals_cover({kCover.begin(), kCover.end()}, kAnnulusLo, kAnnulusHi);

  // For a piece (lo, hi) the preimage is {lo < s < hi, sin d < s < sin d + 1/2},
  // whose d-projection is {lo - 1/2 < sin d < hi}. Label its components on a
  // lattice over the sampling window.
  constexpr int kGrid = 1 << 17;
  const double step = 2.0 * window / kGrid;
  for (std::size_t k = 0; k < kCover.size(); ++k) {
    CoverPieceReport& pr = rep.pieces[k];
    pr.lo = kCover[k].lo;
    pr.hi = kCover[k].hi;
    pr.s_extent = pr.hi - pr.lo;
    auto allowed = [&](double dd) {
      const double sd = std::sin(dd);
      return pr.lo - 0.5 < sd && sd < pr.hi;
    };
    std::vector<std::pair<double, double>> runs;  // [start, end] of interior runs
    double widest_any = 0.0;
    int start = -1;
    for (int i = 0; i <= kGrid; ++i) {
      const bool in = i < kGrid + 1 && allowed(-window + i * step);
      if (in && start < 0) start = i;
      if ((!in || i == kGrid) && start >= 0) {
        const int last = in ? i : i - 1;
        const double width = (last - start) * step;
        widest_any = std::max(widest_any, width);
        if (start > 0 && last < kGrid) runs.emplace_back(-window + start * step, -window + last * step);
        start = -1;
      }
    }
    for (const auto& [a, b] : runs) pr.max_d_width = std::max(pr.max_d_width, b - a);
    pr.components = static_cast<int>(std::lround(static_cast<double>(runs.size()) / 4.0));
    pr.bounded = widest_any < 2.0 * kPi && !runs.empty();

    for (const Sample& smp : samples) {
      if (!(smp.s > pr.lo && smp.s < pr.hi)) continue;
      ++pr.samples;
      const bool inside = std::any_of(runs.begin(), runs.end(), [&](const auto& r) {
        for (double shift : {-2.0 * kPi, 0.0, 2.0 * kPi}) {
          const double dd = smp.d + shift;
          if (dd >= r.first - step && dd <= r.second + step) return true;
        }
        return false;
      });
      if (!inside) ++pr.unassigned;
    }
    if (pr.unassigned > 0) pr.bounded = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------

Example2Profile Example2Profile::from_expressions(const std::string& rho, const std::string& d1,
                                                  const std::string& d2, double c) {
  const std::vector<std::string> vars{"x1", "x2"};
  Expression er = Expression::parse(rho, vars);
  Expression e1 = Expression::parse(d1, vars);
  Expression e2 = Expression::parse(d2, vars);
  if (!(c > 0.0) || !std::isfinite(c)) throw InputError("profile lower bound c must be positive");
  Example2Profile p;
  p.name = rho;
  p.rho = [er](double a, double b) { return er(a, b); };
  p.rho_x1 = [e1](double a, double b) { return e1(a, b); };
  p.rho_x2 = [e2](double a, double b) { return e2(a, b); };
  p.c = c;
  return p;
}

std::vector<Example2Profile> shipped_profiles() {
  std::vector<Example2Profile> out;
  out.push_back({"one", [](double, double) { return 1.0; }, [](double, double) { return 0.0; },
                 [](double, double) { return 0.0; }, 0.5});
  out.push_back({"linear", [](double a, double b) { return 1.0 + a + b; }, [](double, double) { return 1.0; },
                 [](double, double) { return 1.0; }, 0.5});
  out.push_back({"quadratic", [](double a, double b) { return 1.0 + a * a + b * b; },
                 [](double a, double) { return 2.0 * a; }, [](double, double b) { return 2.0 * b; }, 0.5});
  return out;
}

Example2Profile profile_by_name(const std::string& name) {
  for (auto& p : shipped_profiles())
    if (p.name == name) return p;
  throw InputError("unknown profile '" + name + "' (expected one, linear, quadratic)");
}

void validate_profile(const Example2Profile& prof, double extent, int steps) {
  if (!prof.rho || !prof.rho_x1 || !prof.rho_x2) throw InputError("profile is missing a function");
  if (!(prof.c > 0.0)) throw InputError("profile lower bound c must be positive");
  if (steps < 2 || !(extent > 0.0)) throw InputError("bad profile validation lattice");
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      const double a = extent * i / (steps - 1);
      const double b = extent * j / (steps - 1);
      if (!(prof.rho(a, b) > prof.c)) throw InputError("profile fails rho > c at some sampled point");
      if (!(prof.rho_x1(a, b) >= 0.0) || !(prof.rho_x2(a, b) >= 0.0))
        throw InputError("profile has a negative partial derivative at some sampled point");
    }
  }
}

double example2_phi(const C3Point& z, const Example2Profile& prof) {
  const double t = mod_sq(z.z1), a2 = mod_sq(z.z2), a3 = mod_sq(z.z3);
  const double w = 1.0 - t;
  return t + w * w * a2 * prof.rho(a2 * w, a3 * w) + w * w * a3 - 1.0;
}

std::array<Complex, 3> example2_gradient(const C3Point& z, const Example2Profile& prof) {
  const double t = mod_sq(z.z1), a2 = mod_sq(z.z2), a3 = mod_sq(z.z3);
  const double w = 1.0 - t;
  const double x1 = a2 * w, x2 = a3 * w;
  const double r = prof.rho(x1, x2), r1 = prof.rho_x1(x1, x2), r2 = prof.rho_x2(x1, x2);
  const Complex d1 = std::conj(z.z1) * (1.0 - w * (2.0 * a2 * r + w * a2 * a2 * r1 + w * a2 * a3 * r2 + 2.0 * a3));
  const Complex d2 = w * w * std::conj(z.z2) * (r + w * a2 * r1);
  const Complex d3 = w * w * std::conj(z.z3) * (w * a2 * r2 + 1.0);
  return {d1, d2, d3};
}

std::array<Complex, 3> example2_numeric_gradient(const C3Point& z, const Example2Profile& prof, double h) {
  auto coord = [](C3Point& p, int j) -> Complex& { return j == 0 ? p.z1 : (j == 1 ? p.z2 : p.z3); };
  auto central = [&](int j, Complex dir, double step) {
    C3Point p = z, m = z;
    coord(p, j) += step * dir;
    coord(m, j) -= step * dir;
    return (example2_phi(p, prof) - example2_phi(m, prof)) / (2.0 * step);
  };
  auto rich = [&](int j, Complex dir) { return (4.0 * central(j, dir, h / 2) - central(j, dir, h)) / 3.0; };
  std::array<Complex, 3> out;
  for (int j = 0; j < 3; ++j) {
    const double dx = rich(j, {1.0, 0.0});
    const double dy = rich(j, {0.0, 1.0});
    out[static_cast<std::size_t>(j)] = Complex(dx, -dy) / 2.0;
  }
  return out;
}

namespace {

Complex random_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  return std::polar(1.0, ang(rng));
}

// Largest t with phi(t * dir) < 0 along a modulus direction, by bisection.
double boundary_radius(const Example2Profile& prof, const std::array<double, 3>& mod, const std::array<Complex, 3>& ph) {
  auto at = [&](double t) {
    return C3Point{t * mod[0] * ph[0], t * mod[1] * ph[1], t * mod[2] * ph[2]};
  };
  // Past |z1| = 1 the profile is evaluated at negative arguments, so rays with
  // a z1 component are cut at |z1| = 1, where phi = 0.
  double lo = 0.0, hi = mod[0] > 0.0 ? 1.0 / mod[0] : 0.5;
  if (mod[0] == 0.0) {
    for (int i = 0; i < 200 && !(example2_phi(at(hi), prof) >= 0.0); ++i) hi *= 2.0;
    if (!(example2_phi(at(hi), prof) >= 0.0)) throw SamplingError("no boundary crossing along ray");
  }
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (example2_phi(at(mid), prof) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

C3Point example2_sample_interior(const Example2Profile& prof, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> ang(0.0, 0.5 * kPi);
  const double r1 = 0.95 * std::sqrt(u01(rng));
  const double psi = ang(rng);
  const Complex p1 = random_phase(rng), p2 = random_phase(rng), p3 = random_phase(rng);
  // Boundary along the (|z2|, |z3|) direction at fixed |z1|.
  auto at = [&](double t) { return C3Point{r1 * p1, t * std::cos(psi) * p2, t * std::sin(psi) * p3}; };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && !(example2_phi(at(hi), prof) >= 0.0); ++i) hi *= 2.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (example2_phi(at(mid), prof) < 0.0 ? lo : hi) = mid;
  }
  return at(lo * 0.999 * u01(rng));
}

GradientScan example2_boundary_gradient_scan(const Example2Profile& prof, int n, std::uint64_t seed) {
  if (n < 1) throw InputError("gradient scan needs n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  GradientScan scan;
  scan.min_norm = kInfinity;
  for (int i = 0; i < n; ++i) {
    std::array<double, 3> mod{};
    double norm = 0.0;
    while (!(norm > 1e-12)) {
      for (double& m : mod) m = std::abs(gauss(rng));
      norm = std::hypot(mod[0], mod[1], mod[2]);
    }
    for (double& m : mod) m /= norm;
    const std::array<Complex, 3> ph{random_phase(rng), random_phase(rng), random_phase(rng)};
    const double t = boundary_radius(prof, mod, ph);
    const C3Point z{t * mod[0] * ph[0], t * mod[1] * ph[1], t * mod[2] * ph[2]};
    const auto g = example2_gradient(z, prof);
    const double gn = std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]));
    if (gn < scan.min_norm) {
      scan.min_norm = gn;
      scan.argmin = z;
    }
    ++scan.samples;
  }
  return scan;
}

C3Point example2_aut(Complex a, const C3Point& z) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !(std::abs(a) < 1.0))
    throw InputError("automorphism parameter needs |a| < 1");
  require_finite(z);
  const Complex q = 1.0 - std::conj(a) * z.z1;
  const double s = std::sqrt(1.0 - std::norm(a));
  return {(z.z1 - a) / q, q * z.z2 / s, q * z.z3 / s};
}

OrbitTrace example2_orbit_accumulation(const std::vector<Complex>& a_sequence, const C3Point& z0,
                                       const Example2Profile& prof) {
  require_finite(z0);
  if (!(example2_phi(z0, prof) < 0.0)) throw InputError("orbit start point is not in the domain");
  OrbitTrace tr;
  tr.max_phi = -kInfinity;
  for (Complex a : a_sequence) {
    const C3Point p = example2_aut(a, z0);
    const double f = example2_phi(p, prof);
    tr.points.push_back(p);
    tr.phi.push_back(f);
    tr.max_phi = std::max(tr.max_phi, f);
    tr.final_abs_z1 = std::abs(p.z1);
  }
  return tr;
}

}  // namespace reinhardt
