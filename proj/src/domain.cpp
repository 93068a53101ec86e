#include "reinhardt/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "reinhardt/errors.hpp"
#include "reinhardt/expression.hpp"
#include "reinhardt/format.hpp"

namespace reinhardt {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double sanitize(double g) { return std::isnan(g) ? kInfinity : g; }

NormalForm band_of(const TheoremIIParams& p) { return {FormKind::AnnulusFiber, p.alpha, 0.0, 1.0, p.R}; }
NormalForm band_of(const TheoremIIIParams& p) { return {FormKind::GaussianAnnulus, 0.0, p.beta, 1.0, p.R}; }

void check_point(ModulusPoint p) {
  if (!std::isfinite(p.m1) || !std::isfinite(p.m2)) throw InputError("modulus point must be finite");
  if (p.m1 < 0.0 || p.m2 < 0.0) throw InputError("moduli must be nonnegative");
}

}  // namespace

ReinhardtDomain ReinhardtDomain::theorem_i(double alpha) {
  if (!std::isfinite(alpha) || alpha == 0.0) throw InputError("theorem_i needs finite alpha != 0");
  return ReinhardtDomain(TheoremIParams{alpha});
}

ReinhardtDomain ReinhardtDomain::theorem_ii(double alpha, double R) {
  if (!std::isfinite(alpha) || !(alpha < 0.0)) throw InputError("theorem_ii needs alpha < 0");
  if (std::isnan(R) || !(R > 1.0)) throw InputError("theorem_ii needs 1 < R <= inf");
  return ReinhardtDomain(TheoremIIParams{alpha, R});
}

ReinhardtDomain ReinhardtDomain::theorem_iii(double beta, double R) {
  if (!std::isfinite(beta) || beta == 0.0) throw InputError("theorem_iii needs finite beta != 0");
  if (std::isnan(R) || !(R > 1.0)) throw InputError("theorem_iii needs 1 < R <= inf");
  return ReinhardtDomain(TheoremIIIParams{beta, R});
}

ReinhardtDomain ReinhardtDomain::normal_form(const NormalForm& nf) {
  nf.validate();
  return ReinhardtDomain(nf);
}

ReinhardtDomain ReinhardtDomain::custom(std::function<double(ModulusPoint)> g, AxisFlags axes, std::string expr) {
  if (!g) throw InputError("custom domain needs a defining function");
  return ReinhardtDomain(CustomDomain{std::move(g), axes, std::move(expr)});
}

ReinhardtDomain ReinhardtDomain::from_expression(const std::string& expr, AxisFlags axes) {
  auto e = Expression::parse(expr, {"m1", "m2"});
  return custom([e](ModulusPoint p) { return e(p.m1, p.m2); }, axes, expr);
}

double ReinhardtDomain::g(ModulusPoint p) const {
  return std::visit(
      Overloaded{
          [&](const TheoremIParams& k) {
            if (k.alpha < 0.0 && p.m2 == 0.0) return kInfinity;
            return sanitize(p.m1 * p.m1 + std::pow(p.m2, 1.0 / k.alpha) - 1.0);
          },
          [&](const TheoremIIParams& k) { return defining_function(band_of(k), p); },
          [&](const TheoremIIIParams& k) { return defining_function(band_of(k), p); },
          [&](const NormalForm& nf) { return defining_function(nf, p); },
          [&](const CustomDomain& c) { return sanitize(c.g(p)); },
      },
      kind_);
}

std::string ReinhardtDomain::describe() const {
  return std::visit(
      Overloaded{
          [](const TheoremIParams& k) { return "theorem_i alpha=" + format_number(k.alpha); },
          [](const TheoremIIParams& k) {
            return "theorem_ii alpha=" + format_number(k.alpha) + " R=" + format_number(k.R);
          },
          [](const TheoremIIIParams& k) {
            return "theorem_iii beta=" + format_number(k.beta) + " R=" + format_number(k.R);
          },
          [](const NormalForm& nf) { return nf.describe(); },
          [](const CustomDomain& c) {
            return c.expr.empty() ? std::string("custom") : "custom {" + c.expr + " < 0}";
          },
      },
      kind_);
}

bool contains(const ReinhardtDomain& d, ModulusPoint p) {
  check_point(p);
  return d.g(p) < 0.0;
}

double shadow_value(const ReinhardtDomain& d, LogPoint u) {
  if (!std::isfinite(u.u1) || !std::isfinite(u.u2)) throw InputError("log point must be finite");
  return d.g(to_modulus(u));
}

AxisFlags axis_intersections(const ReinhardtDomain& d) {
  return std::visit(Overloaded{
                        [](const TheoremIParams& k) { return AxisFlags{true, k.alpha > 0.0}; },
                        [](const TheoremIIParams&) { return AxisFlags{true, false}; },
                        [](const TheoremIIIParams&) { return AxisFlags{true, false}; },
                        [](const NormalForm& nf) { return axis_intersections(nf); },
                        [](const CustomDomain& c) { return c.axes; },
                    },
                    d.kind());
}

// ---------------------------------------------------------------------------
// Seeds and boundary sampling

std::vector<ModulusPoint> interior_seeds(const ReinhardtDomain& d, std::size_t max_count) {
  struct Candidate {
    ModulusPoint p;
    LogPoint embed;  // axis points sit at log-modulus -8
    double g;
  };
  constexpr double kAxisLog = -8.0;
  std::vector<Candidate> found;
  auto consider = [&](ModulusPoint p) {
    const double g = d.g(p);
    if (g < 0.0) {
      found.push_back({p, {p.m1 > 0 ? std::log(p.m1) : kAxisLog, p.m2 > 0 ? std::log(p.m2) : kAxisLog}, g});
    }
  };
  consider({0.0, 0.0});
  for (int i = 0; i <= 24; ++i) {
    const double v = -6.0 + 0.5 * i;
    consider({0.0, std::exp(v)});
    consider({std::exp(v), 0.0});
    for (int j = 0; j <= 24; ++j) consider(to_modulus({v, -6.0 + 0.5 * j}));
  }
  std::vector<ModulusPoint> seeds;
  if (found.empty()) return seeds;

  // Deepest candidate first, then greedy farthest-point spreading.
  std::size_t first = 0;
  for (std::size_t i = 1; i < found.size(); ++i) {
    if (found[i].g < found[first].g) first = i;
  }
  std::vector<double> dist(found.size(), kInfinity);
  std::size_t next = first;
  while (seeds.size() < max_count) {
    seeds.push_back(found[next].p);
    const LogPoint e = found[next].embed;
    double best = 0.0;
    for (std::size_t i = 0; i < found.size(); ++i) {
      const double dx = found[i].embed.u1 - e.u1;
      const double dy = found[i].embed.u2 - e.u2;
      dist[i] = std::min(dist[i], dx * dx + dy * dy);
      if (dist[i] > best) {
        best = dist[i];
        next = i;
      }
    }
    if (best == 0.0) break;
  }
  return seeds;
}

namespace {

// Bisection along seed + t*dir in modulus space. Returns the bracket end whose
// |g| is within tol, or nothing when the ray stays inside, reaches an axis
// while inside, or the sign change is a jump.
std::optional<ModulusPoint> ray_boundary_point(const ReinhardtDomain& d, ModulusPoint seed, double dx, double dy,
                                               double tol) {
  auto at = [&](double t) {
    return ModulusPoint{std::max(0.0, seed.m1 + t * dx), std::max(0.0, seed.m2 + t * dy)};
  };
  double t_axis = kInfinity;
  if (dx < 0.0) t_axis = std::min(t_axis, seed.m1 / -dx);
  if (dy < 0.0) t_axis = std::min(t_axis, seed.m2 / -dy);

  const double scale = std::max(1.0, std::hypot(seed.m1, seed.m2));
  double lo = 0.0;
  double hi = 1e-3 * scale;
  bool bracketed = false;
  while (hi < 1e8 * scale) {
    const double t = std::min(hi, t_axis);
    if (d.g(at(t)) >= 0.0) {
      hi = t;
      bracketed = true;
      break;
    }
    if (t == t_axis) return std::nullopt;
    lo = t;
    hi *= 2.0;
  }
  if (!bracketed) return std::nullopt;

  for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (d.g(at(mid)) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double g_lo = std::fabs(d.g(at(lo)));
  const double g_hi = std::fabs(d.g(at(hi)));
  if (g_lo <= tol && g_lo <= g_hi) return at(lo);
  if (g_hi <= tol) return at(hi);
  return std::nullopt;
}

}  // namespace

std::vector<ModulusPoint> sample_boundary(const ReinhardtDomain& d, int n, double tol) {
  if (n < 1) throw InputError("sample_boundary needs n >= 1");
  if (!(tol > 0.0)) throw InputError("sample_boundary needs tol > 0");
  const auto seeds = interior_seeds(d);
  if (seeds.empty()) throw SamplingError("sample_boundary: no interior point found (found 0 of " + std::to_string(n) + ")");

  constexpr double kGolden = 0.6180339887498949;
  std::vector<ModulusPoint> out;
  const int max_rays = 64 + 16 * n;
  for (int k = 0; k < max_rays && static_cast<int>(out.size()) < n; ++k) {
    const ModulusPoint& seed = seeds[static_cast<std::size_t>(k) % seeds.size()];
    double frac = 0.5 + k * kGolden;
    frac -= std::floor(frac);
    const double theta = 2.0 * std::numbers::pi * frac;
    if (auto p = ray_boundary_point(d, seed, std::cos(theta), std::sin(theta), tol)) out.push_back(*p);
  }
  if (static_cast<int>(out.size()) < n) {
    throw SamplingError("sample_boundary: found " + std::to_string(out.size()) + " of " + std::to_string(n) +
                        " boundary points");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interior sampling

namespace {

double fiber_weight(double m1, double alpha) { return std::pow(1.0 - m1 * m1, alpha); }

// Direct draws from the defining inequalities; may occasionally land on the
// boundary through rounding, callers re-check g < 0.
ModulusPoint draw(const ReinhardtDomain& d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const AxisFlags axes = axis_intersections(d);
  auto log_band = [&](double lower, double upper) {
    const double lo = std::log(lower);
    const double hi = std::isinf(upper) ? lo + 4.0 : std::log(upper);
    return std::exp(lo + (hi - lo) * unit(rng));
  };
  // Axis points with probability 1/16 when the domain meets that axis.
  const bool on_axis = unit(rng) < 1.0 / 16.0;

  return std::visit(
      Overloaded{
          [&](const TheoremIParams& k) {
            const double m1 = on_axis ? 0.0 : 0.995 * unit(rng);
            const double w = fiber_weight(m1, k.alpha);
            if (k.alpha > 0.0) return ModulusPoint{m1, w * unit(rng)};
            return ModulusPoint{m1, log_band(w, kInfinity)};
          },
          [&](const TheoremIIParams& k) {
            const double m1 = on_axis ? 0.0 : 0.995 * unit(rng);
            const double w = fiber_weight(m1, k.alpha);
            return ModulusPoint{m1, log_band(w, k.R * w)};
          },
          [&](const TheoremIIIParams& k) {
            const double m1 = on_axis ? 0.0 : 2.0 * unit(rng);
            const double wall = std::exp(k.beta * m1 * m1);
            return ModulusPoint{m1, log_band(wall, k.R * wall)};
          },
          [&](const NormalForm& nf) {
            const double m1 = on_axis ? 0.0 : (nf.over_disc() ? 0.995 : 2.0) * unit(rng);
            const double wall = nf.over_disc() ? fiber_weight(m1, nf.alpha) : std::exp(nf.beta * m1 * m1);
            if (nf.has_lower_wall()) return ModulusPoint{m1, log_band(nf.r * wall, nf.R * wall)};
            if (nf.kind == FormKind::DiscFiber && unit(rng) < 1.0 / 16.0) return ModulusPoint{m1, 0.0};
            return ModulusPoint{m1, nf.R * wall * unit(rng)};
          },
          [&](const CustomDomain&) {
            const double a = -6.0 + 12.0 * unit(rng);
            const double b = -6.0 + 12.0 * unit(rng);
            if (on_axis && axes.axis1 && (!axes.axis2 || unit(rng) < 0.5)) return ModulusPoint{0.0, std::exp(b)};
            if (on_axis && axes.axis2) return ModulusPoint{std::exp(a), 0.0};
            return to_modulus({a, b});
          },
      },
      d.kind());
}

}  // namespace

std::vector<ModulusPoint> sample_interior(const ReinhardtDomain& d, std::size_t n, std::mt19937_64& rng) {
  std::vector<ModulusPoint> out;
  out.reserve(n);
  const std::size_t max_attempts = 1000 * n + 100000;
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < n; ++attempt) {
    const ModulusPoint p = draw(d, rng);
    if (std::isfinite(p.m1) && std::isfinite(p.m2) && d.g(p) < 0.0) out.push_back(p);
  }
  if (out.size() < n) {
    throw SamplingError("sample_interior: found " + std::to_string(out.size()) + " of " + std::to_string(n) +
                        " interior points");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rasterization

LogPoint ShadowGrid::point(int i1, int i2) const {
  const double t1 = static_cast<double>(i1) / (n1 - 1);
  const double t2 = static_cast<double>(i2) / (n2 - 1);
  return {bounds.u1_lo + t1 * (bounds.u1_hi - bounds.u1_lo), bounds.u2_lo + t2 * (bounds.u2_hi - bounds.u2_lo)};
}

ShadowGrid rasterize_shadow(const ReinhardtDomain& d, const ShadowBounds& bounds, int n1, int n2) {
  for (double v : {bounds.u1_lo, bounds.u1_hi, bounds.u2_lo, bounds.u2_hi}) {
    if (!std::isfinite(v)) throw InputError("shadow bounds must be finite");
  }
  if (!(bounds.u1_lo < bounds.u1_hi) || !(bounds.u2_lo < bounds.u2_hi)) {
    throw InputError("shadow bounds must satisfy lo < hi");
  }
  if (n1 < 2 || n2 < 2) throw InputError("shadow resolution must be at least 2 per axis");

  ShadowGrid grid{bounds, n1, n2, {}};
  grid.values.resize(static_cast<std::size_t>(n1) * n2);
  for (int i1 = 0; i1 < n1; ++i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      grid.values[static_cast<std::size_t>(i1) * n2 + i2] = shadow_value(d, grid.point(i1, i2));
    }
  }
  return grid;
}

std::string to_csv(const ShadowGrid& grid) {
  std::string out = "u1,u2,g\n";
  out.reserve(grid.values.size() * 40);
  for (int i1 = 0; i1 < grid.n1; ++i1) {
    for (int i2 = 0; i2 < grid.n2; ++i2) {
      const LogPoint u = grid.point(i1, i2);
      out += format_number(u.u1);
      out += ',';
      out += format_number(u.u2);
      out += ',';
      out += format_number(grid.at(i1, i2));
      out += '\n';
    }
  }
  return out;
}

}  // namespace reinhardt
