#include "reinhardt/monomial.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "reinhardt/errors.hpp"
#include "reinhardt/format.hpp"

namespace reinhardt {

namespace {

std::int64_t entry(const IntMatrix2& A, int i, int j) {
  if (i == 0) return j == 0 ? A.a11 : A.a12;
  return j == 0 ? A.a21 : A.a22;
}

std::optional<double> int_power(double m, std::int64_t k) {
  if (k == 0) return 1.0;
  if (m == 0.0) return k > 0 ? std::optional<double>(0.0) : std::nullopt;
  return std::pow(m, static_cast<double>(k));
}

}  // namespace

MonomialMap::MonomialMap(IntMatrix2 A, std::array<double, 2> logscale) : A_(A), c_(logscale) {
  const auto det = A_.det();
  if (det != 1 && det != -1) throw InputError("monomial map needs det(A) = +-1, got " + std::to_string(det));
  if (!std::isfinite(c_[0]) || !std::isfinite(c_[1])) throw InputError("monomial map log-scales must be finite");
}

LogPoint MonomialMap::apply(LogPoint u) const {
  return {static_cast<double>(A_.a11) * u.u1 + static_cast<double>(A_.a12) * u.u2 + c_[0],
          static_cast<double>(A_.a21) * u.u1 + static_cast<double>(A_.a22) * u.u2 + c_[1]};
}

std::optional<ModulusPoint> MonomialMap::apply(ModulusPoint p) const {
  double out[2];
  for (int i = 0; i < 2; ++i) {
    const auto x = int_power(p.m1, entry(A_, i, 0));
    const auto y = int_power(p.m2, entry(A_, i, 1));
    if (!x || !y) return std::nullopt;
    out[i] = std::exp(c_[static_cast<std::size_t>(i)]) * *x * *y;
  }
  return ModulusPoint{out[0], out[1]};
}

std::string MonomialMap::describe() const {
  return "A=[[" + std::to_string(A_.a11) + "," + std::to_string(A_.a12) + "],[" + std::to_string(A_.a21) + "," +
         std::to_string(A_.a22) + "]] c=(" + format_number(c_[0]) + "," + format_number(c_[1]) + ")";
}

MonomialMap compose(const MonomialMap& f, const MonomialMap& g) {
  const LogPoint shifted = f.apply(LogPoint{g.logscale()[0], g.logscale()[1]});
  return MonomialMap(f.matrix() * g.matrix(), {shifted.u1, shifted.u2});
}

MonomialMap invert(const MonomialMap& f) {
  const IntMatrix2& A = f.matrix();
  const std::int64_t d = A.det();
  const IntMatrix2 inv{d * A.a22, -d * A.a12, -d * A.a21, d * A.a11};
  const auto& c = f.logscale();
  const double c1 = -(static_cast<double>(inv.a11) * c[0] + static_cast<double>(inv.a12) * c[1]);
  const double c2 = -(static_cast<double>(inv.a21) * c[0] + static_cast<double>(inv.a22) * c[1]);
  return MonomialMap(inv, {c1, c2});
}

LogPoint apply_log(const MonomialMap& f, LogPoint u) {
  if (!std::isfinite(u.u1) || !std::isfinite(u.u2)) throw InputError("log point must be finite");
  return f.apply(u);
}

MonomialMap power(const MonomialMap& f, int k) {
  const MonomialMap step = k < 0 ? invert(f) : f;
  MonomialMap out = MonomialMap::identity();
  for (int i = 0; i < std::abs(k); ++i) out = compose(step, out);
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(ShapeTag tag) {
  switch (tag) {
    case ShapeTag::DiagonalId: return "diagonal_id";
    case ShapeTag::DiagonalSwap: return "diagonal_swap";
    case ShapeTag::AxisShear: return "axis_shear";
    case ShapeTag::AxisShearFlip: return "axis_shear_flip";
  }
  return "unknown";
}

std::vector<IntMatrix2> CandidateShape::matrices(int bound) const {
  switch (tag) {
    case ShapeTag::DiagonalId: return {IntMatrix2::identity()};
    case ShapeTag::DiagonalSwap: return {IntMatrix2::swap()};
    case ShapeTag::AxisShear:
    case ShapeTag::AxisShearFlip: {
      const std::int64_t s = tag == ShapeTag::AxisShear ? 1 : -1;
      std::vector<IntMatrix2> out;
      for (std::int64_t a = -bound; a <= bound; ++a) {
        out.push_back(relabeled ? IntMatrix2{s, 0, a, 1} : IntMatrix2{1, a, 0, s});
      }
      return out;
    }
  }
  return {};
}

bool CandidateShape::matches(const IntMatrix2& A) const {
  switch (tag) {
    case ShapeTag::DiagonalId: return A == IntMatrix2::identity();
    case ShapeTag::DiagonalSwap: return A == IntMatrix2::swap();
    case ShapeTag::AxisShear:
      return relabeled ? (A.a11 == 1 && A.a12 == 0 && A.a22 == 1) : (A.a11 == 1 && A.a21 == 0 && A.a22 == 1);
    case ShapeTag::AxisShearFlip:
      return relabeled ? (A.a11 == -1 && A.a12 == 0 && A.a22 == 1) : (A.a11 == 1 && A.a21 == 0 && A.a22 == -1);
  }
  return false;
}

std::vector<CandidateShape> candidate_shapes(AxisFlags axes) {
  if (axes.axis1 && axes.axis2) {
    return {{ShapeTag::DiagonalId, false, {"c1", "c2"}}, {ShapeTag::DiagonalSwap, false, {"c1", "c2"}}};
  }
  if (axes.axis1 || axes.axis2) {
    const bool relabel = !axes.axis1;
    return {{ShapeTag::AxisShear, relabel, {"c1", "c2", "a"}}, {ShapeTag::AxisShearFlip, relabel, {"c1", "c2", "a"}}};
  }
  throw InputError("hypothesis violated: the domain meets neither coordinate line {z1=0}, {z2=0}");
}

std::optional<CandidateShape> shape_of(const IntMatrix2& A, AxisFlags axes) {
  if (!axes.any()) return std::nullopt;
  for (const auto& shape : candidate_shapes(axes)) {
    if (shape.matches(A)) return shape;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<LogSample> stride_subsample(const std::vector<LogSample>& all, std::size_t limit) {
  if (all.size() <= limit) return all;
  std::vector<LogSample> out;
  out.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) out.push_back(all[i * all.size() / limit]);
  return out;
}

}  // namespace

LogSampleSet log_samples(const ReinhardtDomain& d, const SamplerSpec& spec) {
  if (!(spec.lo < spec.hi) || !std::isfinite(spec.lo) || !std::isfinite(spec.hi)) {
    throw InputError("sampler box must be finite with lo < hi");
  }
  if (spec.resolution < 2) throw InputError("sampler resolution must be at least 2");

  LogSampleSet set;
  auto& out = set.interior;
  std::vector<LogSample> outside;
  const int n = spec.resolution;
  const double step = (spec.hi - spec.lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const LogPoint u{spec.lo + i * step, spec.lo + j * step};
      const double g = d.g(to_modulus(u));
      if (g < 0.0) {
        out.push_back({u, g});
      } else if (g > 0.0) {
        outside.push_back({u, g});
      }
    }
  }
  if (out.empty()) return set;
  set.exterior = stride_subsample(outside, out.size());
  if (spec.shell_rays <= 0) return set;

  // Ray seeds: lattice interior points taken at an even stride.
  const std::size_t lattice_count = out.size();
  const std::size_t seed_count = std::min<std::size_t>(16, lattice_count);
  auto inside_box = [&](LogPoint u) { return u.u1 >= spec.lo && u.u1 <= spec.hi && u.u2 >= spec.lo && u.u2 <= spec.hi; };
  auto g_at = [&](LogPoint u) { return d.g(to_modulus(u)); };

  constexpr double kGolden = 0.6180339887498949;
  const double march = (spec.hi - spec.lo) / 400.0;
  for (int k = 0; k < spec.shell_rays; ++k) {
    const std::size_t seed_index = (static_cast<std::size_t>(k) % seed_count) * lattice_count / seed_count;
    const LogPoint seed = out[seed_index].u;
    double frac = 0.5 + k * kGolden;
    frac -= std::floor(frac);
    const double dx = std::cos(2.0 * std::numbers::pi * frac);
    const double dy = std::sin(2.0 * std::numbers::pi * frac);
    auto at = [&](double t) { return LogPoint{seed.u1 + t * dx, seed.u2 + t * dy}; };

    double lo = 0.0;
    double hi = march;
    bool bracketed = false;
    while (inside_box(at(hi))) {
      if (g_at(at(hi)) >= 0.0) {
        bracketed = true;
        break;
      }
      lo = hi;
      hi += march;
    }
    if (!bracketed) continue;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g_at(at(mid)) < 0.0 ? lo : hi) = mid;
    }
    for (double depth = 1e-1; depth > 5e-8; depth *= 0.1) {
      const double t = lo - depth;
      if (t > 0.0) {
        const LogPoint u = at(t);
        const double g = g_at(u);
        if (g < 0.0) out.push_back({u, g, true});
      }
      const LogPoint v = at(hi + depth);
      const double gv = g_at(v);
      if (gv > 0.0) set.exterior.push_back({v, gv, true});
    }
  }
  return set;
}

std::vector<LogSample> interior_log_samples(const ReinhardtDomain& d, const SamplerSpec& spec) {
  return log_samples(d, spec).interior;
}

namespace {

void check_compatible(const ReinhardtDomain& d, const MonomialMap& f) {
  const AxisFlags axes = axis_intersections(d);
  if (axes.any() && !shape_of(f.matrix(), axes)) {
    throw InputError("map " + f.describe() + " does not have a shape compatible with the domain's axis data");
  }
}

}  // namespace

PreservationVerdict preserves(const ReinhardtDomain& d, const MonomialMap& f, const LogSampleSet& samples, double tol) {
  if (!(tol > 0.0)) throw InputError("preserves needs tol > 0");
  check_compatible(d, f);
  const MonomialMap inv = invert(f);
  PreservationVerdict verdict;
  auto fail = [&](LogPoint u, bool from_inverse, bool exterior) {
    verdict.preserved = false;
    verdict.witness = u;
    verdict.witness_from_inverse = from_inverse;
    verdict.witness_exterior = exterior;
  };
  for (const auto& s : samples.interior) {
    if (!(s.g < -tol)) continue;
    ++verdict.samples_checked;
    const double forward = d.g(to_modulus(f.apply(s.u)));
    const double backward = d.g(to_modulus(inv.apply(s.u)));
    verdict.max_image_value = std::max({verdict.max_image_value, forward, backward});
    if (!(forward < tol) || !(backward < tol)) {
      fail(s.u, forward < tol, false);
      return verdict;
    }
  }
  if (verdict.samples_checked == 0) throw InputError("preserves: empty interior sample set");
  for (const auto& s : samples.exterior) {
    if (!(s.g > tol)) continue;
    ++verdict.exterior_checked;
    const double forward = d.g(to_modulus(f.apply(s.u)));
    const double backward = d.g(to_modulus(inv.apply(s.u)));
    if (!(forward > -tol) || !(backward > -tol)) {
      fail(s.u, forward > -tol, true);
      return verdict;
    }
  }
  return verdict;
}

PreservationVerdict preserves(const ReinhardtDomain& d, const MonomialMap& f, const std::vector<LogSample>& interior,
                              double tol) {
  return preserves(d, f, LogSampleSet{interior, {}}, tol);
}

PreservationVerdict preserves(const ReinhardtDomain& d, const MonomialMap& f, const SamplerSpec& sampler, double tol) {
  return preserves(d, f, log_samples(d, sampler), tol);
}

// ---------------------------------------------------------------------------

std::vector<IntMatrix2> unimodular_matrices(int bound) {
  if (bound < 1) throw InputError("entry bound must be at least 1");
  std::vector<IntMatrix2> out;
  for (std::int64_t a = -bound; a <= bound; ++a)
    for (std::int64_t b = -bound; b <= bound; ++b)
      for (std::int64_t c = -bound; c <= bound; ++c)
        for (std::int64_t e = -bound; e <= bound; ++e) {
          const IntMatrix2 A{a, b, c, e};
          if (A.det() == 1 || A.det() == -1) out.push_back(A);
        }
  return out;
}

namespace {

double capped_hinge(double v) {
  if (std::isnan(v)) return 1.0;
  return std::min(std::max(0.0, v), 1.0);
}

// Objective for the affine map u -> A u + c and its inverse, without building
// MonomialMap objects in the inner loop.
double affine_objective(const ReinhardtDomain& d, const IntMatrix2& A, const IntMatrix2& Ainv, double c1, double c2,
                        const LogSampleSet& samples) {
  const double ic1 = -(static_cast<double>(Ainv.a11) * c1 + static_cast<double>(Ainv.a12) * c2);
  const double ic2 = -(static_cast<double>(Ainv.a21) * c1 + static_cast<double>(Ainv.a22) * c2);
  auto mean = [&](const std::vector<LogSample>& set, double sign) {
    if (set.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& s : set) {
      const double u1 = s.u.u1, u2 = s.u.u2;
      const LogPoint fwd{A.a11 * u1 + A.a12 * u2 + c1, A.a21 * u1 + A.a22 * u2 + c2};
      const LogPoint bwd{Ainv.a11 * u1 + Ainv.a12 * u2 + ic1, Ainv.a21 * u1 + Ainv.a22 * u2 + ic2};
      sum += capped_hinge(sign * d.g(to_modulus(fwd))) + capped_hinge(sign * d.g(to_modulus(bwd)));
    }
    return sum / (2.0 * static_cast<double>(set.size()));
  };
  return mean(samples.interior, 1.0) + mean(samples.exterior, -1.0);
}

IntMatrix2 int_inverse(const IntMatrix2& A) {
  const std::int64_t d = A.det();
  return {d * A.a22, -d * A.a12, -d * A.a21, d * A.a11};
}

struct MatrixJob {
  IntMatrix2 A;
  std::optional<ShapeTag> shape;
};

std::vector<FoundClass> search_matrix(const ReinhardtDomain& d, const MatrixJob& job, const SearchOptions& opt,
                                      const LogSampleSet& scan_set, const LogSampleSet& refine_set,
                                      const LogSampleSet& confirm_set) {
  const IntMatrix2 Ainv = int_inverse(job.A);
  const int n = opt.scale_steps;
  const double step = 2.0 * opt.scale_box / (n - 1);
  auto coord = [&](int i) { return -opt.scale_box + i * step; };

  std::vector<double> grid(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      grid[static_cast<std::size_t>(i) * n + j] = affine_objective(d, job.A, Ainv, coord(i), coord(j), scan_set);

  struct Minimum {
    double value;
    int i, j;
  };
  std::vector<Minimum> minima;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = grid[static_cast<std::size_t>(i) * n + j];
      if (v >= 0.5) continue;
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          const int a = i + di, b = j + dj;
          if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= n || b >= n) continue;
          if (grid[static_cast<std::size_t>(a) * n + b] < v) {
            is_min = false;
            break;
          }
        }
      if (is_min) minima.push_back({v, i, j});
    }
  }
  std::stable_sort(minima.begin(), minima.end(), [](const Minimum& x, const Minimum& y) { return x.value < y.value; });

  std::vector<FoundClass> found;
  std::vector<Minimum> taken;
  for (const auto& m : minima) {
    if (static_cast<int>(taken.size()) >= opt.minima_per_matrix) break;
    bool near = false;
    for (const auto& t : taken) near = near || (std::abs(t.i - m.i) <= 1 && std::abs(t.j - m.j) <= 1);
    if (near) continue;
    taken.push_back(m);

    // Pattern search on the refine set.
    double c[2] = {coord(m.i), coord(m.j)};
    double best = affine_objective(d, job.A, Ainv, c[0], c[1], refine_set);
    double h = 0.5 * step;
    bool abandoned = false;
    while (h > 1e-9) {
      bool moved = false;
      for (int dim = 0; dim < 2 && !moved; ++dim) {
        for (double sgn : {1.0, -1.0}) {
          double trial[2] = {c[0], c[1]};
          trial[dim] += sgn * h;
          // Stay in the searched box; far outside it moduli under/overflow.
          if (std::fabs(trial[dim]) > opt.scale_box) continue;
          const double v = affine_objective(d, job.A, Ainv, trial[0], trial[1], refine_set);
          if (v < best) {
            best = v;
            c[0] = trial[0];
            c[1] = trial[1];
            moved = true;
            break;
          }
        }
      }
      if (!moved) h *= 0.5;
      // A preserved region has a vanishing objective; give up early on
      // minima that stay clearly positive.
      if (h < 1e-3 && best > 1e-3) {
        abandoned = true;
        break;
      }
    }
    if (abandoned) continue;

    const MonomialMap f(job.A, {c[0], c[1]});
    const PreservationVerdict v = preserves(d, f, confirm_set, opt.tol);
    if (!v.preserved) continue;
    found.push_back({f, job.shape, best, v.max_image_value});
  }
  return found;
}

bool same_class(const MonomialMap& f, const MonomialMap& g, double tol) {
  return f.matrix() == g.matrix() && std::hypot(f.logscale()[0] - g.logscale()[0], f.logscale()[1] - g.logscale()[1]) <= tol;
}

}  // namespace

double mismatch_objective(const ReinhardtDomain& d, const MonomialMap& f, const LogSampleSet& samples) {
  return affine_objective(d, f.matrix(), int_inverse(f.matrix()), f.logscale()[0], f.logscale()[1], samples);
}

SearchReport search_aut_alg(const ReinhardtDomain& d, const SearchOptions& options) {
  if (options.entry_bound < 1) throw InputError("entry bound must be at least 1");
  if (!(options.scale_box > 0.0) || !std::isfinite(options.scale_box)) throw InputError("scale box must be positive");
  if (options.scale_steps < 2) throw InputError("scale steps must be at least 2");
  if (!(options.tol > 0.0)) throw InputError("search tolerance must be positive");

  SearchReport report;
  report.options = options;
  const AxisFlags axes = axis_intersections(d);
  std::vector<MatrixJob> jobs;
  if (axes.any()) {
    report.restricted_to_shapes = true;
    for (const auto& shape : candidate_shapes(axes))
      for (const auto& A : shape.matrices(options.entry_bound)) jobs.push_back({A, shape.tag});
  } else {
    for (const auto& A : unimodular_matrices(options.entry_bound)) jobs.push_back({A, std::nullopt});
  }
  report.matrices_examined = jobs.size();

  const LogSampleSet samples = log_samples(d, options.sampler);
  if (samples.interior.empty()) throw SamplingError("search_aut_alg: no interior samples inside the sampler box");
  report.samples = samples.interior.size();
  report.exterior_samples = samples.exterior.size();

  // Shell points pin the refined scale to the walls; all of them are kept.
  LogSampleSet scan_set, refine_set;
  auto split = [&](const std::vector<LogSample>& all, std::vector<LogSample>& scan, std::vector<LogSample>& refine) {
    scan = stride_subsample(all, options.scan_samples);
    std::vector<LogSample> lattice;
    for (const auto& s : all) (s.shell ? refine : lattice).push_back(s);
    auto head = stride_subsample(lattice, options.scan_samples);
    refine.insert(refine.begin(), head.begin(), head.end());
  };
  split(samples.interior, scan_set.interior, refine_set.interior);
  split(samples.exterior, scan_set.exterior, refine_set.exterior);

  std::vector<std::vector<FoundClass>> per_job(jobs.size());
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      per_job[k] = search_matrix(d, jobs[k], options, scan_set, refine_set, samples);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Classes closer than the confirmation tolerance cannot be told apart.
  const double merge_tol = std::max(options.class_tol, options.tol);
  std::vector<FoundClass> classes;
  auto add = [&](const FoundClass& fc) {
    for (auto& existing : classes) {
      if (same_class(existing.map, fc.map, merge_tol)) {
        if (fc.objective < existing.objective) existing = fc;
        return;
      }
    }
    classes.push_back(fc);
  };
  for (const auto& list : per_job)
    for (const auto& fc : list) {
      if (fc.map.matrix() == IntMatrix2::identity() &&
          std::hypot(fc.map.logscale()[0], fc.map.logscale()[1]) <= options.tol) {
        add({MonomialMap::identity(), fc.shape, fc.objective, fc.max_image_value});
      } else {
        add(fc);
      }
    }
  const bool has_identity = std::any_of(classes.begin(), classes.end(), [](const FoundClass& fc) {
    return fc.map == MonomialMap::identity();
  });
  if (!has_identity) {
    classes.push_back({MonomialMap::identity(), axes.any() ? std::optional<ShapeTag>(ShapeTag::DiagonalId) : std::nullopt,
                       mismatch_objective(d, MonomialMap::identity(), refine_set), 0.0});
    if (axes.any() && !(axes.axis1 && axes.axis2)) classes.back().shape = ShapeTag::AxisShear;
  }
  std::sort(classes.begin(), classes.end(), [](const FoundClass& x, const FoundClass& y) {
    if (x.map.matrix() != y.map.matrix()) return x.map.matrix() < y.map.matrix();
    return x.map.logscale() < y.map.logscale();
  });
  report.classes = classes;

  // Any confirmed pure scaling other than the identity generates an infinite
  // family of torus classes.
  std::optional<MonomialMap> generator;
  double generator_norm = kInfinity;
  for (const auto& fc : classes) {
    if (fc.map.matrix() != IntMatrix2::identity()) continue;
    const auto& c = fc.map.logscale();
    const double norm = std::hypot(c[0], c[1]);
    if (norm <= options.tol) continue;
    const bool positive = c[0] > 0.0 || (c[0] == 0.0 && c[1] > 0.0);
    const MonomialMap oriented = positive ? fc.map : invert(fc.map);
    if (norm < generator_norm - options.tol ||
        (std::fabs(norm - generator_norm) <= options.tol && generator &&
         oriented.logscale() > generator->logscale())) {
      generator = oriented;
      generator_norm = norm;
    }
  }
  report.infinite_mod_torus = generator.has_value();
  report.generator = generator;
  return report;
}

// ---------------------------------------------------------------------------

std::string to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::ContainsLine: return "contains_line";
    case ProbeVerdict::Bounded: return "bounded";
    case ProbeVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

bool disc_inside(const ReinhardtDomain& d, const DiscSeed& disc, int samples) {
  for (int i = 0; i <= samples; ++i) {
    const double t = i < samples ? static_cast<double>(i) / samples : 1.0 - 1e-9;
    const double rho = t * disc.radius;
    const ModulusPoint p = disc.axis == 1 ? ModulusPoint{rho, disc.level} : ModulusPoint{disc.level, rho};
    if (!(d.g(p) < 0.0)) return false;
  }
  return true;
}

}  // namespace

OrbitCertificate line_containment_probe(const ReinhardtDomain& d, const MonomialMap& f, const DiscSeed& seed,
                                        const ProbeOptions& options) {
  if (options.iterations < 1) throw InputError("probe needs at least one iteration");
  if (!(options.escape > 1.0)) throw InputError("probe escape threshold must exceed 1");
  if (seed.axis != 1 && seed.axis != 2) throw InputError("seed axis must be 1 or 2");
  if (!(seed.radius > 0.0) || !std::isfinite(seed.radius)) throw InputError("seed radius must be positive");
  if (!(seed.level >= 0.0) || !std::isfinite(seed.level)) throw InputError("seed level must be a finite modulus");
  if (options.disc_samples < 1) throw InputError("probe needs at least one disc sample");
  if (!disc_inside(d, seed, options.disc_samples)) throw InputError("seed disc is not contained in the domain");

  OrbitCertificate cert;
  cert.witness.push_back(seed);
  DiscSeed cur = seed;
  const IntMatrix2& A = f.matrix();
  const auto& c = f.logscale();

  for (int k = 1; k <= options.iterations; ++k) {
    const int a = cur.axis - 1;
    const int b = 1 - a;
    // The disc in z_{a} maps to a disc iff column a of A is a unit vector.
    int target = -1;
    if (entry(A, 0, a) == 1 && entry(A, 1, a) == 0) target = 0;
    if (entry(A, 1, a) == 1 && entry(A, 0, a) == 0) target = 1;
    cert.iterations = k - 1;
    if (target < 0) {
      cert.reason = "map does not send discs in z" + std::to_string(cur.axis) + " to discs";
      return cert;
    }
    const int other = 1 - target;
    const auto radius_factor = int_power(cur.level, entry(A, target, b));
    const auto level_value = int_power(cur.level, entry(A, other, b));
    if (!radius_factor || !level_value) {
      cert.reason = "map is undefined on the disc's level";
      return cert;
    }
    DiscSeed next{target + 1, std::exp(c[static_cast<std::size_t>(other)]) * *level_value,
                  std::exp(c[static_cast<std::size_t>(target)]) * cur.radius * *radius_factor};
    if (!(next.radius > 0.0) || !std::isfinite(next.radius) || !std::isfinite(next.level)) {
      cert.reason = "disc degenerated at iteration " + std::to_string(k);
      return cert;
    }
    cur = next;
    cert.witness.push_back(cur);
    cert.iterations = k;
    if (!disc_inside(d, cur, options.disc_samples)) {
      cert.reason = "iterated disc left the domain at iteration " + std::to_string(k);
      return cert;
    }
    if (cur.radius > options.escape) {
      const auto& first = cert.witness.front();
      const bool level_fixed = cur.axis == first.axis &&
                               std::fabs(cur.level - first.level) <= 1e-12 * std::max(1.0, first.level);
      if (!level_fixed) {
        cert.reason = "discs escape but their level drifts";
        return cert;
      }
      cert.verdict = ProbeVerdict::ContainsLine;
      cert.line_axis = cur.axis == 1 ? 2 : 1;
      cert.line_level = cur.level;
      cert.reason = "disc radius exceeded escape threshold with all sampled points inside";
      return cert;
    }
  }
  cert.verdict = ProbeVerdict::Bounded;
  cert.reason = "radii stayed below the escape threshold";
  return cert;
}

}  // namespace reinhardt
