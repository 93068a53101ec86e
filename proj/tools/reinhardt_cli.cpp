// Command-line front end. Exit codes:
//   0 ok / finite / bounded, 1 input error, 2 rejected or failed verification,
//   3 infinite automorphism family, 4 entire line found.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "reinhardt/errors.hpp"
#include "reinhardt/format.hpp"
#include "reinhardt/gallery.hpp"
#include "reinhardt/io.hpp"
#include "reinhardt/monomial.hpp"
#include "reinhardt/normal_forms.hpp"
#include "reinhardt/smoothness.hpp"

namespace {

using namespace reinhardt;

enum Exit : int { kOk = 0, kInput = 1, kRejected = 2, kInfinite = 3, kLine = 4 };

struct RunConfig {
  std::uint64_t seed = 1;
  double tol = 1e-4;
  std::string out;
  bool json = false;
};

// A JSON argument is inline when it starts with '{', a file path otherwise.
Json load_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return parse_json(arg);
  return read_json_file(arg);
}

ReinhardtDomain load_domain(const std::string& arg) {
  if (arg == "example1") return example1_domain();
  return domain_from_json(load_json_arg(arg));
}

SmoothnessOrder parse_order(const std::string& s) {
  if (s == "inf" || s == "infinity") return SmoothnessOrder::infinity();
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw InputError("k must be a positive integer or 'inf'");
  }
  if (used != s.size()) throw InputError("k must be a positive integer or 'inf'");
  return SmoothnessOrder::finite(k);
}

// Reports go to --out when given, to stdout as JSON with --json, and as a
// short summary line otherwise.
void emit(const RunConfig& cfg, Json report, const std::string& summary) {
  report["schema_version"] = kSchemaVersion;
  const std::string text = report.dump(2) + "\n";
  if (!cfg.out.empty()) write_file_atomic(cfg.out, text);
  if (cfg.json) {
    std::cout << text;
  } else {
    std::cout << summary << "\n";
  }
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string descriptor;
  int form = 0;
  double alpha = 0.0, beta = 0.0, r = 0.0;
  std::string R = "1";
  std::string k = "inf";
};

int run_classify(const RunConfig& cfg, const ClassifyArgs& a) {
  NormalForm nf;
  if (!a.descriptor.empty()) {
    nf = normal_form_from_json(load_json_arg(a.descriptor));
  } else {
    if (a.form == 0) throw InputError("classify needs --form or --descriptor");
    Json j{{"form", a.form}, {"alpha", a.alpha}, {"beta", a.beta}, {"r", a.r}};
    j["R"] = a.R == "inf" ? Json("inf") : Json(std::stod(a.R));
    nf = normal_form_from_json(j);
  }
  const SmoothnessOrder k = parse_order(a.k);
  // The bidisc is outside the classification altogether.
  if (nf.kind == FormKind::DiscFiber && nf.alpha == 0.0)
    throw InputError("form 11 with alpha = 0 is the bidisc, which is excluded");
  ClassifyOptions opt;
  opt.seed = cfg.seed;
  const Classification c = classify(nf, k, opt);
  Json rep = to_json(c);
  rep["input"] = to_json(nf);
  rep["k"] = k.to_string();
  emit(cfg, rep, nf.describe() + " -> " + c.theorem_case.name());
  return c.theorem_case.kind == TheoremCase::Kind::Rejected ? kRejected : kOk;
}

struct SearchArgs {
  std::string domain;
  int bound = 3;
  double scale_box = 4.0;
  int scale_steps = 41;
  int resolution = 100;
  std::size_t scan_samples = SearchOptions{}.scan_samples;
  unsigned threads = 0;
};

int run_search(const RunConfig& cfg, const SearchArgs& a) {
  const ReinhardtDomain d = load_domain(a.domain);
  SearchOptions opt;
  opt.entry_bound = a.bound;
  opt.scale_box = a.scale_box;
  opt.scale_steps = a.scale_steps;
  opt.tol = cfg.tol;
  opt.sampler.resolution = a.resolution;
  opt.scan_samples = a.scan_samples;
  opt.threads = a.threads;
  const SearchReport rep = search_aut_alg(d, opt);
  Json j = to_json(rep);
  j["domain"] = d.describe();
  std::string summary = std::to_string(rep.classes.size()) + " torus classes";
  if (rep.infinite_mod_torus) summary += ", infinite family generated by " + rep.generator->describe();
  emit(cfg, j, summary);
  return rep.infinite_mod_torus ? kInfinite : kOk;
}

struct ProbeArgs {
  std::string domain;
  std::string map;
  int axis = 1;
  double level = 0.5;
  double radius = 0.5;
  int iterations = 40;
};

int run_probe(const RunConfig& cfg, const ProbeArgs& a) {
  const ReinhardtDomain d = load_domain(a.domain);
  const MonomialMap f = map_from_json(load_json_arg(a.map));
  ProbeOptions opt;
  opt.iterations = a.iterations;
  const OrbitCertificate cert = line_containment_probe(d, f, {a.axis, a.level, a.radius}, opt);
  emit(cfg, to_json(cert), to_string(cert.verdict) + ": " + cert.reason);
  return cert.verdict == ProbeVerdict::ContainsLine ? kLine : kOk;
}

struct SmoothnessArgs {
  double alpha = 0.5;
  bool witness = false;
  double h_min = 1e-10;
};

int run_smoothness(const RunConfig& cfg, const SmoothnessArgs& a) {
  const SmoothnessClass c = smoothness_class_case_i(a.alpha);
  Json rep = to_json(c);
  rep["alpha"] = a.alpha;
  std::string summary = "alpha " + format_number(a.alpha) + ": " + c.to_string();
  if (a.witness) {
    if (c.kind != SmoothnessClass::Kind::CExactly) {
      rep["witness"] = nullptr;
    } else {
      const SmoothnessWitness w = smoothness_witness(a.alpha, c.j, a.h_min);
      rep["witness"] = to_json(w);
      summary += w.confirmed ? " (witness confirmed)" : " (witness not confirmed)";
    }
  }
  emit(cfg, rep, summary);
  return kOk;
}

struct ShadowArgs {
  std::string domain;
  std::vector<double> bounds{-2.0, 2.0, -2.0, 2.0};
  int resolution = 200;
};

int run_shadow(const RunConfig& cfg, const ShadowArgs& a) {
  if (cfg.out.empty()) throw InputError("shadow needs --out <file.csv>");
  if (a.bounds.size() != 4) throw InputError("--bounds takes u1_lo u1_hi u2_lo u2_hi");
  if (a.resolution < 2) throw InputError("resolution must be at least 2");
  const ReinhardtDomain d = load_domain(a.domain);
  const ShadowGrid grid = rasterize_shadow(d, {a.bounds[0], a.bounds[1], a.bounds[2], a.bounds[3]}, a.resolution, a.resolution);
  write_file_atomic(cfg.out, to_csv(grid));
  std::cout << grid.values.size() << " rows written to " << cfg.out << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct ExampleArgs {
  int which = 1;
  bool verify = false;
  std::string profile = "one";
  std::string profile_dx1;
  std::string profile_dx2;
  double profile_c = 0.5;
  int samples = 10000;
};

Json verify_example1(const RunConfig& cfg, const ExampleArgs& a, bool& ok) {
  const ReinhardtDomain d = example1_domain();
  const MonomialMap gen = example1_generator();
  const FibrationReport fib = example1_fibration_check(a.samples, cfg.seed);

  SamplerSpec sampler;
  const PreservationVerdict pv = preserves(d, gen, sampler, cfg.tol);

  bool powers_exact = true;
  for (int k = -5; k <= 5; ++k) {
    const auto c = power(gen, k).logscale();
    powers_exact = powers_exact && c[0] == k * std::numbers::pi && c[1] == -k * std::numbers::pi;
  }
  bool bounded = true;
  for (bool b : fib.cover_preimages_bounded()) bounded = bounded && b;
  ok = fib.image_in_annulus && fib.pieces_cover_image && bounded && pv.preserved && powers_exact;
  return Json{{"example", 1},
              {"domain", domain_to_json(d)},
              {"generator", to_json(gen)},
              {"generator_preserved", pv.preserved},
              {"generator_samples", pv.samples_checked},
              {"powers_exact", powers_exact},
              {"fibration", to_json(fib)},
              {"passed", ok}};
}

Example2Profile resolve_profile(const ExampleArgs& a) {
  if (a.profile_dx1.empty() && a.profile_dx2.empty()) {
    for (const auto& p : shipped_profiles())
      if (p.name == a.profile) return p;
    throw InputError("unknown profile '" + a.profile +
                     "'; use one, linear, quadratic, or an expression with --profile-dx1/--profile-dx2");
  }
  if (a.profile_dx1.empty() || a.profile_dx2.empty())
    throw InputError("expression profiles need both --profile-dx1 and --profile-dx2");
  return Example2Profile::from_expressions(a.profile, a.profile_dx1, a.profile_dx2, a.profile_c);
}

Json verify_example2(const RunConfig& cfg, const ExampleArgs& a, bool& ok) {
  const Example2Profile prof = resolve_profile(a);
  validate_profile(prof);
  std::mt19937_64 rng(cfg.seed);

  double max_rel = 0.0;
  for (int i = 0; i < 100; ++i) {
    const C3Point z = example2_sample_interior(prof, rng);
    const auto g = example2_gradient(z, prof);
    const auto n = example2_numeric_gradient(z, prof);
    double diff = 0.0, norm = 0.0;
    for (int k = 0; k < 3; ++k) {
      diff += std::norm(g[k] - n[k]);
      norm += std::norm(g[k]);
    }
    max_rel = std::max(max_rel, std::sqrt(diff) / std::max(std::sqrt(norm), 1e-300));
  }

  const GradientScan scan = example2_boundary_gradient_scan(prof, 500, cfg.seed);

  std::size_t violations = 0;
  double max_invariant_drift = 0.0;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const std::complex<double> aa = std::polar(0.999 * std::sqrt(u01(rng)), 2.0 * std::numbers::pi * u01(rng));
    const C3Point z = example2_sample_interior(prof, rng);
    const C3Point w = example2_aut(aa, z);
    if (!(example2_phi(w, prof) < 1e-9)) ++violations;
    const double w0 = 1.0 - std::norm(z.z1), w1 = 1.0 - std::norm(w.z1);
    max_invariant_drift = std::max({max_invariant_drift, std::abs(std::norm(z.z2) * w0 - std::norm(w.z2) * w1),
                                    std::abs(std::norm(z.z3) * w0 - std::norm(w.z3) * w1)});
  }

  std::vector<std::complex<double>> as;
  for (int k = 1; k <= 20; ++k) as.emplace_back(-(1.0 - std::ldexp(1.0, -k)), 0.0);
  const OrbitTrace tr = example2_orbit_accumulation(as, {}, prof);

  ok = max_rel < 1e-6 && scan.min_norm > 0.0 && violations == 0 && tr.max_phi < 0.0 && tr.final_abs_z1 > 0.999;
  return Json{{"example", 2},
              {"profile", prof.name},
              {"gradient_max_relative_error", max_rel},
              {"boundary_min_gradient_norm", scan.min_norm},
              {"boundary_samples", scan.samples},
              {"aut_trials", 1000},
              {"aut_violations", violations},
              {"invariant_max_drift", max_invariant_drift},
              {"orbit_final_abs_z1", tr.final_abs_z1},
              {"orbit_max_phi", tr.max_phi},
              {"passed", ok}};
}

int run_example(const RunConfig& cfg, const ExampleArgs& a) {
  if (a.which != 1 && a.which != 2) throw InputError("example takes 1 or 2");
  if (a.samples < 1) throw InputError("samples must be positive");
  if (!a.verify) {
    Json rep;
    if (a.which == 1) {
      rep = Json{{"example", 1}, {"domain", domain_to_json(example1_domain())}, {"generator", to_json(example1_generator())}};
    } else {
      rep = Json{{"example", 2}, {"profile", resolve_profile(a).name}};
    }
    emit(cfg, rep, "example " + std::to_string(a.which) + " (use --verify to run the checks)");
    return kOk;
  }
  bool ok = false;
  const Json rep = a.which == 1 ? verify_example1(cfg, a, ok) : verify_example2(cfg, a, ok);
  emit(cfg, rep, "example " + std::to_string(a.which) + (ok ? ": all checks passed" : ": checks FAILED"));
  return ok ? kOk : kRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reinhardt domain toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed for all sampling")->capture_default_str();
  app.add_option("--tol", cfg.tol, "numerical tolerance")->capture_default_str();
  app.add_option("--out", cfg.out, "write the report (or CSV) to this file");
  app.add_flag("--json", cfg.json, "print the JSON report to stdout");

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "classify a normalized form");
  classify_cmd->fallthrough();
  classify_cmd->add_option("--descriptor", ca.descriptor, "form JSON (inline or file)");
  classify_cmd->add_option("--form", ca.form, "form id 11..15");
  classify_cmd->add_option("--alpha", ca.alpha);
  classify_cmd->add_option("--beta", ca.beta);
  classify_cmd->add_option("--r", ca.r);
  classify_cmd->add_option("--R", ca.R, "upper constant or 'inf'");
  classify_cmd->add_option("--k", ca.k, "required smoothness (integer or inf)")->capture_default_str();

  SearchArgs sa;
  auto* search_cmd = app.add_subcommand("search-aut", "search monomial automorphisms");
  search_cmd->fallthrough();
  search_cmd->add_option("--domain", sa.domain, "domain JSON (inline or file) or 'example1'")->required();
  search_cmd->add_option("--bound", sa.bound, "matrix entry bound")->capture_default_str();
  search_cmd->add_option("--scale-box", sa.scale_box, "log-scale search box")->capture_default_str();
  search_cmd->add_option("--scale-steps", sa.scale_steps)->capture_default_str();
  search_cmd->add_option("--resolution", sa.resolution, "sampler lattice resolution")->capture_default_str();
  search_cmd->add_option("--scan-samples", sa.scan_samples, "samples used by the coarse scale scan")->capture_default_str();
  search_cmd->add_option("--threads", sa.threads, "worker threads (0 = all cores)");

  ProbeArgs pa;
  auto* probe_cmd = app.add_subcommand("probe-line", "iterate a map on an axis disc looking for a line");
  probe_cmd->fallthrough();
  probe_cmd->add_option("--domain", pa.domain)->required();
  probe_cmd->add_option("--map", pa.map, "map JSON (inline or file)")->required();
  probe_cmd->add_option("--axis", pa.axis, "disc lies in z_axis")->capture_default_str();
  probe_cmd->add_option("--level", pa.level, "modulus of the other coordinate")->capture_default_str();
  probe_cmd->add_option("--radius", pa.radius)->capture_default_str();
  probe_cmd->add_option("--K", pa.iterations, "iterations")->capture_default_str();

  SmoothnessArgs ma;
  auto* smooth_cmd = app.add_subcommand("smoothness", "boundary class of |z1|^2 + |z2|^(1/alpha) < 1");
  smooth_cmd->fallthrough();
  smooth_cmd->add_option("--alpha", ma.alpha)->required();
  smooth_cmd->add_flag("--witness", ma.witness, "include the finite-difference table");
  smooth_cmd->add_option("--h-min", ma.h_min)->capture_default_str();

  ShadowArgs ha;
  auto* shadow_cmd = app.add_subcommand("shadow", "export the log shadow as CSV");
  shadow_cmd->fallthrough();
  shadow_cmd->add_option("--domain", ha.domain)->required();
  shadow_cmd->add_option("--bounds", ha.bounds, "u1_lo u1_hi u2_lo u2_hi")->expected(4);
  shadow_cmd->add_option("--resolution", ha.resolution)->capture_default_str();

  ExampleArgs ea;
  auto* example_cmd = app.add_subcommand("example", "built-in examples");
  example_cmd->fallthrough();
  example_cmd->add_option("which", ea.which, "1 or 2")->required();
  example_cmd->add_flag("--verify", ea.verify);
  example_cmd->add_option("--profile", ea.profile, "one, linear, quadratic, or an expression in x1, x2");
  example_cmd->add_option("--profile-dx1", ea.profile_dx1);
  example_cmd->add_option("--profile-dx2", ea.profile_dx2);
  example_cmd->add_option("--profile-c", ea.profile_c);
  example_cmd->add_option("--samples", ea.samples)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*classify_cmd) return run_classify(cfg, ca);
    if (*search_cmd) return run_search(cfg, sa);
    if (*probe_cmd) return run_probe(cfg, pa);
    if (*smooth_cmd) return run_smoothness(cfg, ma);
    if (*shadow_cmd) return run_shadow(cfg, ha);
    if (*example_cmd) return run_example(cfg, ea);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const SamplingError& e) {
    std::cerr << "sampling error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
