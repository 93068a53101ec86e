#include "reinhardt/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "reinhardt/errors.hpp"

namespace reinhardt {
namespace {

const Json& require(const Json& j, const char* field) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(field);
  if (it == j.end()) throw InputError(std::string("missing field '") + field + "'");
  return *it;
}

double number_or(const Json& j, const char* field, double fallback) {
  if (!j.contains(field)) return fallback;
  return json_extended_real(j, field);
}

bool bool_or(const Json& j, const char* field, bool fallback) {
  if (!j.contains(field)) return fallback;
  if (!j.at(field).is_boolean()) throw InputError(std::string("field '") + field + "' must be a boolean");
  return j.at(field).get<bool>();
}

std::string kind_name(TheoremCase::Kind k) {
  switch (k) {
    case TheoremCase::Kind::CaseI: return "CaseI";
    case TheoremCase::Kind::CaseII: return "CaseII";
    case TheoremCase::Kind::CaseIII: return "CaseIII";
    case TheoremCase::Kind::Rejected: return "Rejected";
  }
  return "?";
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

double json_extended_real(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return kInfinity;
    if (s == "-inf") return -kInfinity;
  }
  throw InputError(std::string("field '") + field + "' must be a number or \"inf\"");
}

Json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

ReinhardtDomain domain_from_json(const Json& j) {
  const Json& kind = require(j, "kind");
  if (!kind.is_string()) throw InputError("field 'kind' must be a string");
  const auto k = kind.get<std::string>();
  if (k == "theorem_i") return ReinhardtDomain::theorem_i(json_extended_real(j, "alpha"));
  if (k == "theorem_ii") return ReinhardtDomain::theorem_ii(json_extended_real(j, "alpha"), json_extended_real(j, "R"));
  if (k == "theorem_iii") return ReinhardtDomain::theorem_iii(json_extended_real(j, "beta"), json_extended_real(j, "R"));
  if (k == "normal_form") return ReinhardtDomain::normal_form(normal_form_from_json(j));
  if (k == "custom") {
    const Json& e = require(j, "expr");
    if (!e.is_string()) throw InputError("field 'expr' must be a string");
    return ReinhardtDomain::from_expression(e.get<std::string>(), {bool_or(j, "axis1", false), bool_or(j, "axis2", false)});
  }
  throw InputError("unknown domain kind '" + k + "'");
}

Json domain_to_json(const ReinhardtDomain& d) {
  return std::visit(
      [&](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TheoremIParams>) {
          return Json{{"kind", "theorem_i"}, {"alpha", json_number(p.alpha)}};
        } else if constexpr (std::is_same_v<T, TheoremIIParams>) {
          return Json{{"kind", "theorem_ii"}, {"alpha", json_number(p.alpha)}, {"R", json_number(p.R)}};
        } else if constexpr (std::is_same_v<T, TheoremIIIParams>) {
          return Json{{"kind", "theorem_iii"}, {"beta", json_number(p.beta)}, {"R", json_number(p.R)}};
        } else if constexpr (std::is_same_v<T, NormalForm>) {
          Json out = to_json(p);
          out["kind"] = "normal_form";
          return out;
        } else {
          if (p.expr.empty()) throw InputError("custom domain has no expression source to serialize");
          return Json{{"kind", "custom"}, {"expr", p.expr}, {"axis1", p.axes.axis1}, {"axis2", p.axes.axis2}};
        }
      },
      d.kind());
}

NormalForm normal_form_from_json(const Json& j) {
  const Json& f = require(j, "form");
  if (!f.is_number_integer()) throw InputError("field 'form' must be an integer 11..15");
  const int id = f.get<int>();
  const NormalForm nf = NormalForm::make(id, number_or(j, "alpha", 0.0), number_or(j, "beta", 0.0),
                                         number_or(j, "r", 0.0), number_or(j, "R", 1.0));
  nf.validate();
  return nf;
}

Json to_json(const NormalForm& nf) {
  Json out{{"kind", "normal_form"}, {"form", nf.id()}};
  if (nf.over_disc()) {
    out["alpha"] = json_number(nf.alpha);
  } else {
    out["beta"] = json_number(nf.beta);
  }
  if (nf.has_lower_wall()) out["r"] = json_number(nf.r);
  out["R"] = json_number(nf.R);
  return out;
}

MonomialMap map_from_json(const Json& j) {
  const Json& A = require(j, "A");
  const Json& c = require(j, "logscale");
  auto bad = [] { return InputError("map needs \"A\": [[a11,a12],[a21,a22]] and \"logscale\": [c1,c2]"); };
  if (!A.is_array() || A.size() != 2 || !c.is_array() || c.size() != 2) throw bad();
  std::int64_t e[4];
  for (int r = 0; r < 2; ++r) {
    if (!A[r].is_array() || A[r].size() != 2) throw bad();
    for (int k = 0; k < 2; ++k) {
      if (!A[r][k].is_number_integer()) throw InputError("matrix entries must be integers");
      e[2 * r + k] = A[r][k].get<std::int64_t>();
    }
  }
  if (!c[0].is_number() || !c[1].is_number()) throw bad();
  return MonomialMap({e[0], e[1], e[2], e[3]}, {c[0].get<double>(), c[1].get<double>()});
}

Json to_json(const MonomialMap& f) {
  const auto& A = f.matrix();
  return Json{{"A", {{A.a11, A.a12}, {A.a21, A.a22}}}, {"logscale", {f.logscale()[0], f.logscale()[1]}}};
}

Json to_json(const SearchReport& rep) {
  Json classes = Json::array();
  for (const auto& fc : rep.classes) {
    Json c = to_json(fc.map);
    c["shape"] = fc.shape ? Json(to_string(*fc.shape)) : Json(nullptr);
    c["objective"] = fc.objective;
    c["max_image_value"] = json_number(fc.max_image_value);
    classes.push_back(std::move(c));
  }
  const auto& o = rep.options;
  return Json{{"classes", classes},
              {"infinite_mod_torus", rep.infinite_mod_torus},
              {"generator", rep.generator ? to_json(*rep.generator) : Json(nullptr)},
              {"restricted_to_shapes", rep.restricted_to_shapes},
              {"matrices_examined", rep.matrices_examined},
              {"samples", rep.samples},
              {"exterior_samples", rep.exterior_samples},
              {"options",
               {{"entry_bound", o.entry_bound},
                {"scale_box", o.scale_box},
                {"scale_steps", o.scale_steps},
                {"tol", o.tol},
                {"class_tol", o.class_tol},
                {"scan_samples", o.scan_samples},
                {"minima_per_matrix", o.minima_per_matrix},
                {"sampler",
                 {{"lo", o.sampler.lo},
                  {"hi", o.sampler.hi},
                  {"resolution", o.sampler.resolution},
                  {"shell_rays", o.sampler.shell_rays}}}}}};
}

Json to_json(const OrbitCertificate& cert) {
  Json discs = Json::array();
  for (const auto& s : cert.witness)
    discs.push_back({{"axis", s.axis}, {"level", json_number(s.level)}, {"radius", json_number(s.radius)}});
  Json out{{"verdict", to_string(cert.verdict)}, {"iterations", cert.iterations}, {"reason", cert.reason}};
  if (cert.verdict == ProbeVerdict::ContainsLine)
    out["line"] = {{"axis", cert.line_axis}, {"level", json_number(cert.line_level)}};
  out["witness"] = discs;
  return out;
}

Json to_json(const SmoothnessClass& c) {
  Json out{{"class", c.to_string()}};
  if (c.kind == SmoothnessClass::Kind::CExactly) out["j"] = c.j;
  out["near_exceptional"] = c.near_exceptional;
  return out;
}

Json to_json(const SmoothnessWitness& w) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < w.steps.size(); ++i)
    rows.push_back({{"h", w.steps[i]}, {"d_j", json_number(w.order_j[i])}, {"d_j1", json_number(w.order_j1[i])}});
  return Json{{"confirmed", w.confirmed},
              {"direction", w.direction},
              {"decades", w.decades},
              {"order_j_ratio", json_number(w.order_j_ratio)},
              {"growth_factor", json_number(w.growth_factor)},
              {"table", rows}};
}

Json to_json(const EquivalenceChain& chain) {
  Json steps = Json::array();
  for (const auto& s : chain.steps) {
    Json step{{"step", s.name()}};
    step["map"] = to_json(s.as_map());
    steps.push_back(std::move(step));
  }
  return steps;
}

Json to_json(const Classification& c) {
  const TheoremCase& tc = c.theorem_case;
  Json params = Json::object();
  switch (tc.kind) {
    case TheoremCase::Kind::CaseI:
      params["alpha"] = json_number(tc.alpha);
      break;
    case TheoremCase::Kind::CaseII:
      params["alpha"] = json_number(tc.alpha);
      params["R"] = json_number(tc.R);
      break;
    case TheoremCase::Kind::CaseIII:
      params["beta"] = json_number(tc.beta);
      params["R"] = json_number(tc.R);
      break;
    case TheoremCase::Kind::Rejected:
      params["reason"] = tc.reason ? to_string(*tc.reason) : "";
      break;
  }
  Json out{{"case", kind_name(tc.kind)}, {"parameters", params}, {"chain", to_json(c.chain)}};
  if (!c.chain.steps.empty()) out["composite"] = to_json(c.chain.composite());
  out["oracle"] = {{"samples", c.oracle.samples},
                   {"forward_violations", c.oracle.forward_violations},
                   {"inverse_violations", c.oracle.inverse_violations},
                   {"max_violation", json_number(c.oracle.max_violation)},
                   {"margin", c.oracle.margin}};
  out["notes"] = c.notes;
  return out;
}

Json to_json(const FibrationReport& rep) {
  Json pieces = Json::array();
  for (const auto& p : rep.pieces)
    pieces.push_back({{"log_interval", {p.lo, p.hi}},
                      {"bounded", p.bounded},
                      {"samples", p.samples},
                      {"unassigned", p.unassigned},
                      {"components_per_period", p.components},
                      {"max_d_width", p.max_d_width},
                      {"s_extent", p.s_extent}});
  return Json{{"image_in_annulus", rep.image_in_annulus},
              {"image_log_range", {rep.image_lo, rep.image_hi}},
              {"pieces_cover_image", rep.pieces_cover_image},
              {"pieces", pieces}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw InputError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move output into place at " + path.string());
  }
}

}  // namespace reinhardt
