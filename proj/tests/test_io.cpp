#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "reinhardt/errors.hpp"
#include "reinhardt/gallery.hpp"
#include "reinhardt/io.hpp"

using namespace reinhardt;
namespace fs = std::filesystem;

namespace {
void same_domain(const ReinhardtDomain& a, const ReinhardtDomain& b) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const ModulusPoint p{std::exp(u(rng)), std::exp(u(rng))};
    const double ga = a.g(p), gb = b.g(p);
    if (std::isinf(ga)) {
      CHECK(std::isinf(gb));
    } else {
      CHECK(ga == doctest::Approx(gb).epsilon(1e-12));
    }
  }
  CHECK(axis_intersections(a) == axis_intersections(b));
}
}  // namespace

TEST_CASE("domain descriptors round-trip") {
  const std::vector<ReinhardtDomain> ds = {
      ReinhardtDomain::theorem_i(0.5),
      ReinhardtDomain::theorem_ii(-1.5, 3.0),
      ReinhardtDomain::theorem_ii(-0.5, kInfinity),
      ReinhardtDomain::theorem_iii(2.0, 5.0),
      ReinhardtDomain::theorem_iii(-1.0, kInfinity),
      ReinhardtDomain::normal_form(NormalForm::annulus_fiber(1.0, 1.0, 2.0)),
      ReinhardtDomain::normal_form(NormalForm::gaussian_punctured(0.5, 2.0)),
      ReinhardtDomain::from_expression(kExample1Expression, {false, false}),
  };
  for (const auto& d : ds) {
    const Json j = domain_to_json(d);
    const auto back = domain_from_json(parse_json(j.dump()));
    same_domain(d, back);
    CHECK(domain_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("infinity is written and read as a string") {
  const Json j = domain_to_json(ReinhardtDomain::theorem_ii(-0.5, kInfinity));
  CHECK(j["R"] == "inf");
  CHECK(std::isinf(json_extended_real(parse_json(R"({"R": "inf"})"), "R")));
  CHECK(json_extended_real(parse_json(R"({"R": 2.5})"), "R") == 2.5);
  CHECK_THROWS_AS(json_extended_real(parse_json(R"({"R": "big"})"), "R"), InputError);
  CHECK_THROWS_AS(json_extended_real(parse_json(R"({"S": 1})"), "R"), InputError);
  CHECK(json_number(std::nan("")) == "nan");
  CHECK(json_number(-kInfinity) == "-inf");
}

TEST_CASE("malformed descriptors") {
  CHECK_THROWS_AS(parse_json("{\"kind\": "), InputError);
  CHECK_THROWS_AS(domain_from_json(parse_json("[]")), InputError);
  CHECK_THROWS_AS(domain_from_json(parse_json(R"({"alpha": 1})")), InputError);
  CHECK_THROWS_AS(domain_from_json(parse_json(R"({"kind": "torus"})")), InputError);
  CHECK_THROWS_AS(domain_from_json(parse_json(R"({"kind": "theorem_i", "alpha": 0})")), InputError);
  CHECK_THROWS_AS(domain_from_json(parse_json(R"({"kind": "custom", "expr": "m1 +"})")), InputError);
  CHECK_THROWS_AS(domain_from_json(parse_json(R"({"kind": "custom", "expr": "m1", "axis1": 3})")), InputError);
  CHECK_THROWS_AS(normal_form_from_json(parse_json(R"({"kind": "normal_form", "form": 10})")), InputError);
  CHECK_THROWS_AS(normal_form_from_json(parse_json(R"({"kind": "normal_form", "form": 11.5})")), InputError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/descriptor.json"), InputError);
}

TEST_CASE("normal form JSON") {
  const NormalForm nf = NormalForm::gaussian_annulus(2.0, 1.0, 5.0);
  const Json j = to_json(nf);
  CHECK(j["form"] == 14);
  const NormalForm back = normal_form_from_json(j);
  CHECK(back.kind == nf.kind);
  CHECK(back.beta == 2.0);
  CHECK(back.r == 1.0);
  CHECK(back.R == 5.0);
}

TEST_CASE("map JSON") {
  const MonomialMap f(IntMatrix2{1, 2, 0, -1}, {0.25, -3.0});
  const Json j = to_json(f);
  CHECK(j.dump() == R"({"A":[[1,2],[0,-1]],"logscale":[0.25,-3.0]})");
  const MonomialMap back = map_from_json(j);
  CHECK(back.matrix() == f.matrix());
  CHECK(back.logscale() == f.logscale());
  CHECK_THROWS_AS(map_from_json(parse_json(R"({"A": [[1,0],[0,1]], "logscale": [0]})")), InputError);
  CHECK_THROWS_AS(map_from_json(parse_json(R"({"A": [[1,0.5],[0,1]], "logscale": [0,0]})")), InputError);
  CHECK_THROWS_AS(map_from_json(parse_json(R"({"A": [[2,0],[0,1]], "logscale": [0,0]})")), InputError);
}

TEST_CASE("report JSON shapes") {
  const auto c = classify(NormalForm::gaussian_annulus(2.0, 1.0, 5.0), SmoothnessOrder::infinity());
  const Json j = to_json(c);
  CHECK(j["case"] == "CaseIII");
  CHECK(j["parameters"]["beta"] == 2.0);
  CHECK(j["chain"].size() == 1);
  CHECK(j["oracle"]["samples"] == 1000);
  const auto r = to_json(classify(NormalForm::disc_fiber(0.3, 1.0), SmoothnessOrder::infinity()));
  CHECK(r["case"] == "Rejected");
  CHECK(r["parameters"]["reason"] == to_string(RejectReason::NotCkForRequestedK));
  CHECK_FALSE(r.contains("composite"));
  CHECK(to_json(SmoothnessClass::exactly(4))["j"] == 4);
}

TEST_CASE("write_file_atomic") {
  const fs::path dir = fs::temp_directory_path() / "reinhardt_io_test";
  fs::create_directories(dir);
  const fs::path p = dir / "out.json";
  write_file_atomic(p, "first");
  write_file_atomic(p, "second");
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "second");
  CHECK_FALSE(fs::exists(dir / "out.json.tmp"));
  CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x.json", "x"), InputError);
  fs::remove_all(dir);
}
