#ifndef REINHARDT_IO_HPP_
#define REINHARDT_IO_HPP_

#include <filesystem>
#include <string>

#include <json.hpp>

#include "reinhardt/domain.hpp"
#include "reinhardt/forms.hpp"
#include "reinhardt/gallery.hpp"
#include "reinhardt/monomial.hpp"
#include "reinhardt/normal_forms.hpp"
#include "reinhardt/smoothness.hpp"

namespace reinhardt {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Parses JSON text; malformed input throws InputError.
Json parse_json(const std::string& text);
Json read_json_file(const std::filesystem::path& path);

/// Accepts a number or the string "inf".
double json_extended_real(const Json& j, const char* field);
/// Numbers as-is, infinities as "inf"/"-inf", NaN as "nan".
Json json_number(double x);

// Domain descriptor:
//   {"kind": "theorem_i"|"theorem_ii"|"theorem_iii"|"normal_form"|"custom",
//    "alpha", "beta", "R" (number or "inf"), "r", "form", "axis1", "axis2", "expr"}
ReinhardtDomain domain_from_json(const Json& j);
/// Throws InputError for custom domains without an expression source.
Json domain_to_json(const ReinhardtDomain& d);

NormalForm normal_form_from_json(const Json& j);
Json to_json(const NormalForm& nf);

/// {"A": [[a11, a12], [a21, a22]], "logscale": [c1, c2]}
MonomialMap map_from_json(const Json& j);
Json to_json(const MonomialMap& f);

Json to_json(const SearchReport& rep);
Json to_json(const OrbitCertificate& cert);
Json to_json(const SmoothnessClass& c);
Json to_json(const SmoothnessWitness& w);
Json to_json(const EquivalenceChain& chain);
Json to_json(const Classification& c);
Json to_json(const FibrationReport& rep);

/// Writes through a sibling temporary file and renames it into place, so the
/// target is never left partially written. Throws InputError on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace reinhardt

#endif  // REINHARDT_IO_HPP_
