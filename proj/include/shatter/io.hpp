#pragma once

// JSON file formats. Rationals are always written as "num/den" strings; the
// readers also accept plain integer strings and JSON integers.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "shatter/constructions.hpp"
#include "shatter/gadget.hpp"
#include "shatter/geometry.hpp"
#include "shatter/set_system.hpp"

namespace shatter::io {

using Json = nlohmann::ordered_json;

/// Malformed document; the message names the offending field.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& doc);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& doc);

Json rational_to_json(const Rational& v);
Rational rational_from_json(const Json& j, const std::string& field);

// {"ground_size": n, "sets": [[i, ...], ...]}
Json set_system_to_json(const SetSystem& s);
SetSystem set_system_from_json(const Json& j);

// {"dim": d, "points": [["num/den", ...], ...]}
Json point_set_to_json(const std::vector<Point>& points, std::size_t dim);
std::vector<Point> point_set_from_json(const Json& j, std::size_t* dim_out = nullptr);

// {"dim": d, "b": [...], "tau": "num/den"}
Json halfspace_to_json(const RestrictedHalfspace& h);
RestrictedHalfspace halfspace_from_json(const Json& j);

// {"p": [...]}
Json hyperplane_to_json(const DualHyperplane& h);
DualHyperplane hyperplane_from_json(const Json& j);

// {"ambient_dim": d, "vertices": [[...], ...]}
Json simplex_to_json(const OpenSimplex& s);
OpenSimplex simplex_from_json(const Json& j);

// {"n": n, "dim": d, "boxes": [{"lo": [...], "hi": [...]}, ...],
//  "witnesses": {"<excluded-mask-decimal>": [[...], ...], ...}}
Json gadget_to_json(const BoxGadget& g, bool include_witnesses = true);
BoxGadget gadget_from_json(const Json& j);

// {"d", "k", "gadget", "points", "alpha": [{"original": [...], "rescaled": [...]}, ...]}
Json theorem1_to_json(const Theorem1Instance& inst);
Theorem1Instance theorem1_from_json(const Json& j);

// theorem1 fields plus "hyperplanes": [{"p": [...]}, ...]
Json theorem2_to_json(const Theorem2Instance& inst);
Theorem2Instance theorem2_from_json(const Json& j);

// {"subset": [indices], "halfspaces": [...]} / {"subset": [indices], "simplex": {...}}
Json union_witness_to_json(Mask subset, const std::vector<RestrictedHalfspace>& halfspaces);
Json simplex_witness_to_json(Mask subset, const OpenSimplex& simplex);

}  // namespace shatter::io
