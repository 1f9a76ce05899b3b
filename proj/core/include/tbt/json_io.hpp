#pragma once

// JSON encodings shared by the library, the CLI and the tests.

#include <string>

#include <nlohmann/json.hpp>

#include "tbt/kraft.hpp"
#include "tbt/newton.hpp"
#include "tbt/orbit.hpp"

namespace tbt::io {

using Json = nlohmann::json;

// {"p", "n", "m", "modulus"}
Json to_json(const RingDescriptor& ring);
RingPtr ring_from_json(const Json& j);

// [c_0, ..., c_{n-1}], each in [0, p^m).
Json element_to_json(const WittRing& ring, const Coeffs& a);
Coeffs element_from_json(const WittRing& ring, const Json& j);

// {"ring", "rows", "cols", "entries"}
Json to_json(const MatrixW& x);
MatrixW matrix_from_json(const Json& j);

// {"c", "d", "ring", "S", "g"}; A and V are rebuilt and verified on load.
Json to_json(const DieudonneTruncation& D);
DieudonneTruncation truncation_from_json(const Json& j);

// {"r", "c", "pi"}
Json to_json(const KraftDatum& datum);
KraftDatum kraft_from_json(const Json& j);

// {"blocks": [[c, d], ...], "slopes": ["num/den", ...]}
Json to_json(const NewtonPolygon& np);
NewtonPolygon polygon_from_json(const Json& j);

std::string rational_to_string(const Rational& x);
Rational rational_from_string(const std::string& s);

// {"c", "d", "ring", "S", "symplectic"}
Json to_json(const ActionContext& ctx);
ActionContext context_from_json(const Json& j);

// {"context", "seed", "orbit_size", "canonical", "stabilizer_count", "group_order"}
Json orbit_report_to_json(const ActionContext& ctx, const OrbitReport& report,
                          std::uint64_t stabilizer_count, std::uint64_t group_order);

Json to_json(const DimFit& fit);
Json to_json(const LevelExperimentReport& report);

/// Reads a file into a JSON document; InvalidArgument on I/O or parse failure.
Json read_file(const std::string& path);

}  // namespace tbt::io
