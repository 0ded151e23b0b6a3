#pragma once

// Operator file format:
//   {"factors": [{"party": "A", "index": 1, "dim": 2}, ...],
//    "matrix":  [[[re, im], ...], ...]}
// `matrix` is row-major with one [re, im] pair per entry. Extra top-level keys
// are preserved by callers that need them (witness and Choi metadata).

#include <filesystem>
#include <string>

#include "json.hpp"
#include "witness_forge/operator.hpp"

namespace witness_forge::io {

using json = nlohmann::json;

json factors_to_json(const PartySystem& system);
PartySystem factors_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

json operator_to_json(const LabeledOperator& op);
/// Validates squareness, dimension product and Hermiticity.
LabeledOperator operator_from_json(const json& j);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

LabeledOperator read_operator(const std::filesystem::path& path);
void write_operator(const std::filesystem::path& path, const LabeledOperator& op);

}  // namespace witness_forge::io
