#pragma once

// JSON ingestion for triples, states and metric spaces.
//
// Matrix entries are numbers or {"re": x, "im": y}. Metric entries may be the
// string "inf". Every loader accepts either a file path or inline JSON text
// (anything whose first non-blank character is '{').

#include <string>

#include "specdist/triples.hpp"

namespace specdist {

/// Triple document:
///   { "label", "dim", "dirac", "grading"?, "algebra": { "kind":
///     "diagonal" | "full_matrix" | "explicit", "basis"?, "defining"?,
///     "multiplicity"? } }
/// or a builtin { "builtin": "two_point", "lambda" } (also "simplex3",
/// "bloch_conjugation", "bloch_flip", "bloch_moyal", "finite_metric" with
/// "metric"), or a bare metric document, read as its finite-metric triple.
/// An optional "evenize": true applies evenize().
Triple parse_triple(const std::string& text);
Triple load_triple(const std::string& path_or_json);
std::string triple_to_json(const Triple& t);

/// State document: { "kind": "density", "rho" } | { "kind": "bloch", "x" } |
/// { "kind": "simplex", "p" } | { "kind": "coeffs", "values" } |
/// { "kind": "pure", "v" }, with optional "label".
State parse_state(const std::string& text);
State load_state(const std::string& path_or_json);
std::string state_to_json(const State& s);

/// Metric document: { "size", "g" }.
MetricSpace parse_metric(const std::string& text);
MetricSpace load_metric(const std::string& path_or_json);
std::string metric_to_json(const MetricSpace& x);

/// Contents of a file, or the argument itself when it is inline JSON.
std::string read_json_argument(const std::string& path_or_json);

}  // namespace specdist
