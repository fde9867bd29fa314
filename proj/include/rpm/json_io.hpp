#pragma once

#include <cstdint>
#include <string>

#include "rpm/abduction.hpp"
#include "rpm/instance.hpp"
#include "rpm/perception.hpp"
#include "rpm/scene.hpp"
#include "rpm/selection.hpp"
#include "rpm/solver.hpp"

namespace rpm {

inline constexpr int kInstanceSchemaVersion = 1;

// Instance files (.rpm.json). Serialization is canonical: re-serializing a
// parsed instance is byte-identical.
std::string instance_to_json(const PuzzleInstance& instance);
PuzzleInstance instance_from_json(const std::string& text);  // throws ParseError
PuzzleInstance load_instance(const std::string& path);
void save_instance(const PuzzleInstance& instance, const std::string& path);

// Debug dumps (linear probabilities, 12 significant digits).
std::string panel_belief_to_json(const PanelBelief& belief);
std::string posteriors_to_json(const SolveResult& result);
std::string answer_report_to_json(const AnswerReport& report);

// Domain file: {"types": [...], "sizes": int, "colors": int}.
AttributeDomain domain_from_json(const std::string& text);
// Noise model file: {"objectiveness": eps, "type": eps-or-matrix, ...}.
NoiseModel noise_model_from_json(const std::string& text);

std::string read_file(const std::string& path);

// Stable 64-bit content hash (FNV-1a) used by generation manifests.
std::uint64_t content_hash(const std::string& bytes);

}  // namespace rpm
