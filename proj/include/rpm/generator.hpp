#pragma once

#include <cstdint>

#include "rpm/instance.hpp"

namespace rpm {

// Procedurally synthesizes a complete instance: samples one rule per axis per
// component, realizes 9 panels row by row through the forward models, rejects
// ambiguous instantiations (any other catalog rule also consistent with the
// realized context), and builds bisection-tree distractors.
// Deterministic in (config, seed). Throws GenerationError if the rejection
// budget (100 attempts per axis) is exhausted.
PuzzleInstance generate(const Configuration& config, std::uint64_t seed,
                        const AttributeDomain& domain = AttributeDomain::standard());

// Attribute-bisection distractors: three levels, each perturbing one sampled
// (component, axis) pair to a fresh value; 8 leaves, leaf 0 == answer.
// NumberPosition perturbations always change the cardinality.
std::array<PanelSymbol, 8> make_distractors(const PanelSymbol& answer,
                                            const Configuration& config,
                                            const AttributeDomain& domain,
                                            std::uint64_t seed);

}  // namespace rpm
