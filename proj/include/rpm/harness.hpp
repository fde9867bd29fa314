#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rpm/solver.hpp"

namespace rpm {

// One aggregated sweep cell (configuration x epsilon).
struct SweepRow {
    std::string config;
    double epsilon = 0.0;
    int instance_count = 0;
    double answer_accuracy = 0.0;
    // Fraction of (instance, component) pairs whose chosen rule matches the
    // ground truth, per axis.
    std::array<double, kAxisCount> abduction_accuracy{};
    double mean_ground_truth_mass = 0.0;  // over components and axes
    double mean_cross_entropy = 0.0;
    int failures = 0;               // instances flagged and skipped
    double wall_ms_per_instance = 0.0;  // filled only when timing is enabled
};

struct SweepOptions {
    SelectMode mode = SelectMode::Argmax;
    bool column_mode = false;
    SelectionOptions selection;
    bool timing = false;  // wall-time column is omitted by default (stable CSV)
    int threads = 0;      // 0: RPM_THREADS env or hardware concurrency
};

int effective_thread_count(int requested);

SweepRow run_sweep_cell(const Configuration& config, double epsilon, int count,
                        std::uint64_t seed0, const SweepOptions& opts,
                        const AttributeDomain& domain = AttributeDomain::standard());

std::vector<SweepRow> run_sweep(const std::vector<std::string>& configs,
                                const std::vector<double>& epsilons, int count,
                                std::uint64_t seed0, const SweepOptions& opts,
                                const AttributeDomain& domain = AttributeDomain::standard());

std::string sweep_to_csv(const std::vector<SweepRow>& rows, bool timing);

// Writes `count` instance files seeded seed0..seed0+count-1 into out_dir plus
// a manifest.json listing per-file content hashes. Returns the file names.
std::vector<std::string> generate_to_dir(const Configuration& config, int count,
                                         std::uint64_t seed0, const std::string& out_dir,
                                         const AttributeDomain& domain =
                                             AttributeDomain::standard());

}  // namespace rpm
