#include "rpm/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rpm/generator.hpp"
#include "rpm/json_io.hpp"
#include "rpm/render.hpp"

namespace rpm {

namespace fs = std::filesystem;

int effective_thread_count(int requested) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("RPM_THREADS")) n = std::atoi(env);
        if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
        if (n <= 0) n = 1;
    }
    return n;
}

namespace {

// Deterministic parallel map: results land in a slot per index regardless of
// scheduling.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

SweepRow run_sweep_cell(const Configuration& config, double epsilon, int count,
                        std::uint64_t seed0, const SweepOptions& opts,
                        const AttributeDomain& domain) {
    struct InstanceResult {
        bool failed = false;
        bool correct = false;
        double cross_entropy = 0.0;
        std::array<int, kAxisCount> axis_hits{};
        int components = 0;
        double gt_mass_sum = 0.0;
        int gt_mass_terms = 0;
    };
    std::vector<InstanceResult> results(count);

    const auto t0 = std::chrono::steady_clock::now();
    parallel_for(count, effective_thread_count(opts.threads), [&](int i) {
        InstanceResult& r = results[i];
        try {
            const PuzzleInstance inst = generate(config, seed0 + i, domain);
            SolveOptions sopts;
            sopts.epsilon = epsilon;
            sopts.seed = inst.seed;
            sopts.mode = opts.mode;
            sopts.column_mode = opts.column_mode;
            sopts.selection = opts.selection;
            const SolveResult res = solve(inst, sopts, domain);
            r.correct = res.correct;
            r.cross_entropy = res.cross_entropy;
            r.components = static_cast<int>(res.axes.size());
            for (const auto& comp : res.axes)
                for (int a = 0; a < kAxisCount; ++a) {
                    if (comp[a].chosen_matches_truth) ++r.axis_hits[a];
                    r.gt_mass_sum += comp[a].ground_truth_mass;
                    ++r.gt_mass_terms;
                }
        } catch (const std::exception&) {
            r.failed = true;
        }
    });
    const auto t1 = std::chrono::steady_clock::now();

    SweepRow row;
    row.config = config.name;
    row.epsilon = epsilon;
    int ok = 0;
    std::array<int, kAxisCount> hits{};
    int comp_total = 0;
    double gt_sum = 0.0;
    int gt_terms = 0;
    for (const auto& r : results) {
        if (r.failed) {
            ++row.failures;
            continue;
        }
        ++ok;
        if (r.correct) row.answer_accuracy += 1.0;
        row.mean_cross_entropy += r.cross_entropy;
        for (int a = 0; a < kAxisCount; ++a) hits[a] += r.axis_hits[a];
        comp_total += r.components;
        gt_sum += r.gt_mass_sum;
        gt_terms += r.gt_mass_terms;
    }
    row.instance_count = ok;
    if (ok > 0) {
        row.answer_accuracy /= ok;
        row.mean_cross_entropy /= ok;
    }
    for (int a = 0; a < kAxisCount; ++a)
        row.abduction_accuracy[a] = comp_total > 0 ? static_cast<double>(hits[a]) / comp_total : 0.0;
    row.mean_ground_truth_mass = gt_terms > 0 ? gt_sum / gt_terms : 0.0;
    if (opts.timing && count > 0)
        row.wall_ms_per_instance =
            std::chrono::duration<double, std::milli>(t1 - t0).count() / count;
    return row;
}

std::vector<SweepRow> run_sweep(const std::vector<std::string>& configs,
                                const std::vector<double>& epsilons, int count,
                                std::uint64_t seed0, const SweepOptions& opts,
                                const AttributeDomain& domain) {
    std::vector<SweepRow> rows;
    for (const auto& name : configs) {
        const Configuration& config = Configuration::by_name(name);
        for (double eps : epsilons)
            rows.push_back(run_sweep_cell(config, eps, count, seed0, opts, domain));
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, bool timing) {
    std::ostringstream out;
    out << "config,epsilon,instances,answer_accuracy,abd_acc_numberposition,"
           "abd_acc_type,abd_acc_size,abd_acc_color,mean_gt_rule_mass,"
           "mean_cross_entropy,failures";
    if (timing) out << ",wall_ms_per_instance";
    out << "\n";
    out << std::fixed << std::setprecision(6);
    for (const auto& r : rows) {
        out << r.config << "," << r.epsilon << "," << r.instance_count << ","
            << r.answer_accuracy;
        for (int a = 0; a < kAxisCount; ++a) out << "," << r.abduction_accuracy[a];
        out << "," << r.mean_ground_truth_mass << "," << r.mean_cross_entropy << ","
            << r.failures;
        if (timing) out << "," << r.wall_ms_per_instance;
        out << "\n";
    }
    return out.str();
}

std::vector<std::string> generate_to_dir(const Configuration& config, int count,
                                         std::uint64_t seed0, const std::string& out_dir,
                                         const AttributeDomain& domain) {
    fs::create_directories(out_dir);
    nlohmann::ordered_json manifest;
    manifest["config"] = config.name;
    manifest["count"] = count;
    manifest["seed0"] = seed0;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    std::vector<std::string> names;
    for (int i = 0; i < count; ++i) {
        const std::uint64_t seed = seed0 + i;
        const PuzzleInstance inst = generate(config, seed, domain);
        const std::string name = config.name + "_" + std::to_string(seed) + ".rpm.json";
        const std::string text = instance_to_json(inst);
        try {
            write_file((fs::path(out_dir) / name).string(), text);
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("generate: ") + e.what());
        }
        nlohmann::ordered_json entry;
        entry["file"] = name;
        entry["seed"] = seed;
        std::ostringstream h;
        h << std::hex << std::setw(16) << std::setfill('0') << content_hash(text);
        entry["hash"] = h.str();
        entries.push_back(entry);
        names.push_back(name);
    }
    manifest["instances"] = entries;
    write_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
    return names;
}

}  // namespace rpm
