// Command-line surface: generation, solving, evaluation sweeps, rendering.

#include <filesystem>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "rpm/errors.hpp"
#include "rpm/harness.hpp"
#include "rpm/json_io.hpp"
#include "rpm/kernels.hpp"
#include "rpm/render.hpp"

namespace fs = std::filesystem;
using namespace rpm;

namespace {

AttributeDomain load_domain(const std::string& path) {
    if (path.empty()) return AttributeDomain::standard();
    return domain_from_json(read_file(path));
}

int cmd_generate(const std::string& config_name, int count, std::uint64_t seed,
                 const std::string& out_dir, const std::string& domain_file) {
    const auto domain = load_domain(domain_file);
    const auto& config = Configuration::by_name(config_name);
    const auto names = generate_to_dir(config, count, seed, out_dir, domain);
    std::cout << "wrote " << names.size() << " instances + manifest.json to "
              << out_dir << "\n";
    return 0;
}

int cmd_solve(const std::string& instance_file, double epsilon, std::uint64_t seed,
              const std::string& mode, bool column_mode, bool executed_mode_only,
              const std::string& render_path, const std::string& dump_posterior,
              const std::string& domain_file, const std::string& noise_file) {
    const auto domain = load_domain(domain_file);
    const PuzzleInstance inst = load_instance(instance_file);

    SolveOptions opts;
    opts.epsilon = epsilon;
    opts.seed = seed;
    opts.mode = mode == "sample" ? SelectMode::Sample : SelectMode::Argmax;
    opts.column_mode = column_mode;
    opts.selection.executed_mode_only = executed_mode_only;
    NoiseModel noise;
    if (!noise_file.empty()) {
        noise = noise_model_from_json(read_file(noise_file));
        opts.noise = &noise;
    }

    const SolveResult res = solve(inst, opts, domain);

    std::cout << "chosen: " << res.report.chosen
              << " (answer_index: " << inst.answer_index << ", "
              << (res.correct ? "correct" : "wrong") << ")\n";
    std::cout << std::fixed << std::setprecision(6);
    std::cout << "divergences:";
    for (double d : res.report.divergences) std::cout << " " << d;
    std::cout << "\n";
    for (std::size_t c = 0; c < res.axes.size(); ++c) {
        for (const auto& out : res.axes[c]) {
            std::cout << "component " << c << " " << std::setw(14) << std::left
                      << axis_name(out.posterior.axis) << " -> " << std::setw(16)
                      << rule_name(out.chosen)
                      << " p(truth)=" << out.ground_truth_mass << "\n";
        }
    }
    for (const auto& w : res.warnings) std::cout << "warning: " << w << "\n";

    if (!dump_posterior.empty()) write_file(dump_posterior, posteriors_to_json(res));
    if (!render_path.empty()) {
        const auto [symbol, raster] =
            sample_and_render(res.prediction, inst.config(), domain, seed);
        write_file(render_path, to_pgm(raster));
        std::cout << "rendered sampled answer to " << render_path << "\n";
    }
    return 0;
}

int cmd_sweep(std::vector<std::string> configs, std::vector<double> epsilons, int count,
              std::uint64_t seed, const std::string& out_csv, bool timing,
              const std::string& mode, bool column_mode, bool executed_mode_only,
              const std::string& domain_file) {
    const auto domain = load_domain(domain_file);
    if (configs.empty())
        for (const auto& c : Configuration::all()) configs.push_back(c.name);
    if (epsilons.empty()) epsilons = {0.0};

    SweepOptions opts;
    opts.mode = mode == "sample" ? SelectMode::Sample : SelectMode::Argmax;
    opts.column_mode = column_mode;
    opts.selection.executed_mode_only = executed_mode_only;
    opts.timing = timing;

    const auto rows = run_sweep(configs, epsilons, count, seed, opts, domain);
    const std::string csv = sweep_to_csv(rows, timing);
    if (out_csv.empty()) {
        std::cout << csv;
    } else {
        write_file(out_csv, csv);
        std::cout << "wrote " << rows.size() << " rows to " << out_csv << "\n";
    }
    return 0;
}

int cmd_render(const std::string& instance_file, const std::string& out_dir, bool svg,
               bool rotate, std::uint64_t rotation_seed, const std::string& domain_file) {
    const auto domain = load_domain(domain_file);
    const PuzzleInstance inst = load_instance(instance_file);
    const auto& config = inst.config();
    fs::create_directories(out_dir);
    RenderOptions opts;
    opts.rotate = rotate;
    opts.rotation_seed = rotation_seed;

    const auto emit = [&](const PanelSymbol& panel, const std::string& stem) {
        write_file((fs::path(out_dir) / (stem + ".pgm")).string(),
                   to_pgm(render_panel(panel, config, domain, opts)));
        if (svg)
            write_file((fs::path(out_dir) / (stem + ".svg")).string(),
                       to_svg(panel, config, domain, opts));
    };
    for (int i = 0; i < 8; ++i) emit(inst.context[i], "context_" + std::to_string(i));
    for (int i = 0; i < 8; ++i) emit(inst.candidates[i], "candidate_" + std::to_string(i));
    std::cout << "rendered 16 panels to " << out_dir << "\n";
    return 0;
}

int cmd_oracle_check(std::vector<std::string> configs, int count, std::uint64_t seed,
                     const std::string& domain_file) {
    const auto domain = load_domain(domain_file);
    if (configs.empty())
        for (const auto& c : Configuration::all()) configs.push_back(c.name);
    bool all_ok = true;
    for (const auto& name : configs) {
        const auto& config = Configuration::by_name(name);
        int answer_ok = 0, abd_ok = 0, abd_total = 0;
        for (int i = 0; i < count; ++i) {
            const PuzzleInstance inst = generate(config, seed + i, domain);
            SolveOptions opts;
            opts.epsilon = 0.0;
            opts.seed = inst.seed;
            const SolveResult res = solve(inst, opts, domain);
            if (res.correct) ++answer_ok;
            for (const auto& comp : res.axes)
                for (const auto& out : comp) {
                    ++abd_total;
                    if (out.chosen_matches_truth) ++abd_ok;
                }
        }
        const bool ok = answer_ok == count && abd_ok == abd_total;
        all_ok = all_ok && ok;
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << std::setw(8) << std::left << name
                  << " answers " << answer_ok << "/" << count << ", abduced rules "
                  << abd_ok << "/" << abd_total << "\n";
    }
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probabilistic abduction-and-execution solver for "
                 "Raven's Progressive Matrices"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string config_name = "Center", domain_file, noise_file, mode = "argmax";
    std::string instance_file, out_path, render_path, dump_posterior;
    std::vector<std::string> config_list;
    std::vector<double> epsilons;
    double epsilon = 0.0;
    int count = 10;
    std::uint64_t seed = 0, rotation_seed = 0;
    bool column_mode = false, executed_mode_only = false, timing = false;
    bool svg = false, rotate = false;

    auto* gen = app.add_subcommand("generate", "Generate instance files + manifest");
    gen->add_option("--config", config_name, "Configuration name")->required();
    gen->add_option("--count", count, "Number of instances");
    gen->add_option("--seed", seed, "First seed");
    gen->add_option("--out", out_path, "Output directory")->required();
    gen->add_option("--domain", domain_file, "Domain JSON file");

    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance file");
    solve_cmd->add_option("instance", instance_file, "Instance .rpm.json")->required();
    solve_cmd->add_option("--epsilon", epsilon, "Perception noise in [0,1]");
    solve_cmd->add_option("--seed", seed, "Sampling seed");
    solve_cmd->add_option("--mode", mode, "Rule selection: argmax|sample")
        ->check(CLI::IsMember({"argmax", "sample"}));
    solve_cmd->add_flag("--column-mode", column_mode, "Abduce along columns");
    solve_cmd->add_flag("--executed-mode-only", executed_mode_only,
                        "Score only the executed NumberPosition mode");
    solve_cmd->add_option("--render", render_path, "Write sampled answer PGM here");
    solve_cmd->add_option("--dump-posterior", dump_posterior, "Write posterior JSON here");
    solve_cmd->add_option("--domain", domain_file, "Domain JSON file");
    solve_cmd->add_option("--noise", noise_file, "Noise model JSON file");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run an evaluation grid, write CSV");
    sweep_cmd->add_option("--config", config_list, "Configurations (default: all)");
    sweep_cmd->add_option("--epsilon", epsilons, "Noise levels (default: 0)");
    sweep_cmd->add_option("--count", count, "Instances per cell");
    sweep_cmd->add_option("--seed", seed, "First seed");
    sweep_cmd->add_option("--out", out_path, "Output CSV (default: stdout)");
    sweep_cmd->add_flag("--timing", timing, "Include wall-time column (not byte-stable)");
    sweep_cmd->add_option("--mode", mode, "Rule selection: argmax|sample")
        ->check(CLI::IsMember({"argmax", "sample"}));
    sweep_cmd->add_flag("--column-mode", column_mode, "Abduce along columns");
    sweep_cmd->add_flag("--executed-mode-only", executed_mode_only,
                        "Score only the executed NumberPosition mode");
    sweep_cmd->add_option("--domain", domain_file, "Domain JSON file");

    auto* render_cmd = app.add_subcommand("render", "Render an instance's panels");
    render_cmd->add_option("instance", instance_file, "Instance .rpm.json")->required();
    render_cmd->add_option("--out", out_path, "Output directory")->required();
    render_cmd->add_flag("--svg", svg, "Also emit SVG");
    render_cmd->add_flag("--rotate", rotate, "Random render-only rotations");
    render_cmd->add_option("--rotation-seed", rotation_seed, "Rotation seed");
    render_cmd->add_option("--domain", domain_file, "Domain JSON file");

    auto* oracle = app.add_subcommand("oracle-check",
                                      "Verify exactness at epsilon = 0");
    oracle->add_option("--config", config_list, "Configurations (default: all)");
    oracle->add_option("--count", count, "Instances per configuration");
    oracle->add_option("--seed", seed, "First seed");
    oracle->add_option("--domain", domain_file, "Domain JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed())
            return cmd_generate(config_name, count, seed, out_path, domain_file);
        if (solve_cmd->parsed())
            return cmd_solve(instance_file, epsilon, seed, mode, column_mode,
                             executed_mode_only, render_path, dump_posterior,
                             domain_file, noise_file);
        if (sweep_cmd->parsed())
            return cmd_sweep(config_list, epsilons, count, seed, out_path, timing, mode,
                             column_mode, executed_mode_only, domain_file);
        if (render_cmd->parsed())
            return cmd_render(instance_file, out_path, svg, rotate, rotation_seed,
                              domain_file);
        if (oracle->parsed())
            return cmd_oracle_check(config_list, count, seed, domain_file);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
