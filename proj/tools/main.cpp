// hpfnav command line: run missions, compare variants, solve fields, and
// validate scenario files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hpfnav/artifacts.hpp"
#include "hpfnav/errors.hpp"
#include "hpfnav/guidance.hpp"
#include "hpfnav/mission.hpp"

namespace {

std::string default_out_dir(const std::string& scenario_name) {
    const char* env = std::getenv("HPFNAV_OUT");
    std::string base = env && *env ? env : "out";
    return base + "/" + scenario_name;
}

void print_result(const hpfnav::MissionResult& r, const std::string& name) {
    hpfnav::write_summary(r, name, std::cout);
}

int cmd_run(const std::string& path, std::optional<uint64_t> seed,
            std::string out_dir, const std::vector<std::string>& overrides) {
    hpfnav::Scenario scenario = hpfnav::load_scenario(path, overrides);
    uint64_t s = seed.value_or(scenario.seed);
    hpfnav::Mission mission = run_mission(scenario, scenario.config, s);
    if (out_dir.empty()) out_dir = default_out_dir(scenario.name);
    auto files = hpfnav::render_artifacts(scenario, mission, out_dir);
    print_result(mission.result, scenario.name);
    std::cout << "artifacts=" << out_dir << " (" << files.size() << " files)\n";
    return mission.result.status == hpfnav::MissionStatus::Success ? 0 : 1;
}

int cmd_compare(const std::string& path, const std::string& variants,
                std::optional<uint64_t> seed_base, int seeds,
                const std::vector<std::string>& overrides) {
    hpfnav::Scenario scenario = hpfnav::load_scenario(path, overrides);
    hpfnav::CompareVariant variant;
    if (variants == "apriori")
        variant = hpfnav::CompareVariant::AprioriVsSensor;
    else if (variants == "modulation")
        variant = hpfnav::CompareVariant::ModulatedVsConstant;
    else {
        std::cerr << "unknown variant pair '" << variants
                  << "' (expected: apriori | modulation)\n";
        return 2;
    }
    uint64_t base = seed_base.value_or(scenario.seed);
    std::printf("%-12s %6s %-9s %9s %8s %8s %13s\n", "variant", "seed",
                "status", "trip_time", "K", "hazards", "min_clearance");
    for (int k = 0; k < seeds; ++k) {
        auto rows = hpfnav::run_ab_comparison(scenario, scenario.config,
                                              base + k, variant);
        for (const auto& row : rows) {
            std::printf("%-12s %6llu %-9s %9.2f %8.3f %8lld %13.3f\n",
                        row.variant.c_str(),
                        static_cast<unsigned long long>(row.result.seed),
                        to_string(row.result.status), row.result.trip_time,
                        row.result.path_ratio, row.result.hazard_cells,
                        row.result.min_clearance);
        }
    }
    return 0;
}

int cmd_solve(const std::string& path, std::string out_dir,
              const std::vector<std::string>& overrides) {
    hpfnav::Scenario scenario = hpfnav::load_scenario(path, overrides);
    const auto& cfg = scenario.config;
    hpfnav::Vec2 center = scenario.map_center();
    hpfnav::SafetyGrid grid(cfg.grid_n, cfg.domain_width);
    if (cfg.use_apriori) {
        for (const auto& c : scenario.apriori)
            grid.mark_disc(c.center - center, c.radius, cfg.inflate_cells);
    }
    hpfnav::CellIndex target = grid.world_to_cell(scenario.target.x - center.x,
                                                  scenario.target.y - center.y);
    hpfnav::PotentialField field = solve_full(grid, target, cfg.solver);
    if (out_dir.empty()) out_dir = default_out_dir(scenario.name);
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir + "/grid.pgm", std::ios::binary);
        hpfnav::write_grid_pgm(grid, out);
    }
    {
        std::ofstream out(out_dir + "/field.pgm", std::ios::binary);
        hpfnav::write_field_pgm16(field, out);
    }
    {
        std::ofstream out(out_dir + "/field.csv");
        hpfnav::write_field_csv(field, out);
    }
    {
        std::ofstream out(out_dir + "/guidance.csv");
        hpfnav::write_guidance_csv(field, grid, out);
    }
    std::cout << "scenario=" << scenario.name << "\n"
              << "sweeps=" << field.sweeps() << "\n"
              << "residual=" << field.last_residual() << "\n"
              << "unsafe_cells=" << grid.unsafe_count() << "\n"
              << "artifacts=" << out_dir << "\n";
    return 0;
}

int cmd_validate(const std::string& path,
                 const std::vector<std::string>& overrides) {
    hpfnav::Scenario scenario = hpfnav::load_scenario(path, overrides);
    std::cout << "OK " << scenario.name << " (seed " << scenario.seed << ", "
              << scenario.circles.size() << " circles, "
              << scenario.segments.size() << " segments, "
              << scenario.apriori.size() << " a-priori entries)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harmonic-potential-field mobility simulator"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir, variants = "modulation";
    std::optional<uint64_t> seed;
    int seeds = 1;
    std::vector<std::string> overrides;

    auto add_common = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("scenario", scenario_path, "Scenario file (JSON)")
            ->required();
        cmd->add_option("--override", overrides,
                        "Config override, key=value (repeatable)");
        if (with_out)
            cmd->add_option("--out", out_dir,
                            "Output directory (default: $HPFNAV_OUT or ./out)");
    };

    auto* run = app.add_subcommand("run", "Run one mission and write artifacts");
    add_common(run, true);
    run->add_option("--seed", seed, "Seed override");

    auto* compare = app.add_subcommand(
        "compare", "Run matched-seed variant pairs side by side");
    add_common(compare, false);
    compare->add_option("--variants", variants,
                        "Variant pair: apriori | modulation");
    compare->add_option("--seed", seed, "Base seed (default: scenario seed)");
    compare->add_option("--seeds", seeds, "Number of consecutive seeds");

    auto* solve = app.add_subcommand(
        "solve", "Solve the guidance field for a scenario, no motion");
    add_common(solve, true);

    auto* validate =
        app.add_subcommand("validate", "Parse and validate a scenario file");
    add_common(validate, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario_path, seed, out_dir, overrides);
        if (compare->parsed())
            return cmd_compare(scenario_path, variants, seed, seeds, overrides);
        if (solve->parsed()) return cmd_solve(scenario_path, out_dir, overrides);
        if (validate->parsed()) return cmd_validate(scenario_path, overrides);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
