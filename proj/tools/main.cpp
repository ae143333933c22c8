// Command-line front end: algebra arithmetic, congruence verification,
// curve/surface analysis and join reconstruction, all seeded and
// deterministic.
#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "ap2/cli.hpp"

namespace {

void add_config_flags(CLI::App* sub, ap2::cli::RunConfig& config, std::string& mode,
                      std::string& grid) {
    sub->add_option("--seed", config.seed, "PRNG seed (64-bit)");
    sub->add_option("--mode", mode, "scalar mode")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--samples", config.samples, "number of random samples")
        ->check(CLI::PositiveNumber);
    sub->add_option("--grid", grid, "parameter grid, e.g. 5x5");
    sub->add_option("--out", config.out_path, "report output path (default: stdout)");
    sub->add_option("--tol-rank", config.tol_rank, "relative rank tolerance (float mode)");
    sub->add_option("--tol-membership", config.tol_membership,
                    "focal-plane membership tolerance (float mode)");
}

bool parse_grid(const std::string& text, ap2::cli::RunConfig& config) {
    if (text.empty()) return true;
    auto x = text.find('x');
    if (x == std::string::npos) return false;
    try {
        config.grid_rows = std::stoul(text.substr(0, x));
        config.grid_cols = std::stoul(text.substr(x + 1));
    } catch (const std::exception&) {
        return false;
    }
    return config.grid_rows > 0 && config.grid_cols > 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"projective planes over two-dimensional algebras and their line geometry"};
    app.require_subcommand(1);

    ap2::cli::RunConfig config;
    std::string mode = "exact";
    std::string grid;

    std::string kind = "complex";
    std::string op;
    std::vector<std::string> operands;
    auto* algebra = app.add_subcommand("algebra", "arithmetic in one algebra");
    algebra->add_option("--kind", kind, "complex|double|dual")->required();
    algebra->add_option("op", op, "mul|add|inverse|zero-divisor")->required();
    algebra->add_option("operands", operands, "elements as 'x,y' with rational entries");
    algebra->add_option("--mode", mode, "scalar mode")
        ->check(CLI::IsMember({"exact", "float"}));

    auto* congruence =
        app.add_subcommand("congruence", "classify and verify one line congruence");
    std::string cong_kind = "complex";
    congruence->add_option("--kind", cong_kind, "complex|double|dual")->required();
    add_config_flags(congruence, config, mode, grid);

    auto* curve = app.add_subcommand("curve", "analyze the ruled 3-fold of a curve file");
    std::string curve_path;
    curve->add_option("curve_file", curve_path, "curve JSON path")->required();
    add_config_flags(curve, config, mode, grid);

    auto* join = app.add_subcommand("join", "reconstruct a join surface from its focal curves");
    std::string report_path;
    join->add_option("report_file", report_path, "surface report JSON path")->required();
    add_config_flags(join, config, mode, grid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : ap2::cli::kExitUsage;
    }

    config.mode = mode == "float" ? ap2::cli::Mode::Float : ap2::cli::Mode::Exact;
    if (!parse_grid(grid, config)) {
        std::cerr << "invalid --grid, expected AxB\n";
        return ap2::cli::kExitUsage;
    }

    if (algebra->parsed())
        return ap2::cli::cmd_algebra(kind, op, operands, config.mode, std::cout, std::cerr);
    if (congruence->parsed())
        return ap2::cli::cmd_congruence(cong_kind, config, std::cout, std::cerr);
    if (curve->parsed()) return ap2::cli::cmd_curve(curve_path, config, std::cout, std::cerr);
    if (join->parsed()) return ap2::cli::cmd_join(report_path, config, std::cout, std::cerr);
    return ap2::cli::kExitUsage;
}
