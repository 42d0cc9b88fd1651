// paretolab: replicated experiments, dimension sweeps, exact oracles, and
// Stein-Chen certificates for Pareto-minimal points of uniform samples in
// growing dimension.
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error,
// 4 verdict failure under --assert.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pareto/experiment.hpp"

namespace {

using pareto::ExperimentConfig;
using pareto::Mode;

struct RawOptions {
    std::string regime;
    double c = 0.0;
    std::string proj = "1";
    std::string box;
    std::string format = "json";
};

void add_common_options(CLI::App* cmd, ExperimentConfig& config, RawOptions& raw) {
    cmd->add_option("--n", config.n, "sample size (intensity when --poissonized)");
    cmd->add_option("--d", config.d, "dimension");
    cmd->add_option("--regime", raw.regime, "resolve d from a regime: star|starstar");
    cmd->add_option("--c", raw.c, "regime offset c");
    cmd->add_option("--reps", config.reps, "number of replicates");
    cmd->add_option("--seed", config.master_seed, "master seed");
    cmd->add_option("--workers", config.workers, "worker threads");
    cmd->add_option("--r-max", config.r_max, "largest layer index recorded");
    cmd->add_option("--proj", raw.proj, "projection indices, e.g. \"1,3\" (one-based)");
    cmd->add_option("--box", raw.box, "box bounds, e.g. \"0:0.5,0:1\"");
    cmd->add_flag("--poissonized", config.poissonized, "Poisson(n) sample size");
    cmd->add_option("--projected-cap", config.projected_cap,
                    "max persisted projected atoms per replicate");
    cmd->add_option("--out", config.out_path, "output path ('-' = stdout)");
    cmd->add_option("--format", raw.format, "json|csv");
    cmd->add_flag("--assert", config.assert_verdicts,
                  "exit 4 if any applicable verdict fails");
}

void finalize_config(ExperimentConfig& config, const RawOptions& raw) {
    if (!raw.regime.empty()) {
        if (raw.regime == "star")
            config.regime = pareto::Regime::star;
        else if (raw.regime == "starstar")
            config.regime = pareto::Regime::starstar;
        else
            throw pareto::config_error("unknown regime '" + raw.regime + "'");
        config.regime_offset = raw.c;
    }
    config.proj = pareto::parse_proj_spec(raw.proj);
    config.box = raw.box.empty() ? pareto::BoxRegion::unit_cube(config.proj.dimension())
                                 : pareto::parse_box_spec(raw.box);
    if (raw.format == "json")
        config.format = pareto::OutputFormat::json;
    else if (raw.format == "csv")
        config.format = pareto::OutputFormat::csv;
    else
        throw pareto::config_error("unknown format '" + raw.format + "'");
}

void write_text(const ExperimentConfig& config, const std::string& text) {
    if (config.out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) throw pareto::io_error("cannot open '" + config.out_path + "' for writing");
    out << text;
    if (!out) throw pareto::io_error("write failed for '" + config.out_path + "'");
}

bool verdicts_ok(const std::vector<pareto::TestVerdict>& verdicts) {
    for (const auto& v : verdicts)
        if (v.applicable && !v.pass) return false;
    return true;
}

int run(ExperimentConfig config, const RawOptions& raw) {
    finalize_config(config, raw);
    bool assert_failed = false;

    switch (config.mode) {
        case Mode::simulate: {
            auto summary = pareto::run_simulation(config);
            if (config.format == pareto::OutputFormat::json) {
                write_text(config, pareto::to_json(summary).dump(2) + "\n");
            } else {
                std::ostringstream out;
                pareto::write_csv(out, summary);
                write_text(config, out.str());
            }
            assert_failed = !verdicts_ok(summary.aggregates.verdicts);
            break;
        }
        case Mode::sweep: {
            auto sweep = pareto::run_sweep(config);
            if (config.format == pareto::OutputFormat::json) {
                write_text(config, pareto::to_json(sweep).dump(2) + "\n");
            } else {
                std::ostringstream out;
                pareto::write_csv(out, sweep);
                write_text(config, out.str());
            }
            for (const auto& row : sweep.rows)
                if (!row.mean_ok) assert_failed = true;
            if (sweep.total_violations != 0) assert_failed = true;
            break;
        }
        case Mode::oracle: {
            auto report = pareto::run_oracle(config);
            if (config.format == pareto::OutputFormat::json) {
                write_text(config, pareto::to_json(report).dump(2) + "\n");
            } else {
                std::ostringstream out;
                pareto::write_csv(out, report);
                write_text(config, out.str());
            }
            break;
        }
        case Mode::stein_chen: {
            // Certificate for S(U) vs Poisson(E S(U)); with enough replicates
            // also the empirical total-variation distance against it.
            config.validate();
            nlohmann::json j;
            j["config"] = pareto::config_to_json(config);
            const auto dim = static_cast<std::size_t>(config.resolved_dimension());
            auto report = pareto::oracle_report(config.n, dim, config.r_max, config.box,
                                                config.proj.dimension(), config.poissonized);
            j["certificate"] = {{"poisson_mean", report.expected_weighted},
                                {"b1", report.agg.b1},
                                {"b2", report.agg.b2},
                                {"total", report.agg.total}};
            if (config.reps >= 2) {
                auto summary = pareto::run_simulation(config);
                const double tv = summary.aggregates.tv_weighted;
                const double bound = report.agg.total + 0.02;
                j["empirical"] = {{"reps", config.reps},
                                  {"tv_distance", tv},
                                  {"bound_plus_allowance", bound},
                                  {"pass", tv <= bound}};
                if (!(tv <= bound)) assert_failed = true;
            }
            write_text(config, j.dump(2) + "\n");
            break;
        }
        case Mode::plotdata: {
            auto sweep = pareto::run_sweep(config);
            const std::string prefix = config.out_path == "-" ? "plot_" : config.out_path;
            for (const auto& path : pareto::write_plot_series(sweep, prefix))
                std::cout << path << "\n";
            break;
        }
    }
    if (config.assert_verdicts && assert_failed) {
        std::cerr << "paretolab: verdict failure\n";
        return 4;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pareto-minimal points of uniform samples in growing dimension"};
    app.require_subcommand(1);

    ExperimentConfig config;
    RawOptions raw;

    auto* simulate = app.add_subcommand("simulate", "replicated Monte Carlo run");
    auto* sweep = app.add_subcommand("sweep", "dimension sweep with coupled samples");
    auto* oracle = app.add_subcommand("oracle", "closed-form oracle report (no randomness)");
    auto* stein_chen = app.add_subcommand("stein-chen", "Poisson approximation certificate");
    auto* plotdata = app.add_subcommand("plotdata", "two-column series for external plotting");
    for (auto* cmd : {simulate, sweep, oracle, stein_chen, plotdata})
        add_common_options(cmd, config, raw);
    for (auto* cmd : {sweep, plotdata}) {
        cmd->add_option("--d-min", config.d_min, "first dimension (>= 2)");
        cmd->add_option("--d-max", config.d_max, "last dimension");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (simulate->parsed()) config.mode = Mode::simulate;
    if (sweep->parsed()) config.mode = Mode::sweep;
    if (oracle->parsed()) config.mode = Mode::oracle;
    if (stein_chen->parsed()) config.mode = Mode::stein_chen;
    if (plotdata->parsed()) config.mode = Mode::plotdata;

    try {
        return run(config, raw);
    } catch (const pareto::config_error& e) {
        std::cerr << "paretolab: config error: " << e.what() << "\n";
        return 2;
    } catch (const pareto::io_error& e) {
        std::cerr << "paretolab: I/O error: " << e.what() << "\n";
        return 3;
    } catch (const pareto::resource_error& e) {
        std::cerr << "paretolab: resource error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "paretolab: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "paretolab: error: " << e.what() << "\n";
        return 1;
    }
}
