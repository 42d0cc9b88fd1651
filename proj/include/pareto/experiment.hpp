// Experiment orchestration: configuration, replicated simulation runs,
// dimension sweeps with coupled samples, oracle evaluation, and
// machine-readable persistence (JSON / CSV).
//
// Replicates are the unit of parallelism. Worker w computes a fixed,
// index-determined subset of replicates into pre-assigned slots, and
// aggregation is an ordered reduction by replicate index, so results are
// identical for every worker count.

#ifndef PARETO_EXPERIMENT_HPP
#define PARETO_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pareto/diagnostics.hpp"
#include "pareto/oracle.hpp"
#include "pareto/sampling.hpp"

namespace pareto {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mode { simulate, oracle, sweep, stein_chen, plotdata };
enum class Regime { star, starstar };
enum class OutputFormat { json, csv };

struct ExperimentConfig {
    Mode mode = Mode::simulate;
    std::uint64_t n = 2;
    int d = 0;  // 0: resolve from regime
    std::optional<Regime> regime;
    double regime_offset = 0.0;  // c
    int d_min = 0, d_max = 0;    // sweep range
    std::uint32_t r_max = 3;
    std::uint64_t reps = 1;
    std::uint64_t master_seed = 0;
    ProjectionSpec proj = ProjectionSpec::first_coordinates(1);
    BoxRegion box = BoxRegion::unit_cube(1);
    bool poissonized = false;
    std::uint32_t workers = 1;
    std::uint32_t projected_cap = 64;
    std::string out_path = "-";
    OutputFormat format = OutputFormat::json;
    bool assert_verdicts = false;

    // Resolves --regime/--c to an integer dimension; validates consistency.
    int resolved_dimension() const;
    void validate() const;
};

struct ReplicateRecord {
    std::uint32_t replicate = 0;
    std::uint32_t sample_size = 0;  // n, or the drawn N when poissonized
    std::uint32_t nonpareto = 0;    // n - K
    std::vector<std::uint32_t> layer_counts;  // K^(1) .. K^(r_max)
    std::uint64_t weighted = 0;     // S(U)
    std::uint32_t in_box = 0;       // T(U)
    bool box_void = true;           // T(U) == 0
    std::vector<double> projected;  // flattened m-dim atoms, capped
};

struct Aggregates {
    EmpiricalDistribution nonpareto_dist;
    EmpiricalDistribution weighted_dist;
    MomentSummary nonpareto_moments;
    std::vector<MomentSummary> layer_moments;  // index r-1 holds K^(r), r = 1..r_max
    double mean_layers_ge2 = 0;  // empirical mean of sum_{r>=2} K^(r)
    double tv_weighted = 0;      // TV(empirical S, Poisson(E S))
    std::vector<TestVerdict> verdicts;
};

struct ExperimentSummary {
    ExperimentConfig config;
    OracleReport oracle;
    std::vector<ReplicateRecord> records;
    Aggregates aggregates;
};

struct SweepRow {
    std::size_t d = 0;
    double c_star = 0;
    double c_starstar = 0;
    double empirical_mean = 0;
    double empirical_variance = 0;
    double se_mean = 0;
    double oracle_mean = 0;  // exact E(n - K)
    double limit_mean = 0;   // 2^{-c_star}
    std::uint64_t coupling_violations = 0;
    bool mean_ok = false;  // |empirical - oracle| <= 3 se
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<SweepRow> rows;
    std::uint64_t total_violations = 0;
};

// One full replicate: derive stream, sample, count, box-restrict.
ReplicateRecord run_replicate(const ExperimentConfig& config, std::uint32_t replicate_index);

// Deterministic reduction of persisted records into aggregates + verdicts.
Aggregates compute_aggregates(const ExperimentConfig& config, const OracleReport& oracle,
                              const std::vector<ReplicateRecord>& records);

ExperimentSummary run_simulation(const ExperimentConfig& config);
SweepResult run_sweep(const ExperimentConfig& config);
OracleReport run_oracle(const ExperimentConfig& config);

// "0:0.5,0:1" -> box; "1,3,7" -> one-based strictly increasing indices.
BoxRegion parse_box_spec(const std::string& text);
ProjectionSpec parse_proj_spec(const std::string& text);

nlohmann::json config_to_json(const ExperimentConfig& config);
nlohmann::json to_json(const OracleReport& report);
nlohmann::json to_json(const ExperimentSummary& summary);
nlohmann::json to_json(const SweepResult& sweep);

// Round-trip support (schema-stability tests and downstream consumers).
std::vector<ReplicateRecord> records_from_json(const nlohmann::json& payload);
std::vector<ReplicateRecord> records_from_csv(std::istream& in, std::uint32_t r_max,
                                              std::size_t m);

void write_csv(std::ostream& out, const ExperimentSummary& summary);
void write_csv(std::ostream& out, const SweepResult& sweep);
void write_csv(std::ostream& out, const OracleReport& report);

// Two-column (x, y) series per quantity, one file per series:
// <prefix><quantity>.csv with header "x,y". Returns the file list.
std::vector<std::string> write_plot_series(const SweepResult& sweep,
                                           const std::string& prefix);

}  // namespace pareto

#endif
