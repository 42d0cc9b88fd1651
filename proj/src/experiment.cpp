#include "pareto/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace pareto {

namespace {

const char* mode_name(Mode mode) {
    switch (mode) {
        case Mode::simulate: return "simulate";
        case Mode::oracle: return "oracle";
        case Mode::sweep: return "sweep";
        case Mode::stein_chen: return "stein-chen";
        case Mode::plotdata: return "plotdata";
    }
    return "?";
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

// Static round-robin assignment: replicate i is computed by worker
// i % workers into slot i, so the result set is independent of scheduling.
void parallel_replicates(std::uint64_t count, std::uint32_t workers,
                         const std::function<void(std::uint64_t)>& body) {
    workers = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(std::max<std::uint32_t>(workers, 1), count));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::uint64_t i = w; i < count; i += workers) body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string current;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(current);
            current.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            current.push_back(ch);
        }
    }
    out.push_back(current);
    return out;
}

double parse_real(const std::string& token, const std::string& context) {
    try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw config_error(context + ": cannot parse '" + token + "'");
    }
}

}  // namespace

int ExperimentConfig::resolved_dimension() const {
    if (d > 0) return d;
    if (!regime) throw config_error("no dimension: give --d or --regime with --c");
    double dim = 0;
    try {
        dim = (*regime == Regime::star) ? critical_dim_star(n, regime_offset)
                                        : critical_dim_starstar(n, regime_offset);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("unresolvable regime: ") + e.what());
    }
    const auto rounded = static_cast<int>(std::llround(dim));
    if (rounded < 1) throw config_error("resolved dimension is below 1");
    return rounded;
}

void ExperimentConfig::validate() const {
    if (n < 1) throw config_error("n must be >= 1");
    if (reps < 1) throw config_error("reps must be >= 1");
    if (workers < 1 || workers > 256) throw config_error("workers must be in [1, 256]");
    try {
        box.validate();
        if (box.dimension() != proj.dimension())
            throw config_error("box dimension must match projection length");
        if (mode == Mode::sweep || mode == Mode::plotdata) {
            if (d_min < 2 || d_max < d_min)
                throw config_error("sweep needs 2 <= d-min <= d-max");
            proj.validate(static_cast<std::size_t>(d_min));
        } else {
            proj.validate(static_cast<std::size_t>(resolved_dimension()));
        }
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
}

ReplicateRecord run_replicate(const ExperimentConfig& config, std::uint32_t replicate_index) {
    const auto dim = static_cast<std::size_t>(config.resolved_dimension());
    const StreamSpec spec{config.master_seed, replicate_index};
    const SampleMatrix sample =
        config.poissonized ? poissonized_sample(static_cast<double>(config.n), dim, spec)
                           : sample_uniform(config.n, dim, spec);

    ReplicateRecord rec;
    rec.replicate = replicate_index;
    rec.sample_size = static_cast<std::uint32_t>(sample.size());

    const DominanceSummary summary = dominance_counts(sample, CountStrategy::sum_pruned);
    const LayerHistogram hist = layer_histogram(summary);
    rec.nonpareto = static_cast<std::uint32_t>(sample.size() - hist.pareto_count);
    rec.layer_counts.assign(config.r_max, 0u);
    for (const auto& [r, count] : hist.layers)
        if (r <= config.r_max) rec.layer_counts[r - 1] = static_cast<std::uint32_t>(count);

    const BoxStatistics stats = box_statistics(sample, summary, config.proj, config.box);
    rec.weighted = stats.weighted_count;
    rec.in_box = static_cast<std::uint32_t>(stats.nonpareto_count);
    rec.box_void = stats.nonpareto_count == 0;

    const std::size_t m = config.proj.dimension();
    const std::size_t keep =
        std::min<std::size_t>(stats.projected_points.size(), config.projected_cap);
    rec.projected.reserve(keep * m);
    for (std::size_t a = 0; a < keep; ++a)
        for (double v : stats.projected_points[a]) rec.projected.push_back(v);
    return rec;
}

Aggregates compute_aggregates(const ExperimentConfig& config, const OracleReport& oracle,
                              const std::vector<ReplicateRecord>& records) {
    Aggregates agg;
    std::vector<std::uint32_t> nonpareto;
    nonpareto.reserve(records.size());
    double layers_ge2_acc = 0.0;
    for (const auto& rec : records) {
        agg.nonpareto_dist.add(rec.nonpareto);
        agg.weighted_dist.add(rec.weighted);
        nonpareto.push_back(rec.nonpareto);
        const std::uint32_t k1 = rec.layer_counts.empty() ? 0 : rec.layer_counts[0];
        layers_ge2_acc += static_cast<double>(rec.nonpareto - k1);
    }
    const std::size_t reps = records.size();
    agg.mean_layers_ge2 = reps ? layers_ge2_acc / static_cast<double>(reps) : 0.0;

    auto degenerate = [](double value) {
        MomentSummary s;
        s.count = 1;
        s.mean = value;
        return s;
    };
    if (reps >= 2)
        agg.nonpareto_moments = mean_variance_summary(std::span<const std::uint32_t>(nonpareto));
    else if (reps == 1)
        agg.nonpareto_moments = degenerate(nonpareto[0]);

    for (std::uint32_t r = 1; r <= config.r_max; ++r) {
        std::vector<std::uint32_t> values;
        values.reserve(reps);
        for (const auto& rec : records)
            values.push_back(r <= rec.layer_counts.size() ? rec.layer_counts[r - 1] : 0u);
        if (reps >= 2)
            agg.layer_moments.push_back(mean_variance_summary(std::span<const std::uint32_t>(values)));
        else
            agg.layer_moments.push_back(reps == 1 ? degenerate(values[0]) : MomentSummary{});
    }

    if (oracle.expected_weighted > 0.0 && agg.weighted_dist.total > 0)
        agg.tv_weighted = tv_distance(agg.weighted_dist, oracle.expected_weighted);

    // Verdicts. All deterministic functions of the records and the oracle.
    if (reps >= 2) {
        const MomentSummary& mom = agg.nonpareto_moments;
        TestVerdict mean_v;
        mean_v.name = "mean_vs_oracle";
        mean_v.statistic = std::fabs(mom.mean - oracle.expected_nonpareto);
        mean_v.threshold = 3.0 * mom.se_mean;
        mean_v.pass = mean_v.statistic <= mean_v.threshold;
        mean_v.details = "empirical mean of n-K vs exact expectation";
        agg.verdicts.push_back(mean_v);

        if (reps >= 3) {
            TestVerdict var_v;
            var_v.name = "variance_vs_oracle";
            var_v.statistic = std::fabs(mom.variance - oracle.expected_nonpareto);
            var_v.threshold = 3.0 * mom.se_variance;
            var_v.pass = var_v.statistic <= var_v.threshold;
            var_v.details = "empirical variance of n-K vs exact mean (Poisson law)";
            agg.verdicts.push_back(var_v);

            TestVerdict consistency;
            consistency.name = "mean_variance_consistency";
            consistency.statistic = std::fabs(mom.mean - mom.variance);
            consistency.threshold =
                3.0 * std::sqrt(mom.se_mean * mom.se_mean + mom.se_variance * mom.se_variance);
            consistency.pass = consistency.statistic <= consistency.threshold;
            agg.verdicts.push_back(consistency);
        }

        if (oracle.expected_nonpareto > 0.0)
            agg.verdicts.push_back(chi_square_poisson(agg.nonpareto_dist,
                                                      oracle.expected_nonpareto));

        if (oracle.expected_weighted > 0.0 && agg.weighted_dist.total > 0) {
            TestVerdict tv_v;
            tv_v.name = "tv_vs_certificate";
            tv_v.statistic = agg.tv_weighted;
            tv_v.threshold = oracle.agg.total + 0.02;  // certificate + sampling allowance
            tv_v.pass = tv_v.statistic <= tv_v.threshold;
            std::ostringstream details;
            details << "TV(S, Poisson(" << oracle.expected_weighted
                    << ")) vs AGG total " << oracle.agg.total << " + 0.02";
            tv_v.details = details.str();
            agg.verdicts.push_back(tv_v);
        }

        // Per-coordinate KS of pooled atom positions whenever the box leaves
        // that coordinate unrestricted (the pooled law is then F(x) = x^2).
        const std::size_t m = config.proj.dimension();
        for (std::size_t j = 0; j < m; ++j) {
            if (config.box.bounds[j].first != 0.0 || config.box.bounds[j].second != 1.0)
                continue;
            std::vector<double> pooled;
            for (const auto& rec : records)
                for (std::size_t a = j; a < rec.projected.size(); a += m)
                    pooled.push_back(rec.projected[a]);
            TestVerdict ks = ks_projected_marginal(std::move(pooled));
            ks.name = m == 1 ? "ks_projected" : "ks_projected_coord_" + std::to_string(j + 1);
            agg.verdicts.push_back(ks);
        }

        if (config.n >= 2) {
            std::vector<bool> voids;
            voids.reserve(reps);
            for (const auto& rec : records) voids.push_back(rec.box_void);
            agg.verdicts.push_back(void_probability_check(
                voids, config.box, m, implied_offset_star(config.n, config.resolved_dimension())));
        }
    }
    return agg;
}

ExperimentSummary run_simulation(const ExperimentConfig& config) {
    config.validate();
    const auto dim = static_cast<std::size_t>(config.resolved_dimension());
    ExperimentSummary summary;
    summary.config = config;
    summary.oracle = oracle_report(config.n, dim, config.r_max, config.box,
                                   config.proj.dimension(), config.poissonized);
    summary.records.resize(config.reps);
    parallel_replicates(config.reps, config.workers, [&](std::uint64_t i) {
        summary.records[i] = run_replicate(config, static_cast<std::uint32_t>(i));
    });
    summary.aggregates = compute_aggregates(config, summary.oracle, summary.records);
    return summary;
}

SweepResult run_sweep(const ExperimentConfig& config) {
    config.validate();
    const auto d_lo = static_cast<std::size_t>(config.d_min);
    const auto d_hi = static_cast<std::size_t>(config.d_max);
    const std::size_t dim_count = d_hi - d_lo + 1;

    // Per-replicate non-Pareto counts for every dimension, plus per-index
    // coupling violations (counts growing when trailing coordinates are
    // added), computed from one shared coordinate pool per replicate.
    std::vector<std::vector<std::uint32_t>> nonpareto(dim_count);
    std::vector<std::vector<std::uint32_t>> violations(dim_count);
    for (auto& v : nonpareto) v.resize(config.reps);
    for (auto& v : violations) v.assign(config.reps, 0);

    parallel_replicates(config.reps, config.workers, [&](std::uint64_t rep) {
        const StreamSpec spec{config.master_seed, static_cast<std::uint32_t>(rep)};
        const SampleMatrix pool =
            config.poissonized
                ? poissonized_sample(static_cast<double>(config.n), d_hi, spec)
                : sample_uniform(config.n, d_hi, spec);
        const std::size_t points = pool.size();
        std::vector<std::uint32_t> counts(points), previous(points);
        for (std::size_t d = d_lo; d <= d_hi; ++d) {
            detail::dominance_counts_strided(pool.data().data(), points, d, d_hi,
                                             CountStrategy::sum_pruned, counts.data());
            std::uint32_t npareto = 0;
            for (std::size_t i = 0; i < points; ++i) npareto += counts[i] > 0;
            nonpareto[d - d_lo][rep] = npareto;
            if (d > d_lo) {
                std::uint32_t bad = 0;
                for (std::size_t i = 0; i < points; ++i) bad += counts[i] > previous[i];
                violations[d - d_lo][rep] = bad;
            }
            std::swap(counts, previous);
        }
    });

    SweepResult result;
    result.config = config;
    for (std::size_t d = d_lo; d <= d_hi; ++d) {
        SweepRow row;
        row.d = d;
        row.c_star = implied_offset_star(config.n, d);
        row.c_starstar = config.n >= 3 ? implied_offset_starstar(config.n, d) : 0.0;
        const auto& values = nonpareto[d - d_lo];
        if (config.reps >= 2) {
            const MomentSummary mom =
                mean_variance_summary(std::span<const std::uint32_t>(values));
            row.empirical_mean = mom.mean;
            row.empirical_variance = mom.variance;
            row.se_mean = mom.se_mean;
        } else {
            row.empirical_mean = values[0];
        }
        row.oracle_mean = config.poissonized
                              ? expected_nonpareto_poissonized(static_cast<double>(config.n), d)
                              : expected_nonpareto(config.n, d);
        row.limit_mean = limit_nonpareto_mean(row.c_star);
        row.mean_ok = std::fabs(row.empirical_mean - row.oracle_mean) <= 3.0 * row.se_mean;
        for (std::uint32_t v : violations[d - d_lo]) row.coupling_violations += v;
        result.total_violations += row.coupling_violations;
        result.rows.push_back(row);
    }
    return result;
}

OracleReport run_oracle(const ExperimentConfig& config) {
    config.validate();
    return oracle_report(config.n, static_cast<std::size_t>(config.resolved_dimension()),
                         config.r_max, config.box, config.proj.dimension(), config.poissonized);
}

BoxRegion parse_box_spec(const std::string& text) {
    BoxRegion box;
    for (const std::string& token : split(text, ',')) {
        if (token.empty()) throw config_error("box spec: empty interval token");
        const auto colon = token.find(':');
        if (colon == std::string::npos)
            throw config_error("box spec: expected a:b in '" + token + "'");
        const double a = parse_real(token.substr(0, colon), "box spec");
        const double b = parse_real(token.substr(colon + 1), "box spec");
        if (!(a >= 0.0 && a < b && b <= 1.0))
            throw config_error("box spec: interval '" + token +
                               "' must satisfy 0 <= a < b <= 1");
        box.bounds.emplace_back(a, b);
    }
    box.validate();
    return box;
}

ProjectionSpec parse_proj_spec(const std::string& text) {
    ProjectionSpec proj;
    long long previous = 0;
    for (const std::string& token : split(text, ',')) {
        if (token.empty()) throw config_error("projection spec: empty index token");
        long long index = 0;
        try {
            std::size_t used = 0;
            index = std::stoll(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw config_error("projection spec: cannot parse '" + token + "'");
        }
        if (index < 1)
            throw config_error("projection spec: index '" + token + "' must be >= 1");
        if (index <= previous)
            throw config_error("projection spec: not increasing at '" + token + "'");
        previous = index;
        proj.indices.push_back(static_cast<std::uint32_t>(index - 1));
    }
    return proj;
}

// ---------------------------------------------------------------------------
// Serialization. The payload deliberately excludes execution metadata
// (workers, output path, format), so identical configurations produce
// byte-identical payloads at any worker count.

nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    j["mode"] = mode_name(config.mode);
    j["n"] = config.n;
    if (config.mode == Mode::sweep || config.mode == Mode::plotdata) {
        j["d_min"] = config.d_min;
        j["d_max"] = config.d_max;
    } else {
        j["d"] = config.resolved_dimension();
    }
    if (config.regime) {
        j["regime"] = *config.regime == Regime::star ? "star" : "starstar";
        j["c"] = config.regime_offset;
    }
    j["r_max"] = config.r_max;
    j["reps"] = config.reps;
    j["seed"] = config.master_seed;
    nlohmann::json proj = nlohmann::json::array();
    for (auto k : config.proj.indices) proj.push_back(k + 1);  // one-based externally
    j["proj"] = proj;
    nlohmann::json box = nlohmann::json::array();
    for (const auto& [a, b] : config.box.bounds) box.push_back({a, b});
    j["box"] = box;
    j["poissonized"] = config.poissonized;
    j["projected_cap"] = config.projected_cap;
    return j;
}

namespace {

nlohmann::json to_json(const AggBound& bound) {
    return {{"b1", bound.b1}, {"b2", bound.b2}, {"total", bound.total}};
}

nlohmann::json to_json(const MomentSummary& m) {
    return {{"count", m.count},
            {"mean", m.mean},
            {"variance", m.variance},
            {"se_mean", m.se_mean},
            {"se_variance", m.se_variance}};
}

nlohmann::json to_json(const TestVerdict& v) {
    return {{"name", v.name},         {"statistic", v.statistic},
            {"threshold", v.threshold}, {"p_value", v.p_value},
            {"pass", v.pass},         {"applicable", v.applicable},
            {"details", v.details}};
}

nlohmann::json to_json(const EmpiricalDistribution& dist) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [value, count] : dist.counts) counts[std::to_string(value)] = count;
    return {{"counts", counts}, {"total", dist.total}};
}

nlohmann::json to_json(const ReplicateRecord& rec) {
    return {{"replicate", rec.replicate},
            {"sample_size", rec.sample_size},
            {"nonpareto", rec.nonpareto},
            {"layers", rec.layer_counts},
            {"weighted", rec.weighted},
            {"in_box", rec.in_box},
            {"void", rec.box_void},
            {"projected", rec.projected}};
}

}  // namespace

nlohmann::json to_json(const OracleReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    j["d"] = report.d;
    j["r_max"] = report.r_max;
    j["poissonized"] = report.poissonized;
    j["c_star"] = report.c_star;
    j["c_starstar"] = report.c_starstar;
    j["expected_pareto"] = report.expected_pareto;
    j["expected_nonpareto"] = report.expected_nonpareto;
    nlohmann::json layers = nlohmann::json::object();
    for (const auto& [r, value] : report.expected_layers) layers[std::to_string(r)] = value;
    j["expected_layers"] = layers;
    j["expected_weighted"] = report.expected_weighted;
    j["limit_mean"] = report.limit_mean;
    nlohmann::json limits = nlohmann::json::object();
    for (const auto& [r, value] : report.limit_layers) limits[std::to_string(r)] = value;
    j["limit_layers"] = limits;
    j["stirling_factor"] = report.stirling;
    j["agg_bound"] = to_json(report.agg);
    return j;
}

nlohmann::json to_json(const ExperimentSummary& summary) {
    nlohmann::json j;
    j["config"] = config_to_json(summary.config);
    j["oracle"] = to_json(summary.oracle);
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : summary.records) records.push_back(to_json(rec));
    j["records"] = records;

    nlohmann::json agg;
    agg["nonpareto_dist"] = to_json(summary.aggregates.nonpareto_dist);
    agg["weighted_dist"] = to_json(summary.aggregates.weighted_dist);
    agg["nonpareto_moments"] = to_json(summary.aggregates.nonpareto_moments);
    nlohmann::json layer_moments = nlohmann::json::array();
    for (const auto& m : summary.aggregates.layer_moments) layer_moments.push_back(to_json(m));
    agg["layer_moments"] = layer_moments;
    agg["mean_layers_ge2"] = summary.aggregates.mean_layers_ge2;
    agg["tv_weighted"] = summary.aggregates.tv_weighted;
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : summary.aggregates.verdicts) verdicts.push_back(to_json(v));
    agg["verdicts"] = verdicts;
    j["aggregates"] = agg;
    return j;
}

nlohmann::json to_json(const SweepResult& sweep) {
    nlohmann::json j;
    j["config"] = config_to_json(sweep.config);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : sweep.rows) {
        rows.push_back({{"d", row.d},
                        {"c_star", row.c_star},
                        {"c_starstar", row.c_starstar},
                        {"empirical_mean", row.empirical_mean},
                        {"empirical_variance", row.empirical_variance},
                        {"se_mean", row.se_mean},
                        {"oracle_mean", row.oracle_mean},
                        {"limit_mean", row.limit_mean},
                        {"coupling_violations", row.coupling_violations},
                        {"mean_ok", row.mean_ok}});
    }
    j["rows"] = rows;
    j["total_violations"] = sweep.total_violations;
    return j;
}

std::vector<ReplicateRecord> records_from_json(const nlohmann::json& payload) {
    std::vector<ReplicateRecord> records;
    for (const auto& r : payload.at("records")) {
        ReplicateRecord rec;
        rec.replicate = r.at("replicate").get<std::uint32_t>();
        rec.sample_size = r.at("sample_size").get<std::uint32_t>();
        rec.nonpareto = r.at("nonpareto").get<std::uint32_t>();
        rec.layer_counts = r.at("layers").get<std::vector<std::uint32_t>>();
        rec.weighted = r.at("weighted").get<std::uint64_t>();
        rec.in_box = r.at("in_box").get<std::uint32_t>();
        rec.box_void = r.at("void").get<bool>();
        rec.projected = r.at("projected").get<std::vector<double>>();
        records.push_back(std::move(rec));
    }
    return records;
}

void write_csv(std::ostream& out, const ExperimentSummary& summary) {
    const std::uint32_t r_max = summary.config.r_max;
    out << "replicate,sample_size,nonpareto";
    for (std::uint32_t r = 1; r <= r_max; ++r) out << ",k" << r;
    out << ",weighted,in_box,void,projected\n";
    const std::size_t m = summary.config.proj.dimension();
    for (const auto& rec : summary.records) {
        out << rec.replicate << ',' << rec.sample_size << ',' << rec.nonpareto;
        for (std::uint32_t r = 1; r <= r_max; ++r) out << ',' << rec.layer_counts[r - 1];
        out << ',' << rec.weighted << ',' << rec.in_box << ',' << (rec.box_void ? 1 : 0) << ',';
        for (std::size_t a = 0; a * m < rec.projected.size(); ++a) {
            if (a) out << ';';
            for (std::size_t k = 0; k < m; ++k) {
                if (k) out << ':';
                out << format_double(rec.projected[a * m + k]);
            }
        }
        out << '\n';
    }
}

std::vector<ReplicateRecord> records_from_csv(std::istream& in, std::uint32_t r_max,
                                              std::size_t m) {
    std::vector<ReplicateRecord> records;
    std::string line;
    if (!std::getline(in, line)) throw io_error("records_from_csv: missing header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        const std::size_t expected_fields = 7 + r_max;
        if (fields.size() < expected_fields - 1)  // trailing projected may be empty
            throw io_error("records_from_csv: malformed row '" + line + "'");
        ReplicateRecord rec;
        std::size_t at = 0;
        rec.replicate = static_cast<std::uint32_t>(std::stoul(fields[at++]));
        rec.sample_size = static_cast<std::uint32_t>(std::stoul(fields[at++]));
        rec.nonpareto = static_cast<std::uint32_t>(std::stoul(fields[at++]));
        for (std::uint32_t r = 0; r < r_max; ++r)
            rec.layer_counts.push_back(static_cast<std::uint32_t>(std::stoul(fields[at++])));
        rec.weighted = std::stoull(fields[at++]);
        rec.in_box = static_cast<std::uint32_t>(std::stoul(fields[at++]));
        rec.box_void = fields[at++] == "1";
        if (at < fields.size() && !fields[at].empty()) {
            std::istringstream atoms(fields[at]);
            std::string atom;
            while (std::getline(atoms, atom, ';')) {
                std::istringstream coords(atom);
                std::string coord;
                while (std::getline(coords, coord, ':'))
                    rec.projected.push_back(std::stod(coord));
            }
            if (rec.projected.size() % m != 0)
                throw io_error("records_from_csv: ragged projected atoms");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void write_csv(std::ostream& out, const SweepResult& sweep) {
    out << "d,c_star,c_starstar,empirical_mean,empirical_variance,se_mean,"
           "oracle_mean,limit_mean,coupling_violations,mean_ok\n";
    for (const auto& row : sweep.rows) {
        out << row.d << ',' << format_double(row.c_star) << ',' << format_double(row.c_starstar)
            << ',' << format_double(row.empirical_mean) << ','
            << format_double(row.empirical_variance) << ',' << format_double(row.se_mean) << ','
            << format_double(row.oracle_mean) << ',' << format_double(row.limit_mean) << ','
            << row.coupling_violations << ',' << (row.mean_ok ? 1 : 0) << '\n';
    }
}

void write_csv(std::ostream& out, const OracleReport& report) {
    out << "quantity,value\n";
    out << "n," << report.n << '\n';
    out << "d," << report.d << '\n';
    out << "poissonized," << (report.poissonized ? 1 : 0) << '\n';
    out << "c_star," << format_double(report.c_star) << '\n';
    out << "c_starstar," << format_double(report.c_starstar) << '\n';
    out << "expected_pareto," << format_double(report.expected_pareto) << '\n';
    out << "expected_nonpareto," << format_double(report.expected_nonpareto) << '\n';
    for (const auto& [r, value] : report.expected_layers)
        out << "expected_layer_" << r << ',' << format_double(value) << '\n';
    out << "expected_weighted," << format_double(report.expected_weighted) << '\n';
    out << "limit_mean," << format_double(report.limit_mean) << '\n';
    for (const auto& [r, value] : report.limit_layers)
        out << "limit_layer_" << r << ',' << format_double(value) << '\n';
    out << "stirling_factor," << format_double(report.stirling) << '\n';
    out << "agg_b1," << format_double(report.agg.b1) << '\n';
    out << "agg_b2," << format_double(report.agg.b2) << '\n';
    out << "agg_total," << format_double(report.agg.total) << '\n';
}

std::vector<std::string> write_plot_series(const SweepResult& sweep, const std::string& prefix) {
    struct Series {
        const char* name;
        std::function<double(const SweepRow&)> value;
    };
    const Series series[] = {
        {"oracle_mean", [](const SweepRow& r) { return r.oracle_mean; }},
        {"empirical_mean", [](const SweepRow& r) { return r.empirical_mean; }},
        {"empirical_variance", [](const SweepRow& r) { return r.empirical_variance; }},
        {"limit_mean", [](const SweepRow& r) { return r.limit_mean; }},
        {"c_star", [](const SweepRow& r) { return r.c_star; }},
    };
    std::vector<std::string> written;
    for (const auto& s : series) {
        const std::string path = prefix + s.name + ".csv";
        std::ofstream out(path);
        if (!out) throw io_error("cannot open '" + path + "' for writing");
        out << "x,y\n";
        for (const auto& row : sweep.rows)
            out << row.d << ',' << format_double(s.value(row)) << '\n';
        if (!out) throw io_error("write failed for '" + path + "'");
        written.push_back(path);
    }
    return written;
}

}  // namespace pareto
