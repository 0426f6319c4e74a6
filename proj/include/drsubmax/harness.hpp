#pragma once

#include <optional>
#include <string>

#include "drsubmax/fw.hpp"

namespace drsubmax {

struct ExplicitSchedule {
    long K = 1;
    long L = 1;
    double delta = 0.0;
};

// One algorithm column of an experiment: a feedback/oracle pair with either a
// horizon-driven schedule (beta) or explicit (K, L, delta).
struct AlgorithmConfig {
    std::string name;
    Feedback feedback = Feedback::full_info;
    OracleKind oracle = OracleKind::gradient;
    double beta = 0.0;
    std::optional<ExplicitSchedule> explicit_schedule;
    double eta_scale = 1.0;
};

enum class BaselineMode { offline_fw, brute_force };

struct BaselineConfig {
    BaselineMode mode = BaselineMode::offline_fw;
    long iterations = 200;   // inner steps of the offline solve per prefix
    double grid_step = 0.01; // brute-force grid resolution (d <= 3 only)
};

struct ExperimentConfig {
    int dimension = 0;
    int constraints = 0;
    std::vector<long> horizons;
    std::vector<uint64_t> seeds;
    CaseLabel case_label = CaseLabel::nonmono_downward;
    double noise = 0.0;
    std::vector<AlgorithmConfig> algorithms;
    BaselineConfig baseline;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string experiment_config_to_json(const ExperimentConfig& cfg);

// Oblivious adversary: one region and T objectives, all fixed up front by the
// seed. Draw order is region first, then objectives in round order, so runs
// with the same seed and a shorter horizon see a prefix of the same sequence.
struct Adversary {
    Region region;
    std::vector<QuadraticObjective> objectives;
    uint64_t seed = 0;
};

Adversary build_adversary(int d, int m, long T, CaseLabel case_label, uint64_t seed);

std::string adversary_to_json(const Adversary& adv, long horizon);
Adversary adversary_from_json(const std::string& json_text);

// Offline per-prefix baselines: points[t-1] approximately maximizes the mean
// of the first t objectives; cum_value[t-1] = sum_{t' <= t} F_t'(points[t-1]).
struct BaselineSeries {
    std::vector<Vec> points;
    std::vector<double> cum_value;
};

BaselineSeries compute_baseline(const Adversary& adv, long T, CaseLabel case_label,
                                const BaselineConfig& cfg);

// Per-round regret ledger of one run against the baseline series.
struct RegretTrace {
    std::vector<double> reward;
    std::vector<double> cum_reward;
    std::vector<double> baseline_cum;
    std::vector<double> avg_regret;
    std::vector<long> queries_cum;
};

RegretTrace compute_regret(const AlgorithmTrace& trace, const BaselineSeries& baseline);

// Oracle bounds for an adversary at a given noise level: B0/B1 from the
// conservative per-objective metadata, maximized over the sequence.
OracleSpec make_oracle_spec(const Adversary& adv, long T, OracleKind kind, double noise,
                            double delta);

struct RunResult {
    std::string run_id;
    std::string algorithm;
    CaseLabel case_label;
    Feedback feedback;
    double beta = 0.0;
    uint64_t seed = 0;
    long T = 0;
    RegretTrace regret;
    double wall_ms = 0.0;
    double final_avg_regret = 0.0;
};

struct ExperimentResult {
    std::vector<RunResult> runs;        // sorted by run_id
    std::vector<std::string> failures;  // "run <id>: <reason>"; empty on full success
    std::string csv;                    // deterministic per-round table
    std::string summary_csv;            // per (algorithm, T) aggregates, includes wall time
};

// Runs the full grid (algorithms x horizons x seeds). Worker count comes from
// DRSUBMAX_THREADS when set, hardware concurrency otherwise. Per-seed state is
// isolated, so results are deterministic regardless of thread count. A failed
// run is recorded in failures with its context; the remaining runs still
// complete and their rows are kept.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Writes results.csv and summary.csv under out_dir (created if needed).
void write_experiment_outputs(const ExperimentResult& result, const std::string& out_dir);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

}  // namespace drsubmax
