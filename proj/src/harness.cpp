#include "drsubmax/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "drsubmax/brute.hpp"
#include "drsubmax/errors.hpp"

namespace drsubmax {

using nlohmann::json;

namespace {

constexpr uint64_t kStreamAdversary = 0x61647665ULL;
constexpr uint64_t kStreamRun = 0x72756eULL;

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_from_json(const json& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
    return m;
}

int thread_budget() {
    if (const char* env = std::getenv("DRSUBMAX_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

const char* oracle_name(OracleKind k) {
    return k == OracleKind::gradient ? "gradient" : "value";
}

OracleKind oracle_from_name(const std::string& name) {
    if (name == "gradient") return OracleKind::gradient;
    if (name == "value") return OracleKind::value;
    throw ConfigError("unknown oracle kind: " + name);
}

BlockSchedule resolve_schedule(const AlgorithmConfig& alg, long T) {
    if (alg.explicit_schedule) {
        const ExplicitSchedule& ex = *alg.explicit_schedule;
        BlockSchedule sch;
        sch.T = T;
        sch.K = ex.K;
        sch.L = ex.L;
        sch.delta = ex.delta;
        sch.beta = alg.beta;
        sch.feedback = alg.feedback;
        sch.oracle = alg.oracle;
        if (sch.L < 1 || T % sch.L != 0)
            throw InvalidSchedule("explicit schedule: L must divide the horizon");
        if (sch.K < 1) throw InvalidSchedule("explicit schedule: K must be positive");
        if (alg.feedback != Feedback::full_info && sch.K > sch.L)
            throw InvalidSchedule("explicit schedule: (semi-)bandit runs need K <= L");
        if (alg.oracle == OracleKind::gradient && sch.delta != 0.0)
            throw InvalidSchedule("explicit schedule: gradient oracles run unsmoothed");
        if (alg.oracle == OracleKind::value && sch.delta <= 0.0)
            throw InvalidSchedule("explicit schedule: value oracles need a positive delta");
        sch.Q = T / sch.L;
        return sch;
    }
    return schedule(alg.feedback, alg.oracle, T, alg.beta);
}

// FNV-1a; stable across platforms, unlike std::hash
uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j = json::parse(json_text);
    ExperimentConfig cfg;
    cfg.dimension = j.at("dimension").get<int>();
    cfg.constraints = j.at("constraints").get<int>();
    for (const auto& t : j.at("horizons")) cfg.horizons.push_back(t.get<long>());
    for (const auto& s : j.at("seeds")) cfg.seeds.push_back(s.get<uint64_t>());
    cfg.case_label = case_from_name(j.value("case", "nonmono_downward"));
    cfg.noise = j.value("noise", 0.0);
    if (j.contains("baseline")) {
        const json& b = j["baseline"];
        const std::string mode = b.value("mode", "offline_fw");
        if (mode == "offline_fw")
            cfg.baseline.mode = BaselineMode::offline_fw;
        else if (mode == "brute_force")
            cfg.baseline.mode = BaselineMode::brute_force;
        else
            throw ConfigError("unknown baseline mode: " + mode);
        cfg.baseline.iterations = b.value("iterations", 200L);
        cfg.baseline.grid_step = b.value("grid_step", 0.01);
    }
    for (const auto& a : j.at("algorithms")) {
        AlgorithmConfig alg;
        alg.name = a.at("name").get<std::string>();
        alg.feedback = feedback_from_name(a.at("feedback").get<std::string>());
        alg.oracle = oracle_from_name(a.at("oracle").get<std::string>());
        alg.beta = a.value("beta", 0.0);
        alg.eta_scale = a.value("eta_scale", 1.0);
        if (a.contains("schedule")) {
            ExplicitSchedule ex;
            ex.K = a["schedule"].at("K").get<long>();
            ex.L = a["schedule"].at("L").get<long>();
            ex.delta = a["schedule"].value("delta", 0.0);
            alg.explicit_schedule = ex;
        }
        cfg.algorithms.push_back(std::move(alg));
    }
    if (cfg.dimension < 1 || cfg.constraints < 0 || cfg.horizons.empty() || cfg.seeds.empty() ||
        cfg.algorithms.empty())
        throw ConfigError("experiment config is incomplete");
    return cfg;
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["dimension"] = cfg.dimension;
    j["constraints"] = cfg.constraints;
    j["horizons"] = cfg.horizons;
    j["seeds"] = cfg.seeds;
    j["case"] = case_name(cfg.case_label);
    j["noise"] = cfg.noise;
    j["baseline"] = {
        {"mode", cfg.baseline.mode == BaselineMode::offline_fw ? "offline_fw" : "brute_force"},
        {"iterations", cfg.baseline.iterations},
        {"grid_step", cfg.baseline.grid_step}};
    json algs = json::array();
    for (const AlgorithmConfig& a : cfg.algorithms) {
        json ja;
        ja["name"] = a.name;
        ja["feedback"] = feedback_name(a.feedback);
        ja["oracle"] = oracle_name(a.oracle);
        ja["beta"] = a.beta;
        ja["eta_scale"] = a.eta_scale;
        if (a.explicit_schedule) {
            ja["schedule"] = {{"K", a.explicit_schedule->K},
                              {"L", a.explicit_schedule->L},
                              {"delta", a.explicit_schedule->delta}};
        }
        algs.push_back(std::move(ja));
    }
    j["algorithms"] = std::move(algs);
    return j.dump(2);
}

Adversary build_adversary(int d, int m, long T, CaseLabel case_label, uint64_t seed) {
    Adversary adv;
    adv.seed = seed;
    Rng rng(derive_seed(seed, kStreamAdversary));
    adv.region = generate_region(d, m, rng);
    const bool monotone =
        case_label == CaseLabel::monotone_origin || case_label == CaseLabel::monotone_general;
    adv.objectives.reserve(T);
    for (long t = 0; t < T; ++t) {
        adv.objectives.push_back(monotone ? generate_monotone_quadratic(d, rng)
                                          : generate_quadratic(d, rng));
    }
    return adv;
}

std::string adversary_to_json(const Adversary& adv, long horizon) {
    json j;
    j["seed"] = adv.seed;
    j["dimension"] = adv.region.dim();
    j["horizon"] = horizon;
    j["region"] = {{"A", mat_to_json(adv.region.A)},
                   {"b", adv.region.b},
                   {"center", adv.region.center},
                   {"radius", adv.region.radius},
                   {"downward_closed", adv.region.downward_closed}};
    json objs = json::array();
    for (long t = 0; t < horizon && t < static_cast<long>(adv.objectives.size()); ++t) {
        const QuadraticObjective& f = adv.objectives[static_cast<size_t>(t)];
        objs.push_back({{"H", mat_to_json(f.H)}, {"h", f.h}, {"c", f.c}});
    }
    j["objectives"] = std::move(objs);
    return j.dump();
}

Adversary adversary_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    Adversary adv;
    adv.seed = j.value("seed", 0ULL);
    const json& r = j.at("region");
    adv.region = make_region(mat_from_json(r.at("A")), r.at("b").get<Vec>());
    for (const auto& o : j.at("objectives")) {
        QuadraticObjective f;
        f.H = mat_from_json(o.at("H"));
        f.h = o.at("h").get<Vec>();
        f.c = o.at("c").get<double>();
        adv.objectives.push_back(std::move(f));
    }
    return adv;
}

BaselineSeries compute_baseline(const Adversary& adv, long T, CaseLabel case_label,
                                const BaselineConfig& cfg) {
    if (T > static_cast<long>(adv.objectives.size()))
        throw LengthMismatch("compute_baseline: horizon exceeds adversary length");
    const int d = adv.region.dim();
    BaselineSeries out;
    out.points.reserve(T);
    out.cum_value.reserve(T);

    // running mean of the prefix; maximizing it maximizes the prefix sum
    QuadraticObjective mean;
    mean.H = Mat(d, d);
    mean.h.assign(d, 0.0);
    mean.c = 0.0;

    for (long t = 1; t <= T; ++t) {
        const QuadraticObjective& f = adv.objectives[static_cast<size_t>(t - 1)];
        const double w = 1.0 / static_cast<double>(t);
        for (size_t i = 0; i < mean.H.a.size(); ++i)
            mean.H.a[i] += (f.H.a[i] - mean.H.a[i]) * w;
        for (int i = 0; i < d; ++i) mean.h[i] += (f.h[i] - mean.h[i]) * w;
        mean.c += (f.c - mean.c) * w;

        Vec x_star;
        if (cfg.mode == BaselineMode::brute_force) {
            if (d > 3) throw ConfigError("brute-force baseline is limited to d <= 3");
            x_star = grid_argmax(adv.region, cfg.grid_step,
                                 [&](const Vec& x) { return value(mean, x); })
                         .point;
        } else {
            x_star = offline_frank_wolfe(case_label, adv.region, cfg.iterations,
                                         [&](const Vec& x) { return gradient(mean, x); });
        }
        out.cum_value.push_back(static_cast<double>(t) * value(mean, x_star));
        out.points.push_back(std::move(x_star));
    }
    return out;
}

RegretTrace compute_regret(const AlgorithmTrace& trace, const BaselineSeries& baseline) {
    const size_t T = trace.rounds.size();
    if (baseline.cum_value.size() < T)
        throw LengthMismatch("compute_regret: baseline shorter than the trace");
    RegretTrace rt;
    rt.reward.reserve(T);
    rt.cum_reward.reserve(T);
    rt.baseline_cum.reserve(T);
    rt.avg_regret.reserve(T);
    rt.queries_cum.reserve(T);
    double cum = 0.0;
    long queries = 0;
    for (size_t t = 0; t < T; ++t) {
        const double r = trace.rounds[t].reward;
        cum += r;
        queries += trace.rounds[t].queries;
        rt.reward.push_back(r);
        rt.cum_reward.push_back(cum);
        rt.baseline_cum.push_back(baseline.cum_value[t]);
        rt.avg_regret.push_back((baseline.cum_value[t] - cum) / static_cast<double>(t + 1));
        rt.queries_cum.push_back(queries);
    }
    return rt;
}

OracleSpec make_oracle_spec(const Adversary& adv, long T, OracleKind kind, double noise,
                            double delta) {
    OracleSpec spec;
    spec.kind = kind;
    spec.noise = noise;
    spec.delta = delta;
    double m0 = 0.0, m1 = 0.0;
    for (long t = 0; t < T && t < static_cast<long>(adv.objectives.size()); ++t) {
        const ObjectiveMetadata md = metadata(adv.objectives[static_cast<size_t>(t)]);
        m0 = std::max(m0, md.M0);
        m1 = std::max(m1, md.M1);
    }
    spec.B0 = m0 + noise;
    spec.B1 = m1 + noise;
    return spec;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    for (const AlgorithmConfig& alg : cfg.algorithms)
        for (long T : cfg.horizons) resolve_schedule(alg, T);  // fail fast on bad schedules

    const long t_max = *std::max_element(cfg.horizons.begin(), cfg.horizons.end());

    struct SeedSlot {
        std::vector<RunResult> runs;
        std::vector<std::string> failures;
    };
    std::vector<SeedSlot> slots(cfg.seeds.size());

    auto run_seed = [&](size_t si) {
        const uint64_t seed = cfg.seeds[si];
        const Adversary adv =
            build_adversary(cfg.dimension, cfg.constraints, t_max, cfg.case_label, seed);
        const BaselineSeries baseline = compute_baseline(adv, t_max, cfg.case_label, cfg.baseline);
        const ObjectiveSeq seq = [&adv](long t) -> const QuadraticObjective& {
            return adv.objectives[static_cast<size_t>(t)];
        };

        for (const AlgorithmConfig& alg : cfg.algorithms) {
            for (long T : cfg.horizons) {
                const std::string run_id =
                    alg.name + "-T" + std::to_string(T) + "-s" + std::to_string(seed);
                try {
                    const BlockSchedule sch = resolve_schedule(alg, T);
                    const OracleSpec spec =
                        make_oracle_spec(adv, T, alg.oracle, cfg.noise, sch.delta);
                    const uint64_t run_seed_val =
                        derive_seed(seed, kStreamRun, fnv1a(alg.name), static_cast<uint64_t>(T));
                    TraceOptions opt;
                    opt.record_actions = false;
                    opt.record_iterates = false;
                    const OloFactory factory =
                        default_olo_factory(spec, run_seed_val, alg.eta_scale);

                    const auto start = std::chrono::steady_clock::now();
                    AlgorithmTrace trace;
                    if (alg.feedback == Feedback::full_info)
                        trace = meta_frank_wolfe(cfg.case_label, sch, adv.region, spec, seq,
                                                 run_seed_val, opt, factory);
                    else
                        trace = bandit_frank_wolfe(cfg.case_label, sch, adv.region, spec, seq,
                                                   run_seed_val, opt, factory);
                    const auto stop = std::chrono::steady_clock::now();

                    RunResult rr;
                    rr.algorithm = alg.name;
                    rr.case_label = cfg.case_label;
                    rr.feedback = alg.feedback;
                    rr.beta = alg.beta;
                    rr.seed = seed;
                    rr.T = T;
                    rr.run_id = run_id;
                    rr.regret = compute_regret(trace, baseline);
                    rr.wall_ms =
                        std::chrono::duration<double, std::milli>(stop - start).count();
                    rr.final_avg_regret = rr.regret.avg_regret.back();
                    slots[si].runs.push_back(std::move(rr));
                } catch (const std::exception& e) {
                    slots[si].failures.push_back("run " + run_id + ": " + e.what());
                }
            }
        }
    };

    auto run_seed_guarded = [&](size_t si) {
        try {
            run_seed(si);
        } catch (const std::exception& e) {
            // adversary or baseline construction died; every run of the seed is lost
            slots[si].failures.push_back("seed " + std::to_string(cfg.seeds[si]) + ": " + e.what());
        }
    };

    const int workers = std::min<int>(thread_budget(), static_cast<int>(cfg.seeds.size()));
    if (workers <= 1) {
        for (size_t si = 0; si < cfg.seeds.size(); ++si) run_seed_guarded(si);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const size_t si = next.fetch_add(1);
                    if (si >= cfg.seeds.size()) return;
                    run_seed_guarded(si);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }

    ExperimentResult result;
    for (SeedSlot& slot : slots) {
        for (RunResult& rr : slot.runs) result.runs.push_back(std::move(rr));
        for (std::string& f : slot.failures) result.failures.push_back(std::move(f));
    }
    std::sort(result.runs.begin(), result.runs.end(),
              [](const RunResult& a, const RunResult& b) { return a.run_id < b.run_id; });

    // deterministic per-round table; timing lives in the summary only
    std::ostringstream csv;
    csv << "run_id,algorithm,case,feedback,beta,seed,t,reward,cum_reward,baseline_cum,"
           "avg_regret,queries_cum\n";
    for (const RunResult& rr : result.runs) {
        const RegretTrace& rt = rr.regret;
        for (size_t t = 0; t < rt.reward.size(); ++t) {
            csv << rr.run_id << ',' << rr.algorithm << ',' << case_name(rr.case_label) << ','
                << feedback_name(rr.feedback) << ',' << format_double(rr.beta) << ',' << rr.seed
                << ',' << (t + 1) << ',' << format_double(rt.reward[t]) << ','
                << format_double(rt.cum_reward[t]) << ',' << format_double(rt.baseline_cum[t])
                << ',' << format_double(rt.avg_regret[t]) << ',' << rt.queries_cum[t] << '\n';
        }
    }
    result.csv = csv.str();

    struct Agg {
        std::vector<double> finals;
        double wall = 0.0;
    };
    std::map<std::pair<std::string, long>, Agg> agg;
    for (const RunResult& rr : result.runs) {
        Agg& a = agg[{rr.algorithm, rr.T}];
        a.finals.push_back(rr.final_avg_regret);
        a.wall += rr.wall_ms;
    }
    std::ostringstream sum;
    sum << "algorithm,T,runs,final_avg_regret_mean,final_avg_regret_std,wall_ms_mean\n";
    for (const auto& [key, a] : agg) {
        const double n = static_cast<double>(a.finals.size());
        double mean = 0.0;
        for (double v : a.finals) mean += v;
        mean /= n;
        double var = 0.0;
        for (double v : a.finals) var += (v - mean) * (v - mean);
        const double sd = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
        sum << key.first << ',' << key.second << ',' << a.finals.size() << ','
            << format_double(mean) << ',' << format_double(sd) << ','
            << format_double(a.wall / n) << '\n';
    }
    result.summary_csv = sum.str();
    return result;
}

void write_experiment_outputs(const ExperimentResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream f(fs::path(out_dir) / "results.csv", std::ios::binary);
        f << result.csv;
    }
    {
        std::ofstream f(fs::path(out_dir) / "summary.csv", std::ios::binary);
        f << result.summary_csv;
    }
}

}  // namespace drsubmax
