#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "drsubmax/brute.hpp"
#include "drsubmax/errors.hpp"
#include "drsubmax/harness.hpp"

using namespace drsubmax;

namespace {

bool same_bits(const Vec& a, const Vec& b) {
    return a.size() == b.size() &&
           (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

bool same_bits(const Mat& a, const Mat& b) {
    return a.rows == b.rows && a.cols == b.cols && same_bits(a.a, b.a);
}

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.dimension = 2;
    cfg.constraints = 1;
    cfg.horizons = {8};
    cfg.seeds = {1, 2};
    cfg.case_label = CaseLabel::nonmono_downward;
    cfg.noise = 0.05;
    cfg.baseline.mode = BaselineMode::offline_fw;
    cfg.baseline.iterations = 50;

    AlgorithmConfig meta;
    meta.name = "meta";
    meta.feedback = Feedback::full_info;
    meta.oracle = OracleKind::gradient;
    meta.explicit_schedule = ExplicitSchedule{2, 2, 0.0};
    cfg.algorithms.push_back(meta);

    AlgorithmConfig sb;
    sb.name = "sbfw";
    sb.feedback = Feedback::semi_bandit;
    sb.oracle = OracleKind::gradient;
    sb.explicit_schedule = ExplicitSchedule{2, 4, 0.0};
    cfg.algorithms.push_back(sb);
    return cfg;
}

QuadraticObjective prefix_mean(const std::vector<QuadraticObjective>& objs, long t) {
    const int d = static_cast<int>(objs[0].h.size());
    QuadraticObjective mean;
    mean.H = Mat(d, d);
    mean.h.assign(d, 0.0);
    mean.c = 0.0;
    for (long i = 0; i < t; ++i) {
        for (size_t k = 0; k < mean.H.a.size(); ++k) mean.H.a[k] += objs[i].H.a[k];
        for (int k = 0; k < d; ++k) mean.h[k] += objs[i].h[k];
        mean.c += objs[i].c;
    }
    for (double& v : mean.H.a) v /= static_cast<double>(t);
    for (double& v : mean.h) v /= static_cast<double>(t);
    mean.c /= static_cast<double>(t);
    return mean;
}

}  // namespace

TEST_CASE("experiment config JSON round trip") {
    ExperimentConfig cfg = small_config();
    cfg.algorithms[0].beta = 0.5;
    cfg.algorithms[0].eta_scale = 0.25;
    const std::string text = experiment_config_to_json(cfg);
    const ExperimentConfig back = parse_experiment_config(text);
    CHECK(back.dimension == cfg.dimension);
    CHECK(back.constraints == cfg.constraints);
    CHECK(back.horizons == cfg.horizons);
    CHECK(back.seeds == cfg.seeds);
    CHECK(back.case_label == cfg.case_label);
    CHECK(back.noise == cfg.noise);
    CHECK(back.baseline.mode == cfg.baseline.mode);
    CHECK(back.baseline.iterations == cfg.baseline.iterations);
    REQUIRE(back.algorithms.size() == 2);
    CHECK(back.algorithms[0].name == "meta");
    CHECK(back.algorithms[0].beta == 0.5);
    CHECK(back.algorithms[0].eta_scale == 0.25);
    REQUIRE(back.algorithms[0].explicit_schedule.has_value());
    CHECK(back.algorithms[0].explicit_schedule->K == 2);
    CHECK(back.algorithms[1].feedback == Feedback::semi_bandit);
}

TEST_CASE("experiment config parses hand-written JSON and rejects junk") {
    const std::string text = R"({
        "dimension": 3,
        "constraints": 2,
        "horizons": [16, 32],
        "seeds": [7],
        "case": "monotone_origin",
        "algorithms": [
            {"name": "gmfw", "feedback": "full_info", "oracle": "gradient", "beta": 0.5}
        ]
    })";
    const ExperimentConfig cfg = parse_experiment_config(text);
    CHECK(cfg.dimension == 3);
    CHECK(cfg.case_label == CaseLabel::monotone_origin);
    CHECK(cfg.noise == 0.0);
    CHECK(cfg.baseline.mode == BaselineMode::offline_fw);
    CHECK(cfg.baseline.iterations == 200);
    CHECK(!cfg.algorithms[0].explicit_schedule.has_value());

    CHECK_THROWS_AS(parse_experiment_config(R"({"dimension": 2, "constraints": 1,
        "horizons": [8], "seeds": [1], "case": "mystery",
        "algorithms": [{"name": "a", "feedback": "full_info", "oracle": "gradient"}]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"dimension": 2, "constraints": 1,
        "horizons": [8], "seeds": [1], "baseline": {"mode": "psychic"},
        "algorithms": [{"name": "a", "feedback": "full_info", "oracle": "gradient"}]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"dimension": 2, "constraints": 1,
        "horizons": [8], "seeds": [1],
        "algorithms": [{"name": "a", "feedback": "sideways", "oracle": "gradient"}]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"dimension": 2, "constraints": 1,
        "horizons": [8], "seeds": [], "algorithms":
        [{"name": "a", "feedback": "full_info", "oracle": "gradient"}]})"),
                    ConfigError);
}

TEST_CASE("adversaries with the same seed agree on every shared prefix") {
    const Adversary long_adv = build_adversary(3, 2, 64, CaseLabel::nonmono_downward, 5);
    const Adversary short_adv = build_adversary(3, 2, 16, CaseLabel::nonmono_downward, 5);
    CHECK(same_bits(long_adv.region.A, short_adv.region.A));
    CHECK(same_bits(long_adv.region.b, short_adv.region.b));
    REQUIRE(short_adv.objectives.size() == 16);
    for (size_t t = 0; t < 16; ++t) {
        CHECK(same_bits(long_adv.objectives[t].H, short_adv.objectives[t].H));
        CHECK(same_bits(long_adv.objectives[t].h, short_adv.objectives[t].h));
        CHECK(long_adv.objectives[t].c == short_adv.objectives[t].c);
    }
    const Adversary other = build_adversary(3, 2, 16, CaseLabel::nonmono_downward, 6);
    CHECK(!same_bits(long_adv.objectives[0].H, other.objectives[0].H));
}

TEST_CASE("adversary JSON round trip preserves every coefficient") {
    const Adversary adv = build_adversary(3, 2, 8, CaseLabel::nonmono_downward, 11);
    const std::string text = adversary_to_json(adv, 8);
    const Adversary back = adversary_from_json(text);
    CHECK(back.seed == adv.seed);
    CHECK(same_bits(back.region.A, adv.region.A));
    CHECK(same_bits(back.region.b, adv.region.b));
    CHECK(same_bits(back.region.center, adv.region.center));
    CHECK(back.region.radius == adv.region.radius);
    CHECK(back.region.downward_closed == adv.region.downward_closed);
    REQUIRE(back.objectives.size() == 8);
    for (size_t t = 0; t < 8; ++t) {
        CHECK(same_bits(back.objectives[t].H, adv.objectives[t].H));
        CHECK(same_bits(back.objectives[t].h, adv.objectives[t].h));
        CHECK(back.objectives[t].c == adv.objectives[t].c);
    }
    // truncation: only the first `horizon` objectives are serialized
    const Adversary two = adversary_from_json(adversary_to_json(adv, 2));
    CHECK(two.objectives.size() == 2);
}

TEST_CASE("prefix means reproduce prefix sums at arbitrary points") {
    const Adversary adv = build_adversary(3, 2, 7, CaseLabel::nonmono_downward, 13);
    Rng rng(14);
    for (long t = 1; t <= 7; ++t) {
        const QuadraticObjective mean = prefix_mean(adv.objectives, t);
        for (int rep = 0; rep < 20; ++rep) {
            Vec x(3);
            for (double& v : x) v = rng.uniform01();
            double direct = 0.0;
            for (long i = 0; i < t; ++i) direct += value(adv.objectives[i], x);
            CHECK(static_cast<double>(t) * value(mean, x) ==
                  doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("baseline cumulative values match a direct prefix recomputation") {
    const Adversary adv = build_adversary(2, 2, 10, CaseLabel::nonmono_downward, 17);
    BaselineConfig bc;
    bc.mode = BaselineMode::offline_fw;
    bc.iterations = 80;
    const BaselineSeries bs = compute_baseline(adv, 10, CaseLabel::nonmono_downward, bc);
    REQUIRE(bs.points.size() == 10);
    for (long t = 1; t <= 10; ++t) {
        const Vec& x = bs.points[static_cast<size_t>(t - 1)];
        CHECK(membership(adv.region, x, 1e-7));
        double direct = 0.0;
        for (long i = 0; i < t; ++i) direct += value(adv.objectives[i], x);
        CHECK(bs.cum_value[static_cast<size_t>(t - 1)] ==
              doctest::Approx(direct).epsilon(1e-9));
    }
    CHECK_THROWS_AS(compute_baseline(adv, 11, CaseLabel::nonmono_downward, bc), LengthMismatch);
}

TEST_CASE("first baseline point is the offline ascent on the first objective") {
    const Adversary adv = build_adversary(3, 2, 4, CaseLabel::nonmono_downward, 19);
    BaselineConfig bc;
    bc.iterations = 60;
    const BaselineSeries bs = compute_baseline(adv, 1, CaseLabel::nonmono_downward, bc);
    const Vec direct =
        offline_frank_wolfe(CaseLabel::nonmono_downward, adv.region, 60,
                            [&](const Vec& x) { return gradient(adv.objectives[0], x); });
    CHECK(same_bits(bs.points[0], direct));
}

TEST_CASE("offline baseline tracks the brute-force baseline up to the known loss") {
    const Adversary adv = build_adversary(2, 2, 12, CaseLabel::nonmono_downward, 23);
    BaselineConfig fw_cfg;
    fw_cfg.mode = BaselineMode::offline_fw;
    fw_cfg.iterations = 100;
    BaselineConfig bf_cfg;
    bf_cfg.mode = BaselineMode::brute_force;
    bf_cfg.grid_step = 0.01;
    const BaselineSeries fw = compute_baseline(adv, 12, CaseLabel::nonmono_downward, fw_cfg);
    const BaselineSeries bf = compute_baseline(adv, 12, CaseLabel::nonmono_downward, bf_cfg);
    const double diam = diameter_bound(adv.region);
    for (long t = 1; t <= 12; ++t) {
        const QuadraticObjective mean = prefix_mean(adv.objectives, t);
        const double gamma = offline_gamma(CaseLabel::nonmono_downward, fw_cfg.iterations,
                                           metadata(mean), diam, 0.0);
        const double lhs = fw.cum_value[static_cast<size_t>(t - 1)];
        const double rhs = std::exp(-1.0) * bf.cum_value[static_cast<size_t>(t - 1)] -
                           static_cast<double>(t) * gamma;
        CHECK(lhs >= rhs - 1e-6);
    }
}

TEST_CASE("brute-force baselines refuse high dimensions") {
    const Adversary adv = build_adversary(4, 2, 2, CaseLabel::nonmono_downward, 29);
    BaselineConfig bc;
    bc.mode = BaselineMode::brute_force;
    CHECK_THROWS_AS(compute_baseline(adv, 2, CaseLabel::nonmono_downward, bc), ConfigError);
}

TEST_CASE("regret ledger identities") {
    BaselineSeries bs;
    bs.points = {Vec{0.0}, Vec{0.0}, Vec{0.0}};
    bs.cum_value = {1.5, 2.25, 4.0};

    AlgorithmTrace tr;
    tr.rounds.resize(3);
    tr.rounds[0].reward = 1.5;
    tr.rounds[1].reward = 2.25 - 1.5;
    tr.rounds[2].reward = 4.0 - 2.25;
    for (RoundRecord& r : tr.rounds) r.queries = 2;

    const RegretTrace rt = compute_regret(tr, bs);
    for (size_t t = 0; t < 3; ++t) {
        CHECK(std::fabs(rt.avg_regret[t]) <= 1e-12);
        CHECK(rt.queries_cum[t] == static_cast<long>(2 * (t + 1)));
        CHECK(rt.baseline_cum[t] == bs.cum_value[t]);
    }

    AlgorithmTrace one;
    one.rounds.resize(1);
    one.rounds[0].reward = 1.0;
    BaselineSeries bone;
    bone.cum_value = {3.0};
    bone.points = {Vec{0.0}};
    CHECK(compute_regret(one, bone).avg_regret[0] == 2.0);

    AlgorithmTrace longer;
    longer.rounds.resize(2);
    CHECK_THROWS_AS(compute_regret(longer, bone), LengthMismatch);
}

TEST_CASE("oracle spec bounds dominate the sequence") {
    const Adversary adv = build_adversary(3, 2, 9, CaseLabel::nonmono_downward, 31);
    const OracleSpec spec = make_oracle_spec(adv, 9, OracleKind::value, 0.125, 0.05);
    CHECK(spec.kind == OracleKind::value);
    CHECK(spec.delta == 0.05);
    CHECK(spec.noise == 0.125);
    double m0 = 0.0, m1 = 0.0;
    for (long t = 0; t < 9; ++t) {
        const ObjectiveMetadata md = metadata(adv.objectives[static_cast<size_t>(t)]);
        m0 = std::max(m0, md.M0);
        m1 = std::max(m1, md.M1);
    }
    CHECK(spec.B0 == m0 + 0.125);
    CHECK(spec.B1 == m1 + 0.125);
}

TEST_CASE("doubles survive the CSV formatting round trip") {
    for (double v : {0.25, 1.0 / 3.0, -7.125e-3, 1e300, 0.1 + 0.2}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("experiments rerun to byte-identical tables, whatever the thread count") {
    const ExperimentConfig cfg = small_config();
    setenv("DRSUBMAX_THREADS", "1", 1);
    const ExperimentResult a = run_experiment(cfg);
    const ExperimentResult b = run_experiment(cfg);
    CHECK(a.failures.empty());
    CHECK(a.csv == b.csv);
    // the summary's trailing wall_ms_mean column is the one legitimate
    // nondeterminism; everything before it must agree
    const auto strip_timing = [](const std::string& csv) {
        std::istringstream lines(csv);
        std::string line, out;
        while (std::getline(lines, line)) {
            out += line.substr(0, line.rfind(','));
            out += '\n';
        }
        return out;
    };
    CHECK(strip_timing(a.summary_csv) == strip_timing(b.summary_csv));

    setenv("DRSUBMAX_THREADS", "2", 1);
    const ExperimentResult c = run_experiment(cfg);
    setenv("DRSUBMAX_THREADS", "1", 1);
    CHECK(a.csv == c.csv);
    CHECK(strip_timing(a.summary_csv) == strip_timing(c.summary_csv));

    // shape: header + 2 algorithms x 2 seeds x 8 rounds
    std::istringstream lines(a.csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line ==
          "run_id,algorithm,case,feedback,beta,seed,t,reward,cum_reward,baseline_cum,"
          "avg_regret,queries_cum");
    long rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 32);
    REQUIRE(a.runs.size() == 4);
    CHECK(std::is_sorted(a.runs.begin(), a.runs.end(),
                         [](const RunResult& x, const RunResult& y) {
                             return x.run_id < y.run_id;
                         }));
}

TEST_CASE("CSV rows reproduce the ledger arithmetic") {
    const ExperimentConfig cfg = small_config();
    setenv("DRSUBMAX_THREADS", "1", 1);
    const ExperimentResult res = run_experiment(cfg);
    std::istringstream lines(res.csv);
    std::string line;
    std::getline(lines, line);  // header
    long checked = 0;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 12);
        const double t = std::strtod(cells[6].c_str(), nullptr);
        const double cum = std::strtod(cells[8].c_str(), nullptr);
        const double base = std::strtod(cells[9].c_str(), nullptr);
        const double avg = std::strtod(cells[10].c_str(), nullptr);
        CHECK(avg == (base - cum) / t);
        ++checked;
    }
    CHECK(checked == 32);

    // final per-run queries match the block accounting: K/L per round for
    // full information, one per round otherwise
    for (const RunResult& rr : res.runs) {
        const long total = rr.regret.queries_cum.back();
        if (rr.feedback == Feedback::full_info)
            CHECK(total == rr.T * 2 / 2);
        else
            CHECK(total == rr.T);
    }
}

TEST_CASE("failed runs are recorded while the rest of the experiment survives") {
    ExperimentConfig cfg = small_config();
    AlgorithmConfig bad;
    bad.name = "bad";
    bad.feedback = Feedback::full_info;
    bad.oracle = OracleKind::value;
    // passes config validation (delta > 0) but exceeds every interior radius
    // inside the unit box, so each run dies at oracle validation
    bad.explicit_schedule = ExplicitSchedule{2, 2, 0.9};
    cfg.algorithms.push_back(bad);

    setenv("DRSUBMAX_THREADS", "1", 1);
    const ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.failures.size() == 2);
    for (const std::string& f : res.failures) {
        CHECK(f.find("run bad-T8-s") != std::string::npos);
        CHECK(f.find("delta") != std::string::npos);
    }
    CHECK(res.runs.size() == 4);  // the two good algorithms, two seeds each
    CHECK(res.csv.find("bad-T8") == std::string::npos);

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "drsubmax_partial_flush_test";
    fs::remove_all(dir);
    write_experiment_outputs(res, dir.string());
    std::ifstream in(dir / "results.csv", std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == res.csv);
    fs::remove_all(dir);
}

TEST_CASE("schedule validation happens before any run starts") {
    ExperimentConfig cfg = small_config();
    cfg.algorithms[0].explicit_schedule = ExplicitSchedule{2, 3, 0.0};  // 3 does not divide 8
    CHECK_THROWS_AS(run_experiment(cfg), InvalidSchedule);

    ExperimentConfig cfg2 = small_config();
    cfg2.algorithms[1].explicit_schedule = ExplicitSchedule{4, 2, 0.0};  // K > L, semi-bandit
    CHECK_THROWS_AS(run_experiment(cfg2), InvalidSchedule);

    ExperimentConfig cfg3 = small_config();
    cfg3.algorithms[0].explicit_schedule = ExplicitSchedule{2, 2, 0.1};  // gradient + smoothing
    CHECK_THROWS_AS(run_experiment(cfg3), InvalidSchedule);
}
