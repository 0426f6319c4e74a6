#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drsubmax/fw.hpp"
#include "drsubmax/harness.hpp"
#include "drsubmax/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace drsubmax;

    CLI::App app{"projection-free online maximization of DR-submodular quadratics"};
    app.require_subcommand(1);

    int dim = 25;
    int constraints = 15;
    long horizon = 500;
    std::string case_str = "nonmono_downward";
    uint64_t gen_seed = 1;
    std::string gen_out = "instance.json";
    auto* gen = app.add_subcommand("generate", "draw an adversary instance and write it as JSON");
    gen->add_option("--dim", dim, "coordinate count")->check(CLI::PositiveNumber);
    gen->add_option("--constraints", constraints, "linear constraint count")
        ->check(CLI::PositiveNumber);
    gen->add_option("--horizon", horizon, "number of objectives to draw")
        ->check(CLI::PositiveNumber);
    gen->add_option("--case", case_str, "problem class")
        ->check(CLI::IsMember(
            {"monotone_origin", "nonmono_downward", "monotone_general", "nonmono_general"}));
    gen->add_option("--seed", gen_seed, "adversary seed");
    gen->add_option("--out", gen_out, "output path");

    std::string config_path;
    std::string run_out = "results";
    auto* run = app.add_subcommand("run", "run an experiment config and write CSV outputs");
    run->add_option("--config", config_path, "experiment JSON")->required();
    run->add_option("--out", run_out, "output directory");

    std::string suite = "all";
    uint64_t verify_seed = 20250816;
    auto* verify = app.add_subcommand("verify", "run randomized self-checks");
    verify->add_option("--suite", suite, "which property suite")
        ->check(CLI::IsMember({"all", "lp", "geometry", "estimators", "offline"}));
    verify->add_option("--seed", verify_seed, "seed for the randomized checks");

    std::string fb_str = "full_info";
    std::string oracle_str = "gradient";
    long sched_T = 500;
    double beta = 0.0;
    auto* sched = app.add_subcommand("schedule", "resolve the horizon-driven block schedule");
    sched->add_option("--feedback", fb_str, "feedback model")
        ->check(CLI::IsMember({"full_info", "semi_bandit", "bandit"}));
    sched->add_option("--oracle", oracle_str, "oracle kind")
        ->check(CLI::IsMember({"gradient", "value"}));
    sched->add_option("--horizon", sched_T, "horizon T")->check(CLI::PositiveNumber);
    sched->add_option("--beta", beta, "adaptivity exponent in [0, 1/2]");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const Adversary adv =
                build_adversary(dim, constraints, horizon, case_from_name(case_str), gen_seed);
            write_file(gen_out, adversary_to_json(adv, horizon));
            std::cout << "wrote " << gen_out << " (d=" << dim << ", m=" << constraints
                      << ", T=" << horizon << ", seed=" << gen_seed << ")\n";
        } else if (run->parsed()) {
            const ExperimentConfig cfg = parse_experiment_config(read_file(config_path));
            const ExperimentResult result = run_experiment(cfg);
            write_experiment_outputs(result, run_out);
            std::cout << result.summary_csv;
            std::cout << "wrote " << run_out << "/results.csv and " << run_out
                      << "/summary.csv (" << result.runs.size() << " runs)\n";
            if (!result.failures.empty()) {
                for (const std::string& f : result.failures) std::cerr << "failed: " << f << "\n";
                return 1;
            }
        } else if (verify->parsed()) {
            std::vector<SuiteResult> results;
            if (suite == "all")
                results = verify_all(verify_seed);
            else
                results.push_back(run_suite(suite, verify_seed));
            bool all_ok = true;
            for (const SuiteResult& sr : results) {
                std::cout << "suite " << sr.suite << "\n";
                for (const CheckResult& c : sr.checks) {
                    std::cout << "  [" << (c.passed ? " ok " : "FAIL") << "] " << c.name << " ("
                              << c.detail << ")\n";
                    all_ok = all_ok && c.passed;
                }
            }
            if (!all_ok) {
                std::cout << "self-checks FAILED\n";
                return 1;
            }
            std::cout << "all self-checks passed\n";
        } else if (sched->parsed()) {
            const OracleKind kind =
                oracle_str == "value" ? OracleKind::value : OracleKind::gradient;
            const BlockSchedule s = schedule(feedback_from_name(fb_str), kind, sched_T, beta);
            std::cout << "T=" << s.T << " K=" << s.K << " L=" << s.L << " Q=" << s.Q
                      << " delta=" << format_double(s.delta) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
