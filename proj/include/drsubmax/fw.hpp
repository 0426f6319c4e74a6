#pragma once

#include <functional>

#include "drsubmax/geometry.hpp"
#include "drsubmax/objectives.hpp"
#include "drsubmax/olo.hpp"

namespace drsubmax {

// Problem class, determining the approximation ratio, the step rule, and the
// direction transform:
//   monotone_origin:        monotone objective, region contains the origin
//   nonmono_downward:       non-monotone objective, downward-closed region
//   monotone_general:       monotone objective, any convex region in the box
//   nonmono_general:        non-monotone objective, any convex region
enum class CaseLabel { monotone_origin, nonmono_downward, monotone_general, nonmono_general };

const char* case_name(CaseLabel c);
CaseLabel case_from_name(const std::string& name);

enum class Feedback { full_info, semi_bandit, bandit };

const char* feedback_name(Feedback f);
Feedback feedback_from_name(const std::string& name);

// One inner step from x toward vertex v (u_bar is the region's minimum-norm
// point, K the number of inner steps per block).
Vec update(CaseLabel c, const Vec& x, const Vec& v, const Vec& u_bar, long K);

// Direction handed to the linear oracle: d masked by (1 - x) coordinatewise
// for the downward-closed non-monotone case, d otherwise.
Vec oracle_adv(CaseLabel c, const Vec& d, const Vec& x);

// alpha for the alpha-regret notion of each case; h = min-infinity-norm of
// the region (only the last case depends on it).
double approx_ratio(CaseLabel c, double h);

double epsilon_step(CaseLabel c, long K);

// Per-step weights eta^(k), k = 1..K, from the offline guarantee; they sum to
// at most log(K) for monotone_general and at most 1 otherwise.
Vec eta_weights(CaseLabel c, long K);

// Additive loss floor of the offline guarantee for a K-step run.
// u_bar_inf = ||u_bar||_inf of the region being optimized over.
double offline_gamma(CaseLabel c, long K, const ObjectiveMetadata& md, double diameter,
                     double u_bar_inf);

struct BlockSchedule {
    long T = 0;
    long K = 1;      // inner steps per block = online linear oracles
    long L = 1;      // block length; divides T
    long Q = 0;      // T / L blocks
    double delta = 0.0;
    double beta = 0.0;
    Feedback feedback = Feedback::full_info;
    OracleKind oracle = OracleKind::gradient;
};

// Horizon-driven schedule:
//   full info, gradient: delta = 0,         L = T^((1-2b)/3), K = T^((1+b)/3)
//   full info, value:    delta = T^-((2+b)/5), L = T^((2-4b)/5), K = T^((2+b)/5)
//   semi-bandit:         delta = 0,         L = T^(1/2),      K = T^(1/4)
//   bandit:              delta = T^(-1/6),  L = T^(1/3),      K = T^(1/6)
// Exponents are rounded to the nearest integer >= 1; L then snaps to the
// nearest divisor of T (ties prefer the smaller divisor); (semi-)bandit
// schedules additionally cap K at L.
BlockSchedule schedule(Feedback feedback, OracleKind oracle, long T, double beta = 0.0);

struct RoundRecord {
    Vec action;        // empty unless record_actions
    double reward = 0.0;
    int queries = 0;
    long block = 0;
    bool explore = false;
};

struct BlockRecord {
    Vec x_q;
    std::vector<long> permutation;   // round indices of the block, shuffled
    std::vector<Vec> iterates;       // x^(1) .. x^(K+1); empty unless record_iterates
};

struct AlgorithmTrace {
    std::vector<RoundRecord> rounds;
    std::vector<BlockRecord> blocks;
    long total_queries = 0;
};

struct TraceOptions {
    bool record_actions = true;
    bool record_iterates = true;
};

using ObjectiveSeq = std::function<const QuadraticObjective&(long)>;
using OloFactory = std::function<FtplOracle(int k, const Region& playground, long Q)>;

// sqrt(d) * B * sqrt(Q) perturbation, B read off the oracle spec
// (B1 for gradient feeds, (d'/delta) B0 for value feeds), times eta_scale.
OloFactory default_olo_factory(const OracleSpec& spec, uint64_t seed, double eta_scale = 1.0);

// Full-information block algorithm: plays the block iterate x_q for all L
// rounds of a block and spreads the K oracle feeds over the block's rounds
// via a fresh random permutation; K/L queries per objective, T K / L total.
AlgorithmTrace meta_frank_wolfe(CaseLabel c, const BlockSchedule& sch, const Region& region,
                                const OracleSpec& spec, const ObjectiveSeq& objective_at,
                                uint64_t seed, const TraceOptions& opt = {},
                                const OloFactory& olo_factory = {});

// (Semi-)bandit block algorithm (requires K <= L): K exploration rounds per
// block sample the objective at the inner iterates (value oracles at
// x^(k) + delta u), the rest replay x_q; exactly one oracle sample per round.
AlgorithmTrace bandit_frank_wolfe(CaseLabel c, const BlockSchedule& sch, const Region& region,
                                  const OracleSpec& spec, const ObjectiveSeq& objective_at,
                                  uint64_t seed, const TraceOptions& opt = {},
                                  const OloFactory& olo_factory = {});

// Offline Frank-Wolfe ascent with exact per-step linear maximization.
Vec offline_frank_wolfe(CaseLabel c, const Region& region, long K,
                        const std::function<Vec(const Vec&)>& grad_fn,
                        std::vector<Vec>* iterates = nullptr);

}  // namespace drsubmax
