#include "drsubmax/fw.hpp"

#include <cmath>

#include "drsubmax/errors.hpp"

namespace drsubmax {

namespace {

constexpr uint64_t kStreamOlo = 0x6f6c6fULL;
constexpr uint64_t kStreamPermutation = 0x7065726dULL;
constexpr uint64_t kStreamQuery = 0x71727979ULL;

long round_power(long T, double exponent) {
    const double v = std::pow(static_cast<double>(T), exponent);
    long r = static_cast<long>(std::llround(v));
    return r < 1 ? 1 : r;
}

// nearest divisor of T, searching outward; ties prefer the smaller divisor
long snap_to_divisor(long T, long L) {
    if (L < 1) L = 1;
    if (L > T) L = T;
    for (long off = 0;; ++off) {
        if (L - off >= 1 && T % (L - off) == 0) return L - off;
        if (L + off <= T && T % (L + off) == 0) return L + off;
    }
}

void validate_case(CaseLabel c, const Region& region) {
    const bool base_origin =
        region.delta > 0.0 ? region.base_contains_origin : region.contains_origin();
    switch (c) {
        case CaseLabel::monotone_origin:
            if (!base_origin)
                throw ScheduleMismatch("monotone_origin requires a region containing the origin");
            break;
        case CaseLabel::nonmono_downward:
            if (!region.downward_closed || !base_origin)
                throw ScheduleMismatch("nonmono_downward requires a downward-closed region");
            break;
        default:
            break;
    }
}

void validate_oracle(const BlockSchedule& sch, const OracleSpec& spec, const Region& region) {
    if (spec.kind != sch.oracle)
        throw ScheduleMismatch("oracle kind differs between schedule and oracle spec");
    if (sch.oracle == OracleKind::gradient) {
        if (sch.delta != 0.0 || spec.delta != 0.0)
            throw ScheduleMismatch("gradient oracles run unsmoothed (delta = 0)");
    } else {
        if (sch.delta <= 0.0 || sch.delta != spec.delta)
            throw ScheduleMismatch("value oracles need a positive smoothing delta");
        if (sch.delta >= region.radius)
            throw ScheduleMismatch("smoothing delta must stay below the region's interior radius");
    }
    if (sch.T < 1 || sch.K < 1 || sch.L < 1 || sch.T % sch.L != 0 || sch.Q != sch.T / sch.L)
        throw InvalidSchedule("block schedule is inconsistent");
}

struct RunState {
    Region playground;           // the region the iterates live in (shrunk for value oracles)
    Vec u_bar;
    std::vector<FtplOracle> oracles;
    Rng perm_rng;
    Rng query_rng;

    RunState(const BlockSchedule& sch, const Region& region, const OracleSpec& spec,
             uint64_t seed, const OloFactory& factory)
        : playground(sch.delta > 0.0 ? shrink(region, sch.delta) : region),
          perm_rng(derive_seed(seed, kStreamPermutation)),
          query_rng(derive_seed(seed, kStreamQuery)) {
        u_bar = min_inf_norm_point(playground).point;
        OloFactory f = factory ? factory : default_olo_factory(spec, seed);
        oracles.reserve(sch.K);
        for (long k = 0; k < sch.K; ++k)
            oracles.push_back(f(static_cast<int>(k), playground, sch.Q));
    }
};

// x^(1..K+1) for one block: pull every oracle once, walk the update chain.
std::vector<Vec> block_iterates(CaseLabel c, const BlockSchedule& sch, RunState& st) {
    std::vector<Vec> xs;
    xs.reserve(sch.K + 1);
    xs.push_back(st.u_bar);
    for (long k = 0; k < sch.K; ++k) {
        Vec v = st.oracles[static_cast<size_t>(k)].next();
        xs.push_back(update(c, xs.back(), v, st.u_bar, sch.K));
    }
    return xs;
}

std::vector<long> block_permutation(long block_start, long L, Rng& rng) {
    std::vector<long> perm(L);
    for (long l = 0; l < L; ++l) perm[l] = block_start + l;
    rng.shuffle(perm);
    return perm;
}

// grad-estimate: a noisy gradient at x, or a one-point estimate through the
// value oracle at x + delta u.
Vec estimate_direction(const OracleSpec& spec, const QuadraticObjective& f, const Vec& x,
                       const Vec& u, double delta, int d_prime, Rng& rng) {
    if (spec.kind == OracleKind::gradient) return noisy_gradient(f, x, spec.noise, rng);
    return one_point_gradient_estimate(
        [&](const Vec& z) { return noisy_value(f, z, spec.noise, rng); }, x, delta, u, d_prime);
}

// annotate escaped errors with the block they died in
template <typename Fn>
auto with_block_context(long q, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw NumericalFailure("block " + std::to_string(q) + ": " + e.what());
    }
}

}  // namespace

const char* case_name(CaseLabel c) {
    switch (c) {
        case CaseLabel::monotone_origin: return "monotone_origin";
        case CaseLabel::nonmono_downward: return "nonmono_downward";
        case CaseLabel::monotone_general: return "monotone_general";
        case CaseLabel::nonmono_general: return "nonmono_general";
    }
    return "?";
}

CaseLabel case_from_name(const std::string& name) {
    if (name == "monotone_origin") return CaseLabel::monotone_origin;
    if (name == "nonmono_downward") return CaseLabel::nonmono_downward;
    if (name == "monotone_general") return CaseLabel::monotone_general;
    if (name == "nonmono_general") return CaseLabel::nonmono_general;
    throw ConfigError("unknown case label: " + name);
}

const char* feedback_name(Feedback f) {
    switch (f) {
        case Feedback::full_info: return "full_info";
        case Feedback::semi_bandit: return "semi_bandit";
        case Feedback::bandit: return "bandit";
    }
    return "?";
}

Feedback feedback_from_name(const std::string& name) {
    if (name == "full_info") return Feedback::full_info;
    if (name == "semi_bandit") return Feedback::semi_bandit;
    if (name == "bandit") return Feedback::bandit;
    throw ConfigError("unknown feedback mode: " + name);
}

Vec update(CaseLabel c, const Vec& x, const Vec& v, const Vec& u_bar, long K) {
    const size_t d = x.size();
    if (v.size() != d || u_bar.size() != d) throw LengthMismatch("update: dimension mismatch");
    Vec out(d);
    switch (c) {
        case CaseLabel::monotone_origin:
            for (size_t i = 0; i < d; ++i) out[i] = x[i] + (v[i] - u_bar[i]) / static_cast<double>(K);
            break;
        case CaseLabel::nonmono_downward:
            for (size_t i = 0; i < d; ++i)
                out[i] = x[i] + (v[i] - u_bar[i]) * (1.0 - x[i]) / static_cast<double>(K);
            break;
        case CaseLabel::monotone_general: {
            const double eps = epsilon_step(c, K);
            for (size_t i = 0; i < d; ++i) out[i] = (1.0 - eps) * x[i] + eps * v[i];
            break;
        }
        case CaseLabel::nonmono_general: {
            const double eps = epsilon_step(c, K);
            for (size_t i = 0; i < d; ++i) out[i] = (1.0 - eps) * x[i] + eps * v[i];
            break;
        }
    }
    return out;
}

Vec oracle_adv(CaseLabel c, const Vec& d, const Vec& x) {
    if (c != CaseLabel::nonmono_downward) return d;
    if (d.size() != x.size()) throw LengthMismatch("oracle_adv: dimension mismatch");
    Vec out(d.size());
    for (size_t i = 0; i < d.size(); ++i) out[i] = d[i] * (1.0 - x[i]);
    return out;
}

double approx_ratio(CaseLabel c, double h) {
    switch (c) {
        case CaseLabel::monotone_origin: return 1.0 - 1.0 / std::exp(1.0);
        case CaseLabel::nonmono_downward: return 1.0 / std::exp(1.0);
        case CaseLabel::monotone_general: return 0.5;
        case CaseLabel::nonmono_general: return 0.25 * (1.0 - h);
    }
    return 0.0;
}

double epsilon_step(CaseLabel c, long K) {
    switch (c) {
        case CaseLabel::monotone_general:
            return std::log(static_cast<double>(K)) / (2.0 * static_cast<double>(K));
        case CaseLabel::nonmono_general:
            return std::log(2.0) / static_cast<double>(K);
        default:
            return 1.0 / static_cast<double>(K);
    }
}

Vec eta_weights(CaseLabel c, long K) {
    Vec w(K);
    const bool general =
        (c == CaseLabel::monotone_general) || (c == CaseLabel::nonmono_general);
    const double eps = epsilon_step(c, K);
    for (long k = 1; k <= K; ++k) {
        const double base = general ? (1.0 - 2.0 * eps) : (1.0 - 1.0 / static_cast<double>(K));
        w[k - 1] = std::pow(base, static_cast<double>(K - k)) * eps;
    }
    return w;
}

double offline_gamma(CaseLabel c, long K, const ObjectiveMetadata& md, double diameter,
                     double u_bar_inf) {
    const double D2 = diameter * diameter;
    const double Kd = static_cast<double>(K);
    switch (c) {
        case CaseLabel::monotone_origin:
            return md.M2 * D2 / (2.0 * Kd);
        case CaseLabel::nonmono_downward:
            return md.M2 * D2 / (2.0 * Kd) + (md.M0 + md.M1) * u_bar_inf;
        case CaseLabel::monotone_general: {
            const double lg = std::log(Kd);
            return (8.0 * md.M0 + md.M2 * D2 * lg * lg) / (8.0 * Kd);
        }
        case CaseLabel::nonmono_general:
            return (md.M0 + 2.0 * md.M2 * D2) / (4.0 * Kd);
    }
    return 0.0;
}

BlockSchedule schedule(Feedback feedback, OracleKind oracle, long T, double beta) {
    if (T < 1) throw InvalidSchedule("horizon must be positive");
    BlockSchedule sch;
    sch.T = T;
    sch.feedback = feedback;
    sch.oracle = oracle;
    sch.beta = beta;
    if (feedback == Feedback::full_info) {
        if (beta < 0.0 || beta > 0.5) throw InvalidBeta("beta must lie in [0, 1/2]");
        if (oracle == OracleKind::gradient) {
            sch.delta = 0.0;
            sch.L = round_power(T, (1.0 - 2.0 * beta) / 3.0);
            sch.K = round_power(T, (1.0 + beta) / 3.0);
        } else {
            sch.delta = std::pow(static_cast<double>(T), -(2.0 + beta) / 5.0);
            sch.L = round_power(T, (2.0 - 4.0 * beta) / 5.0);
            sch.K = round_power(T, (2.0 + beta) / 5.0);
        }
    } else if (feedback == Feedback::semi_bandit) {
        if (oracle != OracleKind::gradient)
            throw ScheduleMismatch("semi-bandit feedback uses gradient samples");
        sch.delta = 0.0;
        sch.L = round_power(T, 0.5);
        sch.K = round_power(T, 0.25);
    } else {
        if (oracle != OracleKind::value)
            throw ScheduleMismatch("bandit feedback uses value samples");
        sch.delta = std::pow(static_cast<double>(T), -1.0 / 6.0);
        sch.L = round_power(T, 1.0 / 3.0);
        sch.K = round_power(T, 1.0 / 6.0);
    }
    sch.L = snap_to_divisor(T, sch.L);
    if (feedback != Feedback::full_info && sch.K > sch.L) sch.K = sch.L;
    sch.Q = T / sch.L;
    return sch;
}

OloFactory default_olo_factory(const OracleSpec& spec, uint64_t seed, double eta_scale) {
    return [spec, seed, eta_scale](int k, const Region& playground, long Q) {
        const int d = playground.dim();
        const double feed_bound = spec.kind == OracleKind::gradient
                                      ? spec.B1
                                      : static_cast<double>(d) / spec.delta * spec.B0;
        const double eta = eta_scale * ftpl_eta(d, feed_bound, Q);
        return FtplOracle(playground, eta, derive_seed(seed, kStreamOlo, static_cast<uint64_t>(k)));
    };
}

AlgorithmTrace meta_frank_wolfe(CaseLabel c, const BlockSchedule& sch, const Region& region,
                                const OracleSpec& spec, const ObjectiveSeq& objective_at,
                                uint64_t seed, const TraceOptions& opt,
                                const OloFactory& olo_factory) {
    if (sch.feedback != Feedback::full_info)
        throw ScheduleMismatch("meta_frank_wolfe runs under full information");
    validate_oracle(sch, spec, region);
    validate_case(c, region);

    RunState st(sch, region, spec, seed, olo_factory);
    const int d = region.dim();

    AlgorithmTrace trace;
    trace.rounds.reserve(sch.T);
    trace.blocks.reserve(sch.Q);
    Vec zero(d, 0.0);

    for (long q = 0; q < sch.Q; ++q) {
        std::vector<Vec> xs = with_block_context(q, [&] { return block_iterates(c, sch, st); });
        const Vec& x_q = xs.back();
        const long block_start = q * sch.L;
        std::vector<long> perm = block_permutation(block_start, sch.L, st.perm_rng);
        std::vector<long> slot(sch.L);  // round offset -> position in the permutation
        for (long l = 0; l < sch.L; ++l) slot[perm[l] - block_start] = l;

        for (long off = 0; off < sch.L; ++off) {
            const long t = block_start + off;
            const QuadraticObjective& f = objective_at(t);
            RoundRecord rec;
            rec.block = q;
            rec.reward = value(f, x_q);
            if (opt.record_actions) rec.action = x_q;

            const long l = slot[off];
            with_block_context(q, [&] {
                for (long k = l; k < sch.K; k += sch.L) {
                    const Vec& xk = xs[static_cast<size_t>(k)];
                    Vec u =
                        spec.kind == OracleKind::value ? sample_unit_sphere(d, st.query_rng) : zero;
                    Vec dir = estimate_direction(spec, f, xk, u, sch.delta, d, st.query_rng);
                    st.oracles[static_cast<size_t>(k)].feed(oracle_adv(c, dir, xk));
                    ++rec.queries;
                }
            });
            trace.total_queries += rec.queries;
            trace.rounds.push_back(std::move(rec));
        }

        BlockRecord br;
        br.x_q = x_q;
        br.permutation = std::move(perm);
        if (opt.record_iterates) br.iterates = std::move(xs);
        trace.blocks.push_back(std::move(br));
    }
    return trace;
}

AlgorithmTrace bandit_frank_wolfe(CaseLabel c, const BlockSchedule& sch, const Region& region,
                                  const OracleSpec& spec, const ObjectiveSeq& objective_at,
                                  uint64_t seed, const TraceOptions& opt,
                                  const OloFactory& olo_factory) {
    if (sch.feedback == Feedback::full_info)
        throw ScheduleMismatch("bandit_frank_wolfe runs under (semi-)bandit feedback");
    if (sch.feedback == Feedback::semi_bandit && sch.oracle != OracleKind::gradient)
        throw ScheduleMismatch("semi-bandit feedback uses gradient samples");
    if (sch.feedback == Feedback::bandit && sch.oracle != OracleKind::value)
        throw ScheduleMismatch("bandit feedback uses value samples");
    if (sch.K > sch.L)
        throw InvalidSchedule("bandit schedules need K <= L");
    validate_oracle(sch, spec, region);
    validate_case(c, region);

    RunState st(sch, region, spec, seed, olo_factory);
    const int d = region.dim();

    AlgorithmTrace trace;
    trace.rounds.reserve(sch.T);
    trace.blocks.reserve(sch.Q);
    Vec zero(d, 0.0);

    for (long q = 0; q < sch.Q; ++q) {
        std::vector<Vec> xs = with_block_context(q, [&] { return block_iterates(c, sch, st); });
        const Vec& x_q = xs.back();
        const long block_start = q * sch.L;
        std::vector<long> perm = block_permutation(block_start, sch.L, st.perm_rng);
        std::vector<long> slot(sch.L);
        for (long l = 0; l < sch.L; ++l) slot[perm[l] - block_start] = l;

        for (long off = 0; off < sch.L; ++off) {
            const long t = block_start + off;
            const QuadraticObjective& f = objective_at(t);
            RoundRecord rec;
            rec.block = q;
            rec.queries = 1;  // one sample per round, always at the played point

            const long l = slot[off];
            with_block_context(q, [&] {
                if (l < sch.K) {
                    // exploration: play the inner iterate (perturbed for value
                    // oracles) and feed oracle l from the observed sample
                    const Vec& xk = xs[static_cast<size_t>(l)];
                    Vec u =
                        spec.kind == OracleKind::value ? sample_unit_sphere(d, st.query_rng) : zero;
                    Vec played(xk);
                    if (spec.kind == OracleKind::value)
                        for (int i = 0; i < d; ++i) played[i] += sch.delta * u[i];
                    rec.explore = true;
                    rec.reward = value(f, played);
                    if (opt.record_actions) rec.action = std::move(played);
                    Vec dir = estimate_direction(spec, f, xk, u, sch.delta, d, st.query_rng);
                    st.oracles[static_cast<size_t>(l)].feed(oracle_adv(c, dir, xk));
                } else {
                    // exploitation: play the block iterate; the sample drawn at
                    // it is observed but unused
                    rec.reward = value(f, x_q);
                    if (opt.record_actions) rec.action = x_q;
                    if (spec.kind == OracleKind::gradient) {
                        noisy_gradient(f, x_q, spec.noise, st.query_rng);
                    } else {
                        noisy_value(f, x_q, spec.noise, st.query_rng);
                    }
                }
            });
            trace.total_queries += rec.queries;
            trace.rounds.push_back(std::move(rec));
        }

        BlockRecord br;
        br.x_q = x_q;
        br.permutation = std::move(perm);
        if (opt.record_iterates) br.iterates = std::move(xs);
        trace.blocks.push_back(std::move(br));
    }
    return trace;
}

Vec offline_frank_wolfe(CaseLabel c, const Region& region, long K,
                        const std::function<Vec(const Vec&)>& grad_fn,
                        std::vector<Vec>* iterates) {
    validate_case(c, region);
    Vec x = min_inf_norm_point(region).point;
    const Vec u_bar = x;
    if (iterates) {
        iterates->clear();
        iterates->push_back(x);
    }
    for (long k = 0; k < K; ++k) {
        Vec g = grad_fn(x);
        Vec v = lmo(region, oracle_adv(c, g, x));
        x = update(c, x, v, u_bar, K);
        if (iterates) iterates->push_back(x);
    }
    return x;
}

}  // namespace drsubmax
