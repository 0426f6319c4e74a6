#include "drsubmax/olo.hpp"

#include <cmath>

#include "drsubmax/errors.hpp"

namespace drsubmax {

Vec FtplOracle::next() {
    Vec dir(cumulative_);
    if (eta_ > 0.0) {
        for (double& v : dir) v += rng_.uniform(0.0, eta_);
    }
    return lmo(*region_, dir);
}

void FtplOracle::feed(const Vec& g) {
    if (g.size() != cumulative_.size()) throw LengthMismatch("FtplOracle::feed: dimension mismatch");
    for (size_t i = 0; i < g.size(); ++i) cumulative_[i] += g[i];
    ++feeds_;
}

double ftpl_eta(int d, double feed_bound, long q_rounds) {
    return std::sqrt(static_cast<double>(d)) * feed_bound *
           std::sqrt(static_cast<double>(q_rounds));
}

double olo_regret_estimate(const std::vector<Vec>& actions, const std::vector<Vec>& feeds,
                           const Vec& comparator) {
    if (actions.size() != feeds.size())
        throw LengthMismatch("olo_regret_estimate: actions and feeds differ in length");
    double regret = 0.0;
    for (size_t q = 0; q < feeds.size(); ++q) {
        regret += dot(feeds[q], comparator) - dot(feeds[q], actions[q]);
    }
    return regret;
}

}  // namespace drsubmax
