#pragma once

#include "drsubmax/geometry.hpp"
#include "drsubmax/linalg.hpp"
#include "drsubmax/rng.hpp"

namespace drsubmax {

// Follow-the-perturbed-leader over a polytope: next() returns
// lmo(region, cumulative_gradient + p) with p drawn coordinatewise uniform on
// [0, eta], freshly each call. Deterministic given the seed; feeds accumulate
// exactly in order.
class FtplOracle {
  public:
    FtplOracle(const Region& region, double eta, uint64_t seed)
        : region_(&region), eta_(eta), rng_(seed), cumulative_(region.dim(), 0.0) {}

    Vec next();
    void feed(const Vec& g);

    const Vec& cumulative_gradient() const { return cumulative_; }
    long feeds_seen() const { return feeds_; }
    double eta() const { return eta_; }

  private:
    const Region* region_;
    double eta_;
    Rng rng_;
    Vec cumulative_;
    long feeds_ = 0;
};

// Perturbation scale sqrt(d) * feed_bound * sqrt(Q) used when wiring oracles
// into the block algorithms; callers may rescale it.
double ftpl_eta(int d, double feed_bound, long q_rounds);

// sum_q <g_q, comparator - action_q>: linear regret of the recorded plays
// against a fixed comparator.
double olo_regret_estimate(const std::vector<Vec>& actions, const std::vector<Vec>& feeds,
                           const Vec& comparator);

}  // namespace drsubmax
