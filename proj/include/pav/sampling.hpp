#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pav/enumeration.hpp"
#include "pav/permutation.hpp"
#include "pav/rng.hpp"
#include "pav/rsk.hpp"

namespace pav {

/// Exactly uniform sampler over S_n(tau) for any pattern, by position-by-
/// position choice weighted with exact completion counts. Cost is roughly
/// one full enumeration of S_n(tau) per draw, so only suitable for small n;
/// the node budget turns a runaway draw into a resource error.
class PrefixSampler {
public:
    static constexpr uint64_t kDefaultNodeBudget = 200'000'000;

    PrefixSampler(int n, Permutation tau, uint64_t node_budget = kDefaultNodeBudget);

    Permutation sample(Rng& rng);

private:
    int n_;
    Permutation tau_;
    uint64_t node_budget_;
};

/// Exactly uniform sampler over S_n(mu_k), i.e. permutations with LIS at
/// most k-1: draws a bounded-width shape with probability proportional to
/// syt_count(shape)^2, then two independent uniform tableaux, then applies
/// inverse RSK. Scales to n in the hundreds.
class RskSampler {
public:
    RskSampler(int n, int k);

    Permutation sample(Rng& rng);
    Shape sample_shape(Rng& rng);

    /// Sum of syt_count^2 over the admissible shapes; equals |S_n(mu_k)|.
    const Count& total() const { return total_; }
    const std::vector<std::pair<Shape, Count>>& shapes() const { return shapes_; }

private:
    int n_;
    int k_;
    std::vector<std::pair<Shape, Count>> shapes_;  // (shape, syt_count)
    std::vector<Count> cumulative_;                // running sum of syt_count^2
    Count total_;
    SytCounter counter_;
};

/// CSV rows "i,value", one per graph point.
void scatter_emit(const Permutation& sigma, std::ostream& out);

}  // namespace pav
