#include "pav/sampling.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace pav {

uint64_t Rng::splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

uint64_t Rng::below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
        const uint64_t raw = next_u64();
        if (raw < limit) return raw % n;
    }
}

mpz_class Rng::below(const mpz_class& n) {
    if (n <= 0) throw std::invalid_argument("Rng::below: n must be positive");
    const size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    const size_t words = (bits + 63) / 64;
    const unsigned top_bits = static_cast<unsigned>(bits - (words - 1) * 64);
    const uint64_t top_mask = top_bits >= 64 ? UINT64_MAX : ((uint64_t{1} << top_bits) - 1);
    for (;;) {
        mpz_class r = 0;
        for (size_t w = 0; w < words; ++w) {
            uint64_t chunk = next_u64();
            if (w == 0) chunk &= top_mask;  // first chunk is the most significant
            mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 64);
            r += static_cast<unsigned long>(chunk);
        }
        if (r < n) return r;
    }
}

PrefixSampler::PrefixSampler(int n, Permutation tau, uint64_t node_budget)
    : n_(n), tau_(std::move(tau)), node_budget_(node_budget) {
    if (n_ < 1) throw std::invalid_argument("PrefixSampler: n must be >= 1");
    if (tau_.size() < 2) throw std::invalid_argument("PrefixSampler: pattern must have length >= 2");
}

Permutation PrefixSampler::sample(Rng& rng) {
    AvoiderSearch search(CellQuery{tau_, n_});
    search.set_node_budget(node_budget_);
    Count remaining = search.count_completions();
    if (remaining == 0) throw std::logic_error("PrefixSampler: empty avoider set");
    for (int pos = 1; pos <= n_; ++pos) {
        // Completion counts of the children partition the parent's count, so
        // one uniform draw in [0, remaining) picks the next value exactly.
        mpz_class draw = rng.below(remaining);
        bool chosen = false;
        for (int v = 1; v <= n_ && !chosen; ++v) {
            if (!search.try_push(v)) continue;
            const Count child = search.count_completions();
            if (draw < child) {
                remaining = child;
                chosen = true;
            } else {
                draw -= child;
                search.pop();
            }
        }
        if (!chosen) throw std::logic_error("PrefixSampler: child counts did not sum to parent");
    }
    return Permutation(search.prefix());
}

RskSampler::RskSampler(int n, int k) : n_(n), k_(k) {
    if (n_ < 1 || k_ < 3) throw std::invalid_argument("RskSampler: requires n >= 1 and k >= 3");
    total_ = 0;
    for (const Shape& shape : shapes_bounded_width(n_, k_ - 1)) {
        const Count f = syt_count(shape);
        shapes_.emplace_back(shape, f);
        total_ += f * f;
        cumulative_.push_back(total_);
    }
}

Shape RskSampler::sample_shape(Rng& rng) {
    const mpz_class draw = rng.below(total_);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), draw);
    return shapes_[static_cast<size_t>(it - cumulative_.begin())].first;
}

Permutation RskSampler::sample(Rng& rng) {
    const Shape shape = sample_shape(rng);
    const Tableau p = sample_syt(shape, rng, counter_);
    const Tableau q = sample_syt(shape, rng, counter_);
    return inverse_rsk(p, q);
}

void scatter_emit(const Permutation& sigma, std::ostream& out) {
    out << "i,value\n";
    for (int i = 1; i <= sigma.size(); ++i) out << i << ',' << sigma(i) << '\n';
}

}  // namespace pav
