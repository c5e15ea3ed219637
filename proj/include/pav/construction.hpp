#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pav/count_cache.hpp"
#include "pav/enumeration.hpp"
#include "pav/permutation.hpp"

namespace pav {

/// Band membership for points of a decreasing set in [1,m1] x [1,m2]:
/// y < m2 - x*m2/m1 + band, where band = band_num/band_den. Evaluated by
/// integer cross-multiplication, never floating point.
bool dec_band_ok(int x, int y, int m1, int m2, long band_num, long band_den = 1);

/// Window membership for the l-th element of a w-subset of {1..m}:
/// |x - l*m/(w+1)| < band, exact.
bool seq_window_ok(int x, int l, int w, int m, int band);

/// |Dec(w; m1, m2)| = binom(m1,w) * binom(m2,w).
Count dec_count(int w, int m1, int m2);

/// Exact |Dec*A(w; m1, m2)|: w-element decreasing subsets of [1,m1] x [1,m2]
/// whose points all satisfy the band condition. Dynamic programming over
/// points in x-order with prefix-sum acceleration, O(w * m1 * m2).
Count dec_banded_count(int w, int m1, int m2, int band);

/// Exact |Seq*A(w; m)|: w-subsets of {1..m} whose l-th smallest element lies
/// within `band` of l*m/(w+1), for every l.
Count seq_banded_count(int w, int m, int band);

/// Theta(x, z) = {(x(1), z(w)), (x(2), z(w-1)), ..., (x(w), z(1))}; the
/// bijection between pairs of index sets and decreasing sets.
DecreasingSet theta(std::span<const int> xs, std::span<const int> zs);

/// All of Dec(w; m1, m2), or Dec*A(w; m1, m2) when band is set. For
/// exhaustive small-size checks and the demo driver.
std::vector<DecreasingSet> enumerate_dec(int w, int m1, int m2, std::optional<int> band);

/// All of Seq(w; m) / Seq*A(w; m) as increasing index vectors.
std::vector<std::vector<int>> enumerate_seq(int w, int m, std::optional<int> band);

/// Input to the explicit injection: sigma is assembled from two banded
/// decreasing sets flanking the target point (col, val) plus a filler
/// permutation phi on the remaining positions. band plays the role of A.
struct ConstructionInput {
    int n = 0;
    int col = 0;   // I
    int val = 0;   // J
    int band = 0;  // A
    DecreasingSet b1;  // in Dec*A(w1; col-1, n-2A-val)
    DecreasingSet b2;  // in Dec*A(w2; n-2A-col, val-1)
    Permutation phi;   // length n - w1 - w2 - 1 with phi_i > len - i - A

    /// Throws std::invalid_argument when any invariant fails.
    void validate() const;

    /// (B1 + (0,val)) u {(col,val)} u (B2 + (col,0)).
    DecreasingSet psi() const;
};

/// The injection Q: builds sigma in S_n whose graph contains psi, with
/// standardize(sigma \ psi) == phi, sigma_col == val, and (col,val) a
/// left-to-right minimum. Throws std::logic_error if the built permutation
/// violates the banded-column split (which would be a construction bug).
Permutation build_sigma(const ConstructionInput& input);

/// True iff sigma_j < n - j - band for every column j covered by psi and
/// sigma_j > n - j - band for every other column. psi must lie on the graph.
bool verify_key_claim(const Permutation& sigma, const DecreasingSet& psi, int band);

/// Lower bound: |F*_n(col,val;mu_k)| >= |Dec*A(w1;..)| * |Dec*A(w2;..)| *
/// |S*A_{n-w1-w2-1}(mu_{k-1})|. holds = (lhs >= rhs); this is a theorem.
/// Requires val < n - col - 2*band, 0 <= w1 <= col-1, 0 <= w2 <= val-1,
/// k >= 4.
BoundReport check_lower_bound(int n, int col, int val, int band, int w1, int w2, int k,
                              CountCache* cache = nullptr);

/// A concrete member of Dec*A(w; m1, m2) hugging the rectangle diagonal from
/// below, for the demo driver. Throws std::runtime_error when no such set is
/// found by the greedy scan.
DecreasingSet default_banded_dec(int w, int m1, int m2, int band);

}  // namespace pav
