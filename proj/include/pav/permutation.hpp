#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace pav {

/// A permutation of {1,...,N} in one-line notation. Indices and values are
/// 1-based throughout, matching the lattice-point conventions of the rest of
/// the library.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> entries);

    static Permutation identity(int n);
    static Permutation decreasing(int n);

    /// Parses "1 4 2 3", "1,4,2,3", or the compact digit form "1423"
    /// (compact form is only unambiguous for N <= 9).
    static Permutation parse(const std::string& text);

    int size() const { return static_cast<int>(entries_.size()); }
    /// Value at 1-based position i.
    int operator()(int i) const { return entries_[static_cast<size_t>(i) - 1]; }
    const std::vector<int>& entries() const { return entries_; }

    /// One-line notation, whitespace separated: "1 4 2 3".
    std::string str() const;

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> entries_;
};

struct LatticePoint {
    int x = 0;  // column, >= 1
    int y = 0;  // value, >= 1
    bool operator==(const LatticePoint&) const = default;
    auto operator<=>(const LatticePoint&) const = default;
};

/// A finite set of lattice points with strictly increasing x and strictly
/// decreasing y along the list. May be empty.
class DecreasingSet {
public:
    DecreasingSet() = default;
    explicit DecreasingSet(std::vector<LatticePoint> points);

    /// Sorts by x and validates; throws std::invalid_argument if the points
    /// do not form a decreasing set.
    static DecreasingSet from_points(std::vector<LatticePoint> points);

    int size() const { return static_cast<int>(points_.size()); }
    bool empty() const { return points_.empty(); }
    const std::vector<LatticePoint>& points() const { return points_; }
    const LatticePoint& operator[](int i) const { return points_[static_cast<size_t>(i)]; }

    DecreasingSet translated(int dx, int dy) const;

    /// "x,y" pairs, one per line.
    std::string str() const;
    static DecreasingSet parse(const std::string& text);

    bool operator==(const DecreasingSet&) const = default;

private:
    std::vector<LatticePoint> points_;
};

/// The unique permutation with the same relative order as `word`
/// (all entries distinct). E.g. 91734 -> 51423.
Permutation standardize(std::span<const int> word);

/// Length of the longest strictly increasing subsequence, by patience
/// sorting in O(N log N).
int lis_length(const Permutation& sigma);
int lis_length(std::span<const int> word);

/// True iff some subsequence of sigma has the same relative order as tau.
/// Monotone increasing tau is answered via LIS; everything else falls back
/// to contains_by_search.
bool contains(const Permutation& sigma, const Permutation& tau);

/// Depth-first subsequence matching with remaining-length and value-window
/// pruning. Exponential in the worst case; fine for short patterns.
bool contains_by_search(const Permutation& sigma, const Permutation& tau);

/// True iff appending `v` to `prefix` creates an occurrence of tau whose last
/// element is the appended value. Incremental form of contains_by_search used
/// by the prefix enumeration engine: a tau-free prefix stays tau-free after
/// the append iff this returns false.
bool contains_ending_with(std::span<const int> prefix, int v, const Permutation& tau);

bool is_increasing(const Permutation& p);

/// M(sigma) = {(i, sigma_i) : sigma_i < sigma_t for every t < i}.
/// Always contains (1, sigma_1).
DecreasingSet left_to_right_minima(const Permutation& sigma);

/// The subsequence of sigma's values whose graph points are not in `points`,
/// in original order (not restandardized). Every point of `points` must lie
/// on the graph of sigma.
std::vector<int> remove_points(const Permutation& sigma, const DecreasingSet& points);

/// 1 (w_1+1) (w_2+1) ... (w_m+1): prepend a new minimum. E.g. 3124 -> 14235.
Permutation oslash(const Permutation& omega);

/// The increasing pattern 1 2 ... k.
Permutation mu(int k);

/// 1 2 ... l k (k-1) ... (l+1): the increasing pattern with its last k-l
/// entries reversed. Requires k >= 3 and 1 <= l <= k-2.
Permutation lambda_kl(int k, int l);

/// The unique permutation sigma in S_n whose graph contains `points` and
/// whose complement standardizes to `pat`. Building block shared by
/// reconstruct() and the lower-bound construction: positions (values) not
/// covered by `points` are filled via the unique strictly increasing maps
/// onto the complements. The word form accepts an empty pattern when the
/// points already cover the whole graph.
Permutation fill_complement(const DecreasingSet& points, std::span<const int> pat, int n);
Permutation fill_complement(const DecreasingSet& points, const Permutation& pat, int n);

/// Inverse of the (left_to_right_minima, standardize(remove_points))
/// decomposition: the unique sigma with left_to_right_minima(sigma) ==
/// minima and standardize(sigma \ minima) == pat. Throws if no such sigma
/// exists. The two-argument form handles the complement-free case where
/// minima is the entire graph.
Permutation reconstruct(const DecreasingSet& minima, const Permutation& pat, int n);
Permutation reconstruct(const DecreasingSet& minima, int n);

}  // namespace pav
