#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pav/count_cache.hpp"
#include "pav/permutation.hpp"

namespace pav {

/// One exact counting question: permutations of length n avoiding tau,
/// optionally with sigma_col = val, optionally requiring (col, val) to be a
/// left-to-right minimum (star), optionally restricted to the band
/// sigma_i > n - i - band for every i.
struct CellQuery {
    Permutation tau;
    int n = 0;
    int col = 0;   // 0 = no cell constraint
    int val = 0;
    bool star = false;
    int band = 0;  // 0 = no band

    void validate() const;
    /// Canonical key, total and injective over queries.
    std::string cache_key() const;
};

/// Backtracking search over prefixes of tau-avoiding permutations. A prefix
/// that already contains tau is never extended; for monotone tau the pile
/// tops of patience sorting are carried incrementally, for general tau each
/// extension is tested against occurrences ending at the new value.
///
/// The searcher doubles as a cursor for samplers: try_push/pop move through
/// prefix space, count_completions and enumerate work from the current
/// prefix.
class AvoiderSearch {
public:
    explicit AvoiderSearch(CellQuery query);

    const CellQuery& query() const { return query_; }
    int depth() const { return static_cast<int>(prefix_.size()); }
    const std::vector<int>& prefix() const { return prefix_; }

    /// Appends v if it is admissible and the prefix stays tau-avoiding.
    bool try_push(int v);
    void pop();

    /// Exact number of tau-avoiders extending the current prefix.
    Count count_completions();
    /// Visits every avoider extending the current prefix, in lexicographic
    /// order of the one-line notation.
    void enumerate(const std::function<void(const Permutation&)>& visit);

    /// Node budget for completion counting; 0 disables the limit. Exceeding
    /// it throws std::runtime_error.
    void set_node_budget(uint64_t budget) { node_budget_ = budget; }
    uint64_t nodes_visited() const { return nodes_; }

private:
    bool admissible(int pos, int v) const;
    bool push_unchecked(int v);
    void count_rec(Count& acc);
    void enumerate_rec(const std::function<void(const Permutation&)>& visit);

    CellQuery query_;
    bool tau_monotone_ = false;
    std::vector<int> prefix_;
    std::vector<bool> used_;
    std::vector<int> piles_;  // patience pile tops (monotone tau only)
    struct Undo {
        int index;
        int old_value;  // 0 when the push appended a new pile
    };
    std::vector<Undo> undo_;
    uint64_t nodes_ = 0;
    uint64_t node_budget_ = 0;
};

/// Visits each element of S_n(tau) exactly once.
void enumerate_avoiders(int n, const Permutation& tau,
                        const std::function<void(const Permutation&)>& visit);

/// All members of the set described by `q`, in lexicographic order.
std::vector<Permutation> collect(const CellQuery& q);

/// |S_n(tau)| (band = 0) or |S*A_n(tau)| (band = A > 0), exact.
Count count_avoiders(int n, const Permutation& tau, int band = 0, CountCache* cache = nullptr,
                     int jobs = 1);

/// Exact cardinality of the set described by `q`. With jobs > 1 the search
/// splits by the first two prefix values; partial counts merge by addition.
Count count_cell(const CellQuery& q, CountCache* cache = nullptr, int jobs = 1);

/// table[i-1][j-1] = |{sigma in S_n(tau) : sigma_i = j (and star cond.)}|,
/// filled in a single enumeration pass.
std::vector<std::vector<Count>> cell_table(int n, const Permutation& tau, bool star);

Count binomial(unsigned long n, unsigned long k);
Count factorial(unsigned long n);

/// The n-th Catalan number binom(2n,n)/(n+1).
Count catalan(int n);

/// Gessel's closed form for |S_n(1234)|, evaluated with exact rational
/// intermediate arithmetic. Throws std::logic_error if the sum is not an
/// integer (which would mean the formula was transcribed wrong).
Count gessel_1234(int n);

struct BoundReport {
    Count lhs;
    Count rhs;
    bool holds = false;
};

/// Upper bound on |F*_n(col,val;mu_k)| by the double binomial sum over
/// avoider counts of mu_{k-1}. Requires val < n - col and k >= 4.
/// holds = (lhs <= rhs); this is a theorem, so it must hold.
BoundReport check_fhh_bound(int n, int col, int val, int k, CountCache* cache = nullptr);

/// True iff |S_n(mu_k)| <= ((k-1)^2)^n.
bool stanley_wilf_bound_check(int n, int k, CountCache* cache = nullptr);

}  // namespace pav
