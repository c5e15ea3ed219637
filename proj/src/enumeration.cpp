#include "pav/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace pav {

void CellQuery::validate() const {
    if (n < 1) throw std::invalid_argument("CellQuery: n must be >= 1");
    if (tau.size() < 1) throw std::invalid_argument("CellQuery: pattern must be nonempty");
    if (col < 0 || col > n) throw std::invalid_argument("CellQuery: col out of range");
    if (col > 0) {
        if (val < 1 || val > n) throw std::invalid_argument("CellQuery: val out of range");
    } else {
        if (val != 0) throw std::invalid_argument("CellQuery: val without col");
        if (star) throw std::invalid_argument("CellQuery: star requires a cell constraint");
    }
    if (band < 0) throw std::invalid_argument("CellQuery: band must be >= 0");
}

std::string CellQuery::cache_key() const {
    std::ostringstream out;
    out << "tau=";
    for (int i = 1; i <= tau.size(); ++i) {
        if (i > 1) out << ',';
        out << tau(i);
    }
    out << ";n=" << n << ";col=" << col << ";val=" << val << ";star=" << (star ? 1 : 0)
        << ";band=" << band;
    return out.str();
}

AvoiderSearch::AvoiderSearch(CellQuery query) : query_(std::move(query)) {
    query_.validate();
    tau_monotone_ = is_increasing(query_.tau);
    const size_t n = static_cast<size_t>(query_.n);
    prefix_.reserve(n);
    used_.assign(n + 1, false);
    piles_.reserve(n);
    undo_.reserve(n);
}

bool AvoiderSearch::admissible(int pos, int v) const {
    if (used_[static_cast<size_t>(v)]) return false;
    if (query_.band > 0 && v <= query_.n - pos - query_.band) return false;
    if (query_.col > 0) {
        if (pos == query_.col) {
            if (v != query_.val) return false;
        } else {
            if (v == query_.val) return false;
            if (query_.star && pos < query_.col && v < query_.val) return false;
        }
    }
    return true;
}

bool AvoiderSearch::try_push(int v) {
    const int pos = depth() + 1;
    if (pos > query_.n || v < 1 || v > query_.n) return false;
    if (!admissible(pos, v)) return false;

    if (tau_monotone_) {
        const int k = query_.tau.size();
        auto it = std::lower_bound(piles_.begin(), piles_.end(), v);
        if (it == piles_.end()) {
            if (static_cast<int>(piles_.size()) + 1 >= k) return false;  // would contain tau
            piles_.push_back(v);
            undo_.push_back({static_cast<int>(piles_.size()) - 1, 0});
        } else {
            undo_.push_back({static_cast<int>(it - piles_.begin()), *it});
            *it = v;
        }
    } else {
        if (contains_ending_with(std::span<const int>(prefix_), v, query_.tau)) return false;
        undo_.push_back({-1, 0});
    }

    prefix_.push_back(v);
    used_[static_cast<size_t>(v)] = true;
    ++nodes_;
    if (node_budget_ != 0 && nodes_ > node_budget_) {
        pop();
        throw std::runtime_error("enumeration node budget exceeded");
    }
    return true;
}

void AvoiderSearch::pop() {
    const int v = prefix_.back();
    prefix_.pop_back();
    used_[static_cast<size_t>(v)] = false;
    const Undo u = undo_.back();
    undo_.pop_back();
    if (u.index >= 0) {
        if (u.old_value == 0)
            piles_.pop_back();
        else
            piles_[static_cast<size_t>(u.index)] = u.old_value;
    }
}

void AvoiderSearch::count_rec(Count& acc) {
    if (depth() == query_.n) {
        acc += 1;
        return;
    }
    for (int v = 1; v <= query_.n; ++v) {
        if (try_push(v)) {
            count_rec(acc);
            pop();
        }
    }
}

Count AvoiderSearch::count_completions() {
    Count acc = 0;
    count_rec(acc);
    return acc;
}

void AvoiderSearch::enumerate_rec(const std::function<void(const Permutation&)>& visit) {
    if (depth() == query_.n) {
        visit(Permutation(prefix_));
        return;
    }
    for (int v = 1; v <= query_.n; ++v) {
        if (try_push(v)) {
            enumerate_rec(visit);
            pop();
        }
    }
}

void AvoiderSearch::enumerate(const std::function<void(const Permutation&)>& visit) {
    enumerate_rec(visit);
}

void enumerate_avoiders(int n, const Permutation& tau,
                        const std::function<void(const Permutation&)>& visit) {
    AvoiderSearch search(CellQuery{tau, n});
    search.enumerate(visit);
}

std::vector<Permutation> collect(const CellQuery& q) {
    std::vector<Permutation> out;
    AvoiderSearch search(q);
    search.enumerate([&](const Permutation& p) { out.push_back(p); });
    return out;
}

namespace {

Count count_cell_parallel(const CellQuery& q, int jobs) {
    // Split the search by the first two prefix values; each worker owns its
    // search state and the partial counts merge by addition.
    std::vector<std::pair<int, int>> tasks;
    {
        AvoiderSearch probe(q);
        for (int v1 = 1; v1 <= q.n; ++v1) {
            if (!probe.try_push(v1)) continue;
            for (int v2 = 1; v2 <= q.n; ++v2) {
                if (!probe.try_push(v2)) continue;
                tasks.emplace_back(v1, v2);
                probe.pop();
            }
            probe.pop();
        }
    }
    std::atomic<size_t> next{0};
    std::mutex merge_mutex;
    Count total = 0;
    auto worker = [&]() {
        Count local = 0;
        for (;;) {
            const size_t t = next.fetch_add(1);
            if (t >= tasks.size()) break;
            AvoiderSearch search(q);
            if (!search.try_push(tasks[t].first) || !search.try_push(tasks[t].second))
                throw std::logic_error("parallel task prefix became invalid");
            local += search.count_completions();
        }
        std::lock_guard lock(merge_mutex);
        total += local;
    };
    std::vector<std::thread> pool;
    const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    pool.reserve(static_cast<size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return total;
}

}  // namespace

Count count_cell(const CellQuery& q, CountCache* cache, int jobs) {
    q.validate();
    const std::string key = q.cache_key();
    if (cache) {
        if (auto hit = cache->lookup(key)) return *hit;
    }
    Count result;
    if (jobs > 1 && q.n >= 3)
        result = count_cell_parallel(q, jobs);
    else
        result = AvoiderSearch(q).count_completions();
    if (cache) cache->store(key, result);
    return result;
}

Count count_avoiders(int n, const Permutation& tau, int band, CountCache* cache, int jobs) {
    return count_cell(CellQuery{tau, n, 0, 0, false, band}, cache, jobs);
}

std::vector<std::vector<Count>> cell_table(int n, const Permutation& tau, bool star) {
    std::vector<std::vector<Count>> table(static_cast<size_t>(n),
                                          std::vector<Count>(static_cast<size_t>(n)));
    enumerate_avoiders(n, tau, [&](const Permutation& sigma) {
        int min_before = n + 1;
        for (int i = 1; i <= n; ++i) {
            const int j = sigma(i);
            if (!star || j < min_before) table[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] += 1;
            min_before = std::min(min_before, j);
        }
    });
    return table;
}

Count binomial(unsigned long n, unsigned long k) {
    Count r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Count factorial(unsigned long n) {
    Count r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Count catalan(int n) {
    if (n < 0) throw std::invalid_argument("catalan: n must be >= 0");
    Count c = binomial(2ul * static_cast<unsigned long>(n), static_cast<unsigned long>(n));
    Count q;
    mpz_divexact_ui(q.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(n) + 1);
    return q;
}

Count gessel_1234(int n) {
    if (n < 1) throw std::invalid_argument("gessel_1234: n must be >= 1");
    mpq_class sum = 0;
    for (int k = 0; k <= n; ++k) {
        const long num = 3l * k * k + 2l * k + 1l - n - 2l * k * n;
        Count top = binomial(2ul * static_cast<unsigned long>(k), static_cast<unsigned long>(k));
        Count nk = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        top *= nk * nk;
        top *= num;
        Count bottom = Count(k + 1) * Count(k + 1) * Count(k + 2) * Count(n - k + 1);
        mpq_class term(top, bottom);
        term.canonicalize();
        sum += term;
    }
    sum *= 2;
    sum.canonicalize();
    if (sum.get_den() != 1)
        throw std::logic_error("gessel_1234: sum is not an integer; formula transcription bug");
    if (sum < 0) throw std::logic_error("gessel_1234: negative count");
    return sum.get_num();
}

BoundReport check_fhh_bound(int n, int col, int val, int k, CountCache* cache) {
    if (k < 4) throw std::invalid_argument("check_fhh_bound: k must be >= 4");
    if (col < 1 || val < 1 || val >= n - col)
        throw std::invalid_argument("check_fhh_bound: requires 1 <= col, 1 <= val < n - col");
    const Permutation tau_hat = mu(k - 1);
    BoundReport rep;
    rep.lhs = count_cell(CellQuery{mu(k), n, col, val, true}, cache);
    rep.rhs = 0;
    for (int l = 0; l <= col - 1; ++l) {
        for (int m = 0; m <= val - 1; ++m) {
            Count term = binomial(static_cast<unsigned long>(col - 1), static_cast<unsigned long>(l));
            term *= binomial(static_cast<unsigned long>(n - val), static_cast<unsigned long>(l));
            term *= binomial(static_cast<unsigned long>(n - col), static_cast<unsigned long>(m));
            term *= binomial(static_cast<unsigned long>(val - 1), static_cast<unsigned long>(m));
            term *= count_avoiders(n - l - m - 1, tau_hat, 0, cache);
            rep.rhs += term;
        }
    }
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

bool stanley_wilf_bound_check(int n, int k, CountCache* cache) {
    if (k < 3) throw std::invalid_argument("stanley_wilf_bound_check: k must be >= 3");
    if (n < 1) throw std::invalid_argument("stanley_wilf_bound_check: n must be >= 1");
    Count bound;
    const unsigned long base = static_cast<unsigned long>(k - 1);
    mpz_ui_pow_ui(bound.get_mpz_t(), base * base, static_cast<unsigned long>(n));
    return count_avoiders(n, mu(k), 0, cache) <= bound;
}

}  // namespace pav
