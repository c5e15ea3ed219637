#include "pav/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pav {

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
    const int n = size();
    if (n == 0) throw std::invalid_argument("permutation must have length >= 1");
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    for (int v : entries_) {
        if (v < 1 || v > n || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("entries are not a rearrangement of 1..N");
        seen[static_cast<size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> e(static_cast<size_t>(n));
    std::iota(e.begin(), e.end(), 1);
    return Permutation(std::move(e));
}

Permutation Permutation::decreasing(int n) {
    std::vector<int> e(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)] = n - i;
    return Permutation(std::move(e));
}

Permutation Permutation::parse(const std::string& text) {
    std::vector<int> vals;
    const bool has_sep = text.find_first_of(", \t\n") != std::string::npos;
    if (has_sep) {
        std::string t = text;
        std::replace(t.begin(), t.end(), ',', ' ');
        std::istringstream in(t);
        int v;
        while (in >> v) vals.push_back(v);
        if (!in.eof()) throw std::invalid_argument("cannot parse permutation: " + text);
    } else {
        for (char c : text) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("cannot parse permutation: " + text);
            vals.push_back(c - '0');
        }
    }
    return Permutation(std::move(vals));
}

std::string Permutation::str() const {
    std::string out;
    for (int i = 0; i < size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(entries_[static_cast<size_t>(i)]);
    }
    return out;
}

DecreasingSet::DecreasingSet(std::vector<LatticePoint> points) : points_(std::move(points)) {
    for (size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].x < 1 || points_[i].y < 1)
            throw std::invalid_argument("lattice points must have coordinates >= 1");
        if (i > 0 && !(points_[i - 1].x < points_[i].x && points_[i - 1].y > points_[i].y))
            throw std::invalid_argument("points do not form a decreasing set");
    }
}

DecreasingSet DecreasingSet::from_points(std::vector<LatticePoint> points) {
    std::sort(points.begin(), points.end(),
              [](const LatticePoint& a, const LatticePoint& b) { return a.x < b.x; });
    return DecreasingSet(std::move(points));
}

DecreasingSet DecreasingSet::translated(int dx, int dy) const {
    std::vector<LatticePoint> pts = points_;
    for (auto& p : pts) {
        p.x += dx;
        p.y += dy;
    }
    return DecreasingSet(std::move(pts));
}

std::string DecreasingSet::str() const {
    std::string out;
    for (const auto& p : points_) {
        out += std::to_string(p.x);
        out += ',';
        out += std::to_string(p.y);
        out += '\n';
    }
    return out;
}

DecreasingSet DecreasingSet::parse(const std::string& text) {
    std::vector<LatticePoint> pts;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        LatticePoint p;
        if (!(ls >> p.x >> p.y)) throw std::invalid_argument("cannot parse point line: " + line);
        pts.push_back(p);
    }
    return DecreasingSet(std::move(pts));
}

Permutation standardize(std::span<const int> word) {
    const size_t n = word.size();
    if (n == 0) throw std::invalid_argument("cannot standardize an empty word");
    std::vector<int> sorted(word.begin(), word.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("word entries must be distinct");
    std::vector<int> out(n);
    for (size_t i = 0; i < n; ++i) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), word[i]);
        out[i] = static_cast<int>(it - sorted.begin()) + 1;
    }
    return Permutation(std::move(out));
}

int lis_length(std::span<const int> word) {
    std::vector<int> tails;  // smallest tail of an increasing run of each length
    for (int v : word) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end())
            tails.push_back(v);
        else
            *it = v;
    }
    return static_cast<int>(tails.size());
}

int lis_length(const Permutation& sigma) { return lis_length(std::span<const int>(sigma.entries())); }

bool is_increasing(const Permutation& p) {
    return std::is_sorted(p.entries().begin(), p.entries().end());
}

namespace {

// DFS over pattern positions in order, mapping them to increasing sigma
// positions. matched[j] holds the sigma value assigned to pattern position j
// (0 = unassigned, pre-assigned entries are skipped); admissible values for
// position j are bounded by the values already assigned to pattern positions
// with adjacent pattern values.
bool match_from(std::span<const int> sigma, const std::vector<int>& tau, std::vector<int>& matched,
                int j, int min_pos, int max_pos, int free_count) {
    const int k = static_cast<int>(tau.size());
    if (j == k) return true;
    if (matched[static_cast<size_t>(j)] != 0)
        return match_from(sigma, tau, matched, j + 1, min_pos, max_pos, free_count);
    int lo = 0, hi = std::numeric_limits<int>::max();
    for (int i = 0; i < k; ++i) {
        if (matched[static_cast<size_t>(i)] == 0) continue;
        if (tau[static_cast<size_t>(i)] < tau[static_cast<size_t>(j)])
            lo = std::max(lo, matched[static_cast<size_t>(i)]);
        else
            hi = std::min(hi, matched[static_cast<size_t>(i)]);
    }
    // leave room for the remaining unassigned pattern positions
    for (int pos = min_pos; pos <= max_pos - (free_count - 1); ++pos) {
        const int v = sigma[static_cast<size_t>(pos) - 1];
        if (v <= lo || v >= hi) continue;
        matched[static_cast<size_t>(j)] = v;
        if (match_from(sigma, tau, matched, j + 1, pos + 1, max_pos, free_count - 1)) return true;
        matched[static_cast<size_t>(j)] = 0;
    }
    return false;
}

}  // namespace

bool contains_by_search(const Permutation& sigma, const Permutation& tau) {
    const int n = sigma.size(), k = tau.size();
    if (k < 1) throw std::invalid_argument("pattern must have length >= 1");
    if (k > n) return false;
    std::vector<int> matched(static_cast<size_t>(k), 0);
    return match_from(std::span<const int>(sigma.entries()), tau.entries(), matched, 0, 1, n, k);
}

bool contains_ending_with(std::span<const int> prefix, int v, const Permutation& tau) {
    const int k = tau.size();
    const int p = static_cast<int>(prefix.size());
    if (k > p + 1) return false;
    if (k == 1) return true;
    // The appended value occupies the last pattern position; the remaining
    // k-1 positions must embed into the prefix.
    std::vector<int> matched(static_cast<size_t>(k), 0);
    matched[static_cast<size_t>(k) - 1] = v;
    return match_from(prefix, tau.entries(), matched, 0, 1, p, k - 1);
}

bool contains(const Permutation& sigma, const Permutation& tau) {
    if (tau.size() < 1) throw std::invalid_argument("pattern must have length >= 1");
    if (is_increasing(tau)) return lis_length(sigma) >= tau.size();
    return contains_by_search(sigma, tau);
}

DecreasingSet left_to_right_minima(const Permutation& sigma) {
    std::vector<LatticePoint> pts;
    int best = sigma.size() + 1;
    for (int i = 1; i <= sigma.size(); ++i) {
        if (sigma(i) < best) {
            best = sigma(i);
            pts.push_back({i, best});
        }
    }
    return DecreasingSet(std::move(pts));
}

std::vector<int> remove_points(const Permutation& sigma, const DecreasingSet& points) {
    std::vector<bool> drop(static_cast<size_t>(sigma.size()) + 1, false);
    for (const auto& p : points.points()) {
        if (p.x < 1 || p.x > sigma.size() || sigma(p.x) != p.y)
            throw std::invalid_argument("point is not on the graph of sigma");
        drop[static_cast<size_t>(p.x)] = true;
    }
    std::vector<int> out;
    out.reserve(static_cast<size_t>(sigma.size() - points.size()));
    for (int i = 1; i <= sigma.size(); ++i)
        if (!drop[static_cast<size_t>(i)]) out.push_back(sigma(i));
    return out;
}

Permutation oslash(const Permutation& omega) {
    std::vector<int> e;
    e.reserve(static_cast<size_t>(omega.size()) + 1);
    e.push_back(1);
    for (int v : omega.entries()) e.push_back(v + 1);
    return Permutation(std::move(e));
}

Permutation mu(int k) {
    if (k < 1) throw std::invalid_argument("mu(k) requires k >= 1");
    return Permutation::identity(k);
}

Permutation lambda_kl(int k, int l) {
    if (k < 3 || l < 1 || l > k - 2)
        throw std::invalid_argument("lambda_kl requires k >= 3 and 1 <= l <= k-2");
    std::vector<int> e;
    e.reserve(static_cast<size_t>(k));
    for (int i = 1; i <= l; ++i) e.push_back(i);
    for (int v = k; v > l; --v) e.push_back(v);
    return Permutation(std::move(e));
}

Permutation fill_complement(const DecreasingSet& points, std::span<const int> pat, int n) {
    const int w = points.size();
    if (n < 1 || w > n) throw std::invalid_argument("fill_complement: bad sizes");
    if (static_cast<int>(pat.size()) != n - w)
        throw std::invalid_argument("fill_complement: pattern length must be n minus point count");
    std::vector<bool> x_used(static_cast<size_t>(n) + 1, false);
    std::vector<bool> y_used(static_cast<size_t>(n) + 1, false);
    std::vector<int> sigma(static_cast<size_t>(n) + 1, 0);
    for (const auto& p : points.points()) {
        if (p.x > n || p.y > n) throw std::invalid_argument("fill_complement: point outside [1,n]^2");
        x_used[static_cast<size_t>(p.x)] = true;
        y_used[static_cast<size_t>(p.y)] = true;
        sigma[static_cast<size_t>(p.x)] = p.y;
    }
    std::vector<int> free_pos, free_val;  // the strictly increasing maps onto the complements
    free_pos.reserve(static_cast<size_t>(n - w));
    free_val.reserve(static_cast<size_t>(n - w));
    for (int i = 1; i <= n; ++i) {
        if (!x_used[static_cast<size_t>(i)]) free_pos.push_back(i);
        if (!y_used[static_cast<size_t>(i)]) free_val.push_back(i);
    }
    for (int i = 0; i < n - w; ++i) {
        const int rank = pat[static_cast<size_t>(i)];
        if (rank < 1 || rank > n - w)
            throw std::invalid_argument("fill_complement: pattern is not standardized");
        sigma[static_cast<size_t>(free_pos[static_cast<size_t>(i)])] =
            free_val[static_cast<size_t>(rank) - 1];
    }
    return Permutation(std::vector<int>(sigma.begin() + 1, sigma.end()));
}

Permutation fill_complement(const DecreasingSet& points, const Permutation& pat, int n) {
    return fill_complement(points, std::span<const int>(pat.entries()), n);
}

namespace {

Permutation reconstruct_checked(const DecreasingSet& minima, std::span<const int> pat, int n) {
    Permutation sigma = fill_complement(minima, pat, n);
    if (!(left_to_right_minima(sigma) == minima))
        throw std::runtime_error(
            "reconstruct: inputs are not realizable as a minima decomposition");
    return sigma;
}

}  // namespace

Permutation reconstruct(const DecreasingSet& minima, const Permutation& pat, int n) {
    return reconstruct_checked(minima, std::span<const int>(pat.entries()), n);
}

Permutation reconstruct(const DecreasingSet& minima, int n) {
    return reconstruct_checked(minima, {}, n);
}

}  // namespace pav
