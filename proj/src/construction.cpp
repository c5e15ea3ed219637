#include "pav/construction.hpp"

#include <algorithm>
#include <stdexcept>

namespace pav {

bool dec_band_ok(int x, int y, int m1, int m2, long band_num, long band_den) {
    // y < m2 - x*m2/m1 + band_num/band_den, cross-multiplied by m1*band_den > 0
    const long lhs = static_cast<long>(y) * m1 * band_den;
    const long rhs = static_cast<long>(m1) * m2 * band_den - static_cast<long>(x) * m2 * band_den +
                     band_num * m1;
    return lhs < rhs;
}

bool seq_window_ok(int x, int l, int w, int m, int band) {
    // |x - l*m/(w+1)| < band, multiplied through by w+1
    const long diff = static_cast<long>(x) * (w + 1) - static_cast<long>(l) * m;
    const long lim = static_cast<long>(band) * (w + 1);
    return -lim < diff && diff < lim;
}

Count dec_count(int w, int m1, int m2) {
    if (w < 0 || m1 < 0 || m2 < 0) throw std::invalid_argument("dec_count: negative argument");
    if (w > std::min(m1, m2)) throw std::invalid_argument("dec_count: requires w <= min(m1,m2)");
    return binomial(static_cast<unsigned long>(m1), static_cast<unsigned long>(w)) *
           binomial(static_cast<unsigned long>(m2), static_cast<unsigned long>(w));
}

Count dec_banded_count(int w, int m1, int m2, int band) {
    if (band < 1) throw std::invalid_argument("dec_banded_count: requires band >= 1");
    if (w < 0 || w > std::min(m1, m2))
        throw std::invalid_argument("dec_banded_count: requires 0 <= w <= min(m1,m2)");
    if (w == 0) return 1;
    // ways[x][y] = number of decreasing l-subsets in band with last point (x,y).
    // suffix[x][y] = sum of ways[x'][y'] over x' <= x, y' >= y, so the
    // transition to a new last point (x,y) reads suffix[x-1][y+1].
    const size_t w1 = static_cast<size_t>(m1) + 2, w2 = static_cast<size_t>(m2) + 2;
    std::vector<std::vector<Count>> ways(w1, std::vector<Count>(w2));
    std::vector<std::vector<Count>> suffix(w1, std::vector<Count>(w2));
    Count total = 0;
    for (int l = 1; l <= w; ++l) {
        for (int x = 1; x <= m1; ++x)
            for (int y = 1; y <= m2; ++y) {
                Count& cell = ways[static_cast<size_t>(x)][static_cast<size_t>(y)];
                if (!dec_band_ok(x, y, m1, m2, band)) {
                    cell = 0;
                    continue;
                }
                if (l == 1)
                    cell = 1;
                else
                    cell = suffix[static_cast<size_t>(x) - 1][static_cast<size_t>(y) + 1];
            }
        for (int x = 1; x <= m1; ++x)
            for (int y = m2; y >= 1; --y)
                suffix[static_cast<size_t>(x)][static_cast<size_t>(y)] =
                    ways[static_cast<size_t>(x)][static_cast<size_t>(y)] +
                    suffix[static_cast<size_t>(x) - 1][static_cast<size_t>(y)] +
                    suffix[static_cast<size_t>(x)][static_cast<size_t>(y) + 1] -
                    suffix[static_cast<size_t>(x) - 1][static_cast<size_t>(y) + 1];
        if (l == w)
            for (int x = 1; x <= m1; ++x)
                for (int y = 1; y <= m2; ++y)
                    total += ways[static_cast<size_t>(x)][static_cast<size_t>(y)];
    }
    return total;
}

Count seq_banded_count(int w, int m, int band) {
    if (band < 1) throw std::invalid_argument("seq_banded_count: requires band >= 1");
    if (w < 1 || w > m) throw std::invalid_argument("seq_banded_count: requires 1 <= w <= m");
    // ways[x] = subsets of size l with largest element x, all in their windows
    std::vector<Count> ways(static_cast<size_t>(m) + 1);
    for (int x = 1; x <= m; ++x)
        ways[static_cast<size_t>(x)] = seq_window_ok(x, 1, w, m, band) ? 1 : 0;
    for (int l = 2; l <= w; ++l) {
        std::vector<Count> next(static_cast<size_t>(m) + 1);
        Count below = 0;  // sum of ways[x'] for x' < x
        for (int x = 1; x <= m; ++x) {
            if (seq_window_ok(x, l, w, m, band)) next[static_cast<size_t>(x)] = below;
            below += ways[static_cast<size_t>(x)];
        }
        ways = std::move(next);
    }
    Count total = 0;
    for (int x = 1; x <= m; ++x) total += ways[static_cast<size_t>(x)];
    return total;
}

DecreasingSet theta(std::span<const int> xs, std::span<const int> zs) {
    if (xs.size() != zs.size()) throw std::invalid_argument("theta: length mismatch");
    const size_t w = xs.size();
    for (size_t i = 1; i < w; ++i)
        if (xs[i - 1] >= xs[i] || zs[i - 1] >= zs[i])
            throw std::invalid_argument("theta: inputs must be strictly increasing");
    std::vector<LatticePoint> pts(w);
    for (size_t i = 0; i < w; ++i) pts[i] = {xs[i], zs[w - 1 - i]};
    return DecreasingSet(std::move(pts));
}

std::vector<std::vector<int>> enumerate_seq(int w, int m, std::optional<int> band) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next_min, int l) -> void {
        if (l > w) {
            out.push_back(cur);
            return;
        }
        for (int x = next_min; x <= m - (w - l); ++x) {
            if (band && !seq_window_ok(x, l, w, m, *band)) continue;
            cur.push_back(x);
            self(self, x + 1, l + 1);
            cur.pop_back();
        }
    };
    if (w == 0)
        out.push_back({});
    else
        rec(rec, 1, 1);
    return out;
}

std::vector<DecreasingSet> enumerate_dec(int w, int m1, int m2, std::optional<int> band) {
    std::vector<DecreasingSet> out;
    if (w == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<LatticePoint> cur;
    auto rec = [&](auto&& self, int min_x, int max_y, int l) -> void {
        if (l > w) {
            out.push_back(DecreasingSet(cur));
            return;
        }
        for (int x = min_x; x <= m1 - (w - l); ++x)
            for (int y = max_y; y >= w - l + 1; --y) {
                if (band && !dec_band_ok(x, y, m1, m2, *band)) continue;
                cur.push_back({x, y});
                self(self, x + 1, y - 1, l + 1);
                cur.pop_back();
            }
    };
    rec(rec, 1, m2, 1);
    return out;
}

void ConstructionInput::validate() const {
    if (n < 1 || col < 1 || val < 1 || band < 1)
        throw std::invalid_argument("ConstructionInput: n, col, val, band must be >= 1");
    if (!(val < n - col - 2 * band))
        throw std::invalid_argument("ConstructionInput: requires val < n - col - 2*band");
    const int w1 = b1.size(), w2 = b2.size();
    if (w1 > col - 1) throw std::invalid_argument("ConstructionInput: requires w1 <= col - 1");
    if (w2 > val - 1) throw std::invalid_argument("ConstructionInput: requires w2 <= val - 1");
    const int m1a = col - 1, m2a = n - 2 * band - val;
    for (const auto& p : b1.points()) {
        if (p.x > m1a || p.y > m2a)
            throw std::invalid_argument("ConstructionInput: b1 point outside its box");
        if (!dec_band_ok(p.x, p.y, m1a, m2a, band))
            throw std::invalid_argument("ConstructionInput: b1 point violates the band");
    }
    const int m1b = n - 2 * band - col, m2b = val - 1;
    for (const auto& p : b2.points()) {
        if (p.x > m1b || p.y > m2b)
            throw std::invalid_argument("ConstructionInput: b2 point outside its box");
        if (!dec_band_ok(p.x, p.y, m1b, m2b, band))
            throw std::invalid_argument("ConstructionInput: b2 point violates the band");
    }
    const int len = n - w1 - w2 - 1;
    if (phi.size() != len)
        throw std::invalid_argument("ConstructionInput: phi must have length n - w1 - w2 - 1");
    for (int i = 1; i <= len; ++i)
        if (!(phi(i) > len - i - band))
            throw std::invalid_argument("ConstructionInput: phi violates its band condition");
}

DecreasingSet ConstructionInput::psi() const {
    const DecreasingSet upper = b1.translated(0, val);
    const DecreasingSet lower = b2.translated(col, 0);
    std::vector<LatticePoint> pts;
    pts.reserve(static_cast<size_t>(b1.size() + b2.size()) + 1);
    for (const auto& p : upper.points()) pts.push_back(p);
    pts.push_back({col, val});
    for (const auto& p : lower.points()) pts.push_back(p);
    return DecreasingSet(std::move(pts));
}

Permutation build_sigma(const ConstructionInput& input) {
    input.validate();
    const DecreasingSet points = input.psi();
    Permutation sigma = fill_complement(points, input.phi, input.n);
    if (!verify_key_claim(sigma, points, input.band))
        throw std::logic_error("build_sigma: key claim violated; construction bug");
    return sigma;
}

bool verify_key_claim(const Permutation& sigma, const DecreasingSet& psi, int band) {
    const int n = sigma.size();
    std::vector<bool> covered(static_cast<size_t>(n) + 1, false);
    for (const auto& p : psi.points()) {
        if (p.x < 1 || p.x > n || sigma(p.x) != p.y)
            throw std::invalid_argument("verify_key_claim: psi is not on the graph of sigma");
        covered[static_cast<size_t>(p.x)] = true;
    }
    for (int j = 1; j <= n; ++j) {
        if (covered[static_cast<size_t>(j)]) {
            if (!(sigma(j) < n - j - band)) return false;
        } else {
            if (!(sigma(j) > n - j - band)) return false;
        }
    }
    return true;
}

BoundReport check_lower_bound(int n, int col, int val, int band, int w1, int w2, int k,
                              CountCache* cache) {
    if (k < 4) throw std::invalid_argument("check_lower_bound: k must be >= 4");
    if (n < 1 || col < 1 || val < 1 || band < 1)
        throw std::invalid_argument("check_lower_bound: n, col, val, band must be >= 1");
    if (!(val < n - col - 2 * band))
        throw std::invalid_argument("check_lower_bound: requires val < n - col - 2*band");
    if (w1 < 0 || w1 > col - 1 || w2 < 0 || w2 > val - 1)
        throw std::invalid_argument("check_lower_bound: w1, w2 out of range");
    BoundReport rep;
    rep.lhs = count_cell(CellQuery{mu(k), n, col, val, true}, cache);
    rep.rhs = dec_banded_count(w1, col - 1, n - 2 * band - val, band) *
              dec_banded_count(w2, n - 2 * band - col, val - 1, band) *
              count_avoiders(n - w1 - w2 - 1, mu(k - 1), band, cache);
    rep.holds = rep.lhs >= rep.rhs;
    return rep;
}

DecreasingSet default_banded_dec(int w, int m1, int m2, int band) {
    if (w == 0) return DecreasingSet();
    if (w > std::min(m1, m2)) throw std::runtime_error("default_banded_dec: w too large");
    std::vector<LatticePoint> pts;
    int last_y = m2 + 1;
    for (int l = 1; l <= w; ++l) {
        // spread x targets evenly, then take the highest in-band y available
        const int x = std::max(l, static_cast<int>((static_cast<long>(l) * (m1 + 1)) / (w + 1)));
        // largest y with y*m1 < m1*m2 - x*m2 + band*m1
        long ymax = (static_cast<long>(m1) * m2 - static_cast<long>(x) * m2 +
                     static_cast<long>(band) * m1 - 1) /
                    m1;
        ymax = std::min<long>({ymax, m2, last_y - 1});
        if (ymax < w - l + 1)
            throw std::runtime_error("default_banded_dec: no in-band decreasing set found");
        pts.push_back({x, static_cast<int>(ymax)});
        last_y = static_cast<int>(ymax);
    }
    return DecreasingSet(std::move(pts));
}

}  // namespace pav
