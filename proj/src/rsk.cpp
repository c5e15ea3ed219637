#include "pav/rsk.hpp"

#include <algorithm>
#include <stdexcept>

#include "pav/enumeration.hpp"

namespace pav {

bool is_valid_shape(const Shape& shape) {
    for (size_t i = 0; i < shape.size(); ++i) {
        if (shape[i] < 1) return false;
        if (i > 0 && shape[i] > shape[i - 1]) return false;
    }
    return true;
}

bool is_standard_tableau(const Tableau& tab) {
    int n = 0;
    for (const auto& row : tab) n += static_cast<int>(row.size());
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    for (size_t r = 0; r < tab.size(); ++r) {
        if (r > 0 && tab[r].size() > tab[r - 1].size()) return false;
        for (size_t c = 0; c < tab[r].size(); ++c) {
            const int v = tab[r][c];
            if (v < 1 || v > n || seen[static_cast<size_t>(v)]) return false;
            seen[static_cast<size_t>(v)] = true;
            if (c > 0 && tab[r][c - 1] >= v) return false;
            if (r > 0 && tab[r - 1][c] >= v) return false;
        }
    }
    return true;
}

std::vector<Shape> shapes_bounded_width(int n, int max_part) {
    std::vector<Shape> out;
    Shape cur;
    auto rec = [&](auto&& self, int remaining, int max_next) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(remaining, max_next); part >= 1; --part) {
            cur.push_back(part);
            self(self, remaining - part, part);
            cur.pop_back();
        }
    };
    if (n == 0)
        out.push_back({});
    else
        rec(rec, n, std::min(n, max_part));
    return out;
}

Count syt_count(const Shape& shape) {
    if (!is_valid_shape(shape)) throw std::invalid_argument("syt_count: invalid shape");
    int n = 0;
    for (int part : shape) n += part;
    if (n == 0) return 1;
    const int width = shape.empty() ? 0 : shape[0];
    std::vector<int> col_len(static_cast<size_t>(width), 0);
    for (int part : shape)
        for (int j = 0; j < part; ++j) ++col_len[static_cast<size_t>(j)];
    Count hooks = 1;
    for (size_t i = 0; i < shape.size(); ++i)
        for (int j = 0; j < shape[i]; ++j) {
            const int hook = (shape[i] - 1 - j) + (col_len[static_cast<size_t>(j)] - 1 -
                                                   static_cast<int>(i)) + 1;
            hooks *= hook;
        }
    Count f;
    mpz_divexact(f.get_mpz_t(), factorial(static_cast<unsigned long>(n)).get_mpz_t(),
                 hooks.get_mpz_t());
    return f;
}

const Count& SytCounter::operator()(const Shape& shape) {
    auto it = memo_.find(shape);
    if (it != memo_.end()) return it->second;
    return memo_.emplace(shape, syt_count(shape)).first->second;
}

std::pair<Tableau, Tableau> rsk(const Permutation& sigma) {
    Tableau p, q;
    for (int i = 1; i <= sigma.size(); ++i) {
        int v = sigma(i);
        size_t row = 0;
        for (;; ++row) {
            if (row == p.size()) {
                p.push_back({v});
                q.push_back({i});
                break;
            }
            auto it = std::upper_bound(p[row].begin(), p[row].end(), v);
            if (it == p[row].end()) {
                p[row].push_back(v);
                q[row].push_back(i);
                break;
            }
            std::swap(*it, v);  // bump
        }
    }
    return {p, q};
}

Permutation inverse_rsk(const Tableau& p, const Tableau& q) {
    Tableau work = p;
    int n = 0;
    for (const auto& row : work) n += static_cast<int>(row.size());
    // cell of q holding each entry; entry t was the t-th insertion endpoint
    std::vector<size_t> end_row(static_cast<size_t>(n) + 1);
    for (size_t r = 0; r < q.size(); ++r)
        for (size_t c = 0; c < q[r].size(); ++c) {
            const int v = q[r][c];
            if (v < 1 || v > n) throw std::invalid_argument("inverse_rsk: bad recording tableau");
            end_row[static_cast<size_t>(v)] = r;
        }
    std::vector<int> sigma(static_cast<size_t>(n) + 1, 0);
    for (int t = n; t >= 1; --t) {
        size_t row = end_row[static_cast<size_t>(t)];
        if (row >= work.size() || work[row].empty())
            throw std::invalid_argument("inverse_rsk: tableaux shapes disagree");
        int v = work[row].back();
        work[row].pop_back();
        for (size_t r = row; r-- > 0;) {
            // rightmost entry smaller than v gets bumped back out
            auto it = std::lower_bound(work[r].begin(), work[r].end(), v);
            if (it == work[r].begin())
                throw std::invalid_argument("inverse_rsk: reverse bump failed");
            --it;
            std::swap(*it, v);
        }
        sigma[static_cast<size_t>(t)] = v;
    }
    return Permutation(std::vector<int>(sigma.begin() + 1, sigma.end()));
}

Tableau sample_syt(const Shape& shape, Rng& rng, SytCounter& counter) {
    if (!is_valid_shape(shape)) throw std::invalid_argument("sample_syt: invalid shape");
    int n = 0;
    for (int part : shape) n += part;
    Tableau tab(shape.size());
    for (size_t r = 0; r < shape.size(); ++r) tab[r].assign(static_cast<size_t>(shape[r]), 0);
    Shape cur = shape;
    for (int entry = n; entry >= 1; --entry) {
        const Count& total = counter(cur);
        mpz_class draw = rng.below(total);
        bool placed = false;
        for (size_t r = 0; r < cur.size(); ++r) {
            if (r + 1 < cur.size() && cur[r] == cur[r + 1]) continue;  // not a corner
            Shape smaller = cur;
            if (--smaller[r] == 0) smaller.erase(smaller.begin() + static_cast<long>(r));
            const Count& weight = counter(smaller);
            if (draw < weight) {
                tab[r][static_cast<size_t>(cur[r]) - 1] = entry;
                cur = std::move(smaller);
                placed = true;
                break;
            }
            draw -= weight;
        }
        if (!placed) throw std::logic_error("sample_syt: corner weights did not sum to total");
    }
    return tab;
}

}  // namespace pav
