#include "pav/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "pav/construction.hpp"
#include "pav/enumeration.hpp"
#include "pav/experiments.hpp"
#include "pav/permutation.hpp"
#include "pav/ratefn.hpp"
#include "pav/rng.hpp"
#include "pav/sampling.hpp"

namespace pav::verify {

namespace {

struct Context {
    Options opt;
    CountCache* cache = nullptr;
    std::ostringstream detail;
};

using CheckFn = std::function<bool(Context&)>;

struct Check {
    std::string name;
    CheckFn fn;
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// Upper-tail chi-square p-value.
double chi_square_pvalue(double stat, int dof) {
    return boost::math::gamma_q(dof / 2.0, stat / 2.0);
}

const std::vector<Permutation>& all_s3() {
    static const std::vector<Permutation> patterns = {
        Permutation::parse("123"), Permutation::parse("132"), Permutation::parse("213"),
        Permutation::parse("231"), Permutation::parse("312"), Permutation::parse("321")};
    return patterns;
}

// 1. |S_N(tau)| equals the Catalan number for every length-3 pattern.
bool check_catalan(Context& ctx) {
    const int n_max = ctx.opt.quick ? 9 : 10;
    bool ok = true;
    for (const auto& tau : all_s3())
        for (int n = 1; n <= n_max; ++n)
            ok = ok && count_avoiders(n, tau, 0, ctx.cache, ctx.opt.jobs) == catalan(n);
    ctx.detail << fmt("all 6 patterns of length 3, N <= %d, exact equality", n_max);
    return ok;
}

// 2. Gessel's closed form equals the enumerated |S_N(1234)|.
bool check_gessel(Context& ctx) {
    const int n_max = ctx.opt.quick ? 9 : 10;
    static const long known[] = {1, 2, 6, 23, 103, 513, 2761, 15767, 94359, 586590};
    bool ok = true;
    for (int n = 1; n <= n_max; ++n) {
        const Count g = gessel_1234(n);
        ok = ok && g == known[n - 1];
        ok = ok && g == count_avoiders(n, mu(4), 0, ctx.cache, ctx.opt.jobs);
    }
    ctx.detail << fmt("closed form = enumeration = known values, N <= %d", n_max);
    return ok;
}

// 3. Wilf equivalence of 1234, 1243, 1432.
bool check_wilf(Context& ctx) {
    bool ok = true;
    for (int n = 1; n <= 8; ++n) {
        const Count a = count_avoiders(n, mu(4), 0, ctx.cache, ctx.opt.jobs);
        ok = ok && a == count_avoiders(n, lambda_kl(4, 2), 0, ctx.cache, ctx.opt.jobs);
        ok = ok && a == count_avoiders(n, lambda_kl(4, 1), 0, ctx.cache, ctx.opt.jobs);
    }
    ctx.detail << "1234 ~ 1243 ~ 1432 for N <= 8, exact";
    return ok;
}

// 4. Starred cell counts agree between mu_4 and both lambda_{4,l}.
bool check_fstar_equality(Context& ctx) {
    bool ok = true;
    for (int n = 1; n <= 7; ++n) {
        const auto base = cell_table(n, mu(4), true);
        for (int l : {1, 2}) {
            const auto other = cell_table(n, lambda_kl(4, l), true);
            ok = ok && base == other;
        }
        // tie the tables back to count_cell on a few cells
        for (int col : {1, (n + 1) / 2, n})
            for (int val : {1, (n + 1) / 2, n})
                ok = ok && base[static_cast<size_t>(col) - 1][static_cast<size_t>(val) - 1] ==
                               count_cell(CellQuery{mu(4), n, col, val, true}, ctx.cache);
    }
    // element-wise set comparison, reported but not asserted
    int diff_cells = 0, total_cells = 0;
    for (int n = 4; n <= 6; ++n)
        for (int col = 1; col <= n; ++col)
            for (int val = 1; val <= n; ++val) {
                ++total_cells;
                const auto a = collect(CellQuery{mu(4), n, col, val, true});
                const auto b = collect(CellQuery{lambda_kl(4, 2), n, col, val, true});
                if (a != b) ++diff_cells;
            }
    ctx.detail << fmt(
        "cardinalities equal for all (I,J), N <= 7; element-wise sets differ at %d/%d small cells "
        "(equal counts come from a minima-preserving bijection, not set identity)",
        diff_cells, total_cells);
    return ok;
}

// 5. Double-binomial upper bound on |F*|.
bool check_upper_bound(Context& ctx) {
    const int n_max = ctx.opt.quick ? 7 : 8;
    bool ok = true;
    int cases = 0;
    for (int n = 3; n <= n_max; ++n)
        for (int col = 1; col <= n; ++col)
            for (int val = 1; val < n - col; ++val) {
                ok = ok && check_fhh_bound(n, col, val, 4, ctx.cache).holds;
                ++cases;
            }
    ctx.detail << fmt("%d cells with J < N - I, N <= %d, k = 4; exact lhs <= rhs", cases, n_max);
    return ok;
}

// 6. Product lower bound on |F*|.
bool check_lower_bound_all(Context& ctx) {
    const int n_max = ctx.opt.quick ? 7 : 8;
    bool ok = true;
    int cases = 0;
    for (int n = 4; n <= n_max; ++n)
        for (int band = 1; 2 * band + 2 < n; ++band)
            for (int col = 1; col <= n; ++col)
                for (int val = 1; val < n - col - 2 * band; ++val)
                    for (int w1 = 0; w1 <= col - 1; ++w1)
                        for (int w2 = 0; w2 <= val - 1; ++w2) {
                            ok = ok &&
                                 check_lower_bound(n, col, val, band, w1, w2, 4, ctx.cache).holds;
                            ++cases;
                        }
    ctx.detail << fmt("%d parameter tuples, N <= %d, k = 4; exact lhs >= rhs", cases, n_max);
    return ok;
}

// 7. The injection is injective and lands inside F* with the key claim.
bool check_injection(Context& ctx) {
    const int n_max = ctx.opt.quick ? 7 : 8;
    const Permutation tau = mu(4);
    const Permutation tau_hat = mu(3);
    bool ok = true;
    long built = 0;
    for (int n = 5; n <= n_max; ++n)
        for (int col = 1; col <= n; ++col)
            for (int val = 1; val < n - col - 2; ++val) {
                std::set<std::string> outputs;
                long domain = 0;
                for (int w1 = 0; w1 <= col - 1; ++w1)
                    for (int w2 = 0; w2 <= val - 1; ++w2) {
                        const auto b1s = enumerate_dec(w1, col - 1, n - 2 - val, 1);
                        const auto b2s = enumerate_dec(w2, n - 2 - col, val - 1, 1);
                        const auto phis =
                            collect(CellQuery{tau_hat, n - w1 - w2 - 1, 0, 0, false, 1});
                        for (const auto& b1 : b1s)
                            for (const auto& b2 : b2s)
                                for (const auto& phi : phis) {
                                    const ConstructionInput input{n, col, val, 1, b1, b2, phi};
                                    const Permutation sigma = build_sigma(input);
                                    ++domain;
                                    outputs.insert(sigma.str());
                                    bool member = sigma(col) == val &&
                                                  !contains(sigma, tau) &&
                                                  verify_key_claim(sigma, input.psi(), 1);
                                    for (int i = 1; i < col; ++i)
                                        member = member && sigma(i) > val;
                                    ok = ok && member;
                                }
                    }
                ok = ok && static_cast<long>(outputs.size()) == domain;
                built += domain;
            }
    ctx.detail << fmt("%ld constructed outputs, N <= %d, A = 1: all in F*, key claim holds, "
                      "injective per cell",
                      built, n_max);
    return ok;
}

// 8. Rate-function identities on dense grids.
bool check_ratefn_identities(Context& ctx) {
    bool ok = true;
    double worst = 0;
    for (double c : {1.5, 2.0, 4.0, 9.0, 16.0}) {
        const double peak = (std::sqrt(c) + 1) * (std::sqrt(c) + 1);
        for (int i = 1; i <= 19; ++i) {
            const double u = i / 20.0;
            const double err = std::abs(eval_G(u, u, c) - peak);
            worst = std::max(worst, err / peak);
            ok = ok && err <= 1e-12 * peak;
        }
    }
    for (int i = 1; i <= 19; ++i)
        for (int j = 1; j <= 19; ++j) {
            const double u = i / 20.0, v = j / 20.0;
            const double closed = std::pow(u + v, u + v) * std::pow(2 - u - v, 2 - u - v) /
                                  (std::pow(u, u) * std::pow(v, v) * std::pow(1 - u, 1 - u) *
                                   std::pow(1 - v, 1 - v));
            ok = ok && std::abs(eval_G(u, v, 1.0) - closed) <= 1e-12 * closed;
        }
    for (int ai = 1; ai <= 10; ++ai)
        for (int bi = 1; bi <= 10; ++bi)
            for (double c : {2.0, 4.0, 9.0}) {
                const double a = ai / 10.0, b = bi / 10.0;
                const double y = ystar(a, b, c);
                ok = ok && std::abs((a - y) * (b - y) - c * y * y) < 1e-12;
                const double fy = eval_f(y, a, b, c);
                const double via_g = std::pow(2.0, a + b) * std::pow(eval_h(a, b, c), -a) *
                                     std::pow(eval_h(b, a, c), -b);
                const double via_root = std::pow(1 - y / a, -a) * std::pow(1 - y / b, -b);
                ok = ok && std::abs(fy - via_g) <= 1e-10 * fy;
                ok = ok && std::abs(fy - via_root) <= 1e-10 * fy;
            }
    for (int a = 1; a <= 12; ++a)
        for (int b = a; b <= 12; ++b)
            for (int c : {2, 4, 9}) {
                const double sup = eval_f(ystar(a, b, c), a, b, c);
                ok = ok && eval_H_exact(a, b, mpq_class(c)).get_d() <= (a + 1) * sup;
            }
    ctx.detail << fmt("diagonal identity (worst rel err %.2e), c = 1 closed form, y* residual, "
                      "f(y*) both forms, H <= (a+1) sup f for a <= b <= 12",
                      worst);
    return ok;
}

// 9. Closed-form derivatives match finite differences with the proven signs.
bool check_monotonicity(Context& ctx) {
    bool ok = true;
    const double eps = 1e-5;
    double worst1 = 0, worst2 = 0;
    for (double c : {2.0, 4.0, 9.0})
        for (int i = 1; i <= 19; ++i)
            for (int j = 1; j <= 19; ++j) {
                const double u = i / 20.0, v = j / 20.0;
                const double d1 = dlnG_du(u, v, c);
                const double d2 = d2lnG_du2(u, v, c);
                if (i != j) {
                    const double fd = (std::log(eval_G(u + eps, v, c)) -
                                       std::log(eval_G(u - eps, v, c))) /
                                      (2 * eps);
                    worst1 = std::max(worst1, std::abs(d1 - fd));
                    ok = ok && std::abs(d1 - fd) <= 1e-6 * std::max(1.0, std::abs(fd));
                    ok = ok && ((i < j) ? d1 > 0 : d1 < 0);
                }
                const double fd2 = (std::log(eval_G(u + eps, v, c)) +
                                    std::log(eval_G(u - eps, v, c)) -
                                    2 * std::log(eval_G(u, v, c))) /
                                   (eps * eps);
                worst2 = std::max(worst2, std::abs(d2 - fd2) / std::abs(fd2));
                ok = ok && std::abs(d2 - fd2) <= 1e-4 * std::abs(fd2);
                ok = ok && d2 < 0;
            }
    ctx.detail << fmt("19x19 grid, c in {2,4,9}: first/second derivative vs central differences "
                      "(worst %.1e / %.1e rel), signs as proven",
                      worst1, worst2);
    return ok;
}

// 10. The uniform-spacing count ratio climbs toward 1.
bool check_property_ii(Context& ctx) {
    bool ok = true;
    mpq_class prev = 0;
    std::string values;
    for (int n : {20, 40, 80}) {
        const int w = (3 * n) / 10, a = n / 5;
        mpq_class ratio(seq_banded_count(w, n, a),
                        binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(w)));
        ratio.canonicalize();
        ok = ok && ratio > prev;
        prev = ratio;
        values += fmt("%s%.4f", values.empty() ? "" : " < ", ratio.get_d());
    }
    ok = ok && prev > mpq_class(1, 2);
    ctx.detail << fmt("exact ratios %s, and the last exceeds 1/2", values.c_str());
    return ok;
}

// 11. Uniformly-spaced index pairs map into the widened band.
bool check_property_i(Context& ctx) {
    bool ok = true;
    long checked = 0;
    for (int m1 = 1; m1 <= 6; ++m1)
        for (int m2 = 1; m2 <= 6; ++m2)
            for (int w = 1; w <= std::min({3, m1, m2}); ++w)
                for (int a = 1; a <= 2; ++a) {
                    const long b_num = static_cast<long>(a) * (m1 + m2);
                    for (const auto& xs : enumerate_seq(w, m1, a))
                        for (const auto& zs : enumerate_seq(w, m2, a)) {
                            const DecreasingSet image = theta(xs, zs);
                            for (const auto& p : image.points()) {
                                ok = ok && dec_band_ok(p.x, p.y, m1, m2, b_num, m1);
                                ++checked;
                            }
                        }
                }
    ctx.detail << fmt("%ld image points within B = A(1 + M2/M1), w <= 3, M <= 6, A <= 2", checked);
    return ok;
}

// 12. Samplers are exactly uniform; the bounded-shape identity is exact.
bool check_sampler(Context& ctx) {
    bool ok = true;
    const int draws = ctx.opt.quick ? 20000 : 100000;

    const auto cells5 = collect(CellQuery{mu(3), 5});
    ok = ok && cells5.size() == 42;
    std::vector<long> freq5(cells5.size(), 0);
    {
        PrefixSampler sampler(5, mu(3));
        Rng rng(20240503);
        for (int i = 0; i < draws; ++i) {
            const Permutation sigma = sampler.sample(rng);
            const auto it = std::lower_bound(cells5.begin(), cells5.end(), sigma);
            ok = ok && it != cells5.end() && *it == sigma;
            ++freq5[static_cast<size_t>(it - cells5.begin())];
        }
    }
    double stat5 = 0;
    const double exp5 = static_cast<double>(draws) / static_cast<double>(cells5.size());
    for (long f : freq5) stat5 += (f - exp5) * (f - exp5) / exp5;
    const double p5 = chi_square_pvalue(stat5, static_cast<int>(cells5.size()) - 1);
    ok = ok && p5 > 0.01;

    const auto cells6 = collect(CellQuery{mu(4), 6});
    ok = ok && cells6.size() == 513;
    std::vector<long> freq6(cells6.size(), 0);
    {
        RskSampler sampler(6, 4);
        Rng rng(20240502);
        for (int i = 0; i < draws; ++i) {
            const Permutation sigma = sampler.sample(rng);
            const auto it = std::lower_bound(cells6.begin(), cells6.end(), sigma);
            ok = ok && it != cells6.end() && *it == sigma;
            ++freq6[static_cast<size_t>(it - cells6.begin())];
        }
    }
    double stat6 = 0, tv = 0;
    const double exp6 = static_cast<double>(draws) / static_cast<double>(cells6.size());
    for (long f : freq6) {
        stat6 += (f - exp6) * (f - exp6) / exp6;
        tv += std::abs(f / static_cast<double>(draws) - 1.0 / static_cast<double>(cells6.size()));
    }
    tv /= 2;
    const double p6 = chi_square_pvalue(stat6, static_cast<int>(cells6.size()) - 1);
    ok = ok && p6 > 0.01;

    const int n_max = ctx.opt.quick ? 9 : 10;
    for (int k : {3, 4})
        for (int n = 1; n <= n_max; ++n) {
            Count total = 0;
            for (const auto& shape : shapes_bounded_width(n, k - 1)) {
                const Count f = syt_count(shape);
                total += f * f;
            }
            ok = ok && total == count_avoiders(n, mu(k), 0, ctx.cache, ctx.opt.jobs);
        }

    ctx.detail << fmt("prefix chi-square p = %.3f (42 cells), inverse-RSK chi-square p = %.3f "
                      "(513 cells, TV %.4f), %d draws each; shape-sum identity exact for N <= %d",
                      p5, p6, tv, draws, n_max);
    return ok;
}

// 13. Finite-N roots stay under the envelope and close in on the target.
bool check_convergence(Context& ctx) {
    ExperimentSpec spec;
    spec.gamma = spec.delta = 0.3;
    spec.k = 4;
    spec.n_min = 8;
    spec.n_max = ctx.opt.quick ? 9 : 13;
    spec.star = true;
    const auto rows = convergence_table(spec, ctx.cache, ctx.opt.jobs);
    bool ok = true;
    for (const auto& row : rows) {
        ok = ok && row.count <= row.envelope_count;  // exact inequality per row
        ok = ok && row.root <= row.upper_env;
    }
    const double first_gap = std::abs(rows.front().root - rows.front().g_target) /
                             rows.front().g_target;
    const double last_gap = std::abs(rows.back().root - rows.back().g_target) /
                            rows.back().g_target;
    ok = ok && last_gap < first_gap;
    ctx.detail << fmt("N = 8..%d: every exact count <= envelope; relative gap to G(0.3,0.7;4) "
                      "falls %.4f -> %.4f",
                      spec.n_max, first_gap, last_gap);
    return ok;
}

// 14. The analytic induction step: G sits strictly below (k-1)^2 off-diagonal.
bool check_induction(Context& ctx) {
    bool ok = true;
    std::string margins;
    for (int k : {4, 5, 6}) {
        const auto rep = induction_check(k);
        ok = ok && rep.all_strict && rep.min_margin > 1e-9 && rep.max_diag_gap < 1e-9;
        margins += fmt("%sk=%d: %.3g", margins.empty() ? "" : ", ", k, rep.min_margin);
    }
    ctx.detail << fmt("19x19 grids; min off-diagonal margins {%s}, diagonal within 1e-9",
                      margins.c_str());
    return ok;
}

std::vector<Check> build_checks() {
    return {
        {"catalan", check_catalan},
        {"gessel", check_gessel},
        {"wilf-equivalence", check_wilf},
        {"fstar-equality", check_fstar_equality},
        {"upper-bound", check_upper_bound},
        {"lower-bound", check_lower_bound_all},
        {"injection", check_injection},
        {"ratefn-identities", check_ratefn_identities},
        {"monotonicity-concavity", check_monotonicity},
        {"property-ii-trend", check_property_ii},
        {"property-i", check_property_i},
        {"sampler-exactness", check_sampler},
        {"convergence-trend", check_convergence},
        {"induction-step", check_induction},
    };
}

}  // namespace

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& check : build_checks()) names.push_back(check.name);
    return names;
}

std::vector<Result> run(const Options& options, std::ostream& out) {
    std::vector<Result> results;
    CountCache local_cache;
    for (const auto& check : build_checks()) {
        if (!options.only.empty() && check.name.find(options.only) == std::string::npos) continue;
        Context ctx;
        ctx.opt = options;
        ctx.cache = options.cache ? options.cache : &local_cache;
        const auto start = std::chrono::steady_clock::now();
        Result result;
        result.name = check.name;
        try {
            result.pass = check.fn(ctx);
            result.detail = ctx.detail.str();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                             .count();
        out << (result.pass ? "[PASS] " : "[FAIL] ") << result.name << ": " << result.detail
            << " (" << fmt("%.2f", result.seconds) << "s)\n";
        out.flush();
        results.push_back(std::move(result));
    }
    return results;
}

bool all_passed(const std::vector<Result>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace pav::verify
