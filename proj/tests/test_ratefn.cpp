#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <gmpxx.h>
#include <sstream>
#include <vector>

#include "pav/ratefn.hpp"

using namespace pav;

namespace {

constexpr int kOracleBits = 256;

// High-precision base of the verbatim quotient (2cx + (y-x) - sqrt((y-x)^2 +
// 4cxy)) / (x(c-1)), for c > 1. Only +,-,*,/ and sqrt appear, so mpf
// suffices; the cancellation near c = 1 is absorbed by the 256-bit mantissa.
double verbatim_base(double x, double y, double c) {
    mpf_class xx(x, kOracleBits), yy(y, kOracleBits), cc(c, kOracleBits);
    mpf_class disc = (yy - xx) * (yy - xx) + 4 * cc * xx * yy;
    mpf_class root(0, kOracleBits);
    mpf_sqrt(root.get_mpf_t(), disc.get_mpf_t());
    mpf_class base = (2 * cc * xx + (yy - xx) - root) / (xx * (cc - 1));
    return base.get_d();
}

double verbatim_g(double x, double y, double c) { return std::pow(verbatim_base(x, y, c), -x); }

double verbatim_G(double u, double v, double c) {
    return 4.0 * c * verbatim_g(u, v, c) * verbatim_g(v, u, c) * verbatim_g(1 - u, 1 - v, c) *
           verbatim_g(1 - v, 1 - u, c);
}

// High-precision y* from the pre-rationalized root (sqrt((a-b)^2 + 4cab) -
// (a+b)) / (2(c-1)), c > 1.
double verbatim_ystar(double a, double b, double c) {
    mpf_class aa(a, kOracleBits), bb(b, kOracleBits), cc(c, kOracleBits);
    mpf_class disc = (aa - bb) * (aa - bb) + 4 * cc * aa * bb;
    mpf_class root(0, kOracleBits);
    mpf_sqrt(root.get_mpf_t(), disc.get_mpf_t());
    mpf_class y = (root - (aa + bb)) / (2 * (cc - 1));
    return y.get_d();
}

// g extended beyond (0,1) via the stabilized h, for identities with a,b > 1.
double g_wide(double x, double y, double c) { return std::pow(eval_h(x, y, c), -x); }

// Eq-1.4-style closed form for c = 1.
double closed_form_c1(double u, double v) {
    return std::pow(u + v, u + v) * std::pow(2 - u - v, 2 - u - v) /
           (std::pow(u, u) * std::pow(v, v) * std::pow(1 - u, 1 - u) * std::pow(1 - v, 1 - v));
}

const std::vector<double> kGrid = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95};
const std::vector<double> kCs = {2.0, 4.0, 9.0};

}  // namespace

TEST_CASE("eval_h: diagonal, c = 1 limit, and agreement with the quotient form") {
    for (double u : kGrid)
        for (double c : kCs)
            CHECK(eval_h(u, u, c) ==
                  doctest::Approx(2 * std::sqrt(c) / (std::sqrt(c) + 1)).epsilon(1e-13));
    for (double u : kGrid)
        for (double v : kGrid)
            CHECK(eval_h(u, v, 1.0) == doctest::Approx(2 * u / (u + v)).epsilon(1e-14));
    // stabilized form vs the quotient form (with the (c-1) divisor folded
    // in), including c barely above 1
    for (double c : {1.001, 1.01, 1.5, 2.0, 4.0, 9.0, 25.0, 100.0})
        for (double u : kGrid)
            for (double v : kGrid) {
                const double quotient = verbatim_base(u, v, c);
                CHECK(std::abs(eval_h(u, v, c) - quotient) < 1e-12 * std::max(1.0, quotient));
            }
    CHECK_THROWS_AS(eval_h(0.0, 0.5, 2.0), std::domain_error);
    CHECK_THROWS_AS(eval_h(0.5, 0.5, 0.5), std::domain_error);
}

TEST_CASE("eval_g identities") {
    for (double x : kGrid)
        for (double c : kCs) {
            const double want = std::pow(2 * std::sqrt(c) / (std::sqrt(c) + 1), -x);
            CHECK(eval_g(x, x, c) == doctest::Approx(want).epsilon(1e-12));
        }
    for (double x : kGrid)
        for (double y : kGrid)
            CHECK(eval_g(x, y, 1.0) ==
                  doctest::Approx(std::pow(2 * x / (x + y), -x)).epsilon(1e-13));
    CHECK(eval_g(0.3, 0.5, 4.0) == doctest::Approx(verbatim_g(0.3, 0.5, 4.0)).epsilon(1e-10));
    CHECK(eval_g(0.3, 0.5, 4.0) > 0);
    for (double x : kGrid)
        for (double y : kGrid)
            for (double c : kCs)
                CHECK(eval_g(x, y, c) == doctest::Approx(verbatim_g(x, y, c)).epsilon(1e-10));
    CHECK_THROWS_AS(eval_g(0.0, 0.5, 2.0), std::domain_error);
    CHECK_THROWS_AS(eval_g(1.0, 0.5, 2.0), std::domain_error);
}

TEST_CASE("eval_G identities") {
    CHECK(eval_G(0.3, 0.3, 4.0) == doctest::Approx(9.0).epsilon(1e-13));
    for (double u : kGrid)
        for (double c : kCs) {
            const double want = (std::sqrt(c) + 1) * (std::sqrt(c) + 1);
            CHECK(eval_G(u, u, c) == doctest::Approx(want).epsilon(1e-12));
        }
    CHECK(eval_G(0.2, 0.5, 1.0) == doctest::Approx(closed_form_c1(0.2, 0.5)).epsilon(1e-12));
    for (double u : kGrid)
        for (double v : kGrid)
            CHECK(eval_G(u, v, 1.0) == doctest::Approx(closed_form_c1(u, v)).epsilon(1e-12));
    // factor-swap symmetry is exact after canonicalization
    CHECK(eval_G(0.2, 0.7, 4.0) == eval_G(0.7, 0.2, 4.0));
    for (double u : kGrid)
        for (double v : kGrid)
            for (double c : kCs) CHECK(eval_G(u, v, c) == eval_G(v, u, c));
    // agreement with the verbatim four-factor product for c > 1
    for (double u : kGrid)
        for (double v : kGrid)
            for (double c : kCs)
                CHECK(eval_G(u, v, c) == doctest::Approx(verbatim_G(u, v, c)).epsilon(1e-10));
    // ... and with the (c-1)^2-prefactor form over the unfolded h
    for (double c : kCs)
        for (double u : kGrid)
            for (double v : kGrid) {
                auto h_paper = [&](double a, double b) { return (c - 1) * eval_h(a, b, c); };
                const double alt = 4 * c * (c - 1) * (c - 1) * std::pow(h_paper(u, v), -u) *
                                   std::pow(h_paper(v, u), -v) *
                                   std::pow(h_paper(1 - u, 1 - v), -(1 - u)) *
                                   std::pow(h_paper(1 - v, 1 - u), -(1 - v));
                CHECK(eval_G(u, v, c) == doctest::Approx(alt).epsilon(1e-12));
            }
}

TEST_CASE("ystar") {
    CHECK(ystar(1.0, 1.0, 4.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    for (double a : {0.2, 0.7, 1.0, 3.0})
        for (double b : {0.4, 1.0, 2.5})
            CHECK(ystar(a, b, 1.0) == doctest::Approx(a * b / (a + b)).epsilon(1e-14));
    for (double a = 0.1; a <= 1.05; a += 0.1)
        for (double b = 0.1; b <= 1.05; b += 0.1)
            for (double c : kCs) {
                const double y = ystar(a, b, c);
                CHECK(y > 0);
                CHECK(y < std::min(a, b));
                CHECK(std::abs((a - y) * (b - y) - c * y * y) < 1e-12);
                CHECK(y == doctest::Approx(verbatim_ystar(a, b, c)).epsilon(1e-12));
            }
    CHECK_THROWS_AS(ystar(0.0, 1.0, 2.0), std::domain_error);
}

TEST_CASE("eval_f: endpoints, maximum identities, concavity") {
    for (double a : {0.4, 0.8, 1.0, 2.0})
        for (double b : {0.3, 0.9, 2.5})
            for (double c : kCs) {
                CHECK(eval_f(0.0, a, b, c) == 1.0);
                const double y = ystar(a, b, c);
                const double fy = eval_f(y, a, b, c);
                const double eq28 = std::pow(2.0, a + b) * g_wide(a, b, c) * g_wide(b, a, c);
                CHECK(fy == doctest::Approx(eq28).epsilon(1e-10));
                const double eq210 = std::pow(1 - y / a, -a) * std::pow(1 - y / b, -b);
                CHECK(fy == doctest::Approx(eq210).epsilon(1e-10));
                // y* maximizes f on a 1e-3 grid of [0, min(a,b)]
                const double top = std::min(a, b);
                for (int i = 0; i <= 1000; ++i)
                    CHECK(fy >= eval_f(top * i / 1000.0, a, b, c) * (1 - 1e-12));
                // log-concavity: discrete second differences of ln f
                for (int i = 1; i < 200; ++i) {
                    const double mid = ln_f(top * i / 200.0, a, b, c);
                    const double lo = ln_f(top * (i - 1) / 200.0, a, b, c);
                    const double hi = ln_f(top * (i + 1) / 200.0, a, b, c);
                    CHECK(lo + hi - 2 * mid <= 1e-12);
                }
            }
    CHECK_THROWS_AS(eval_f(-0.1, 1.0, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(eval_f(1.1, 1.0, 2.0, 2.0), std::domain_error);
}

TEST_CASE("f(theta)*c^theta is independent of c") {
    for (double theta : {0.1, 0.2, 0.3})
        for (double alpha : {0.5, 0.8})
            for (double beta : {0.4, 0.7}) {
                if (theta >= std::min(alpha, beta)) continue;
                const double ref = eval_f(theta, alpha, beta, 2.0) * std::pow(2.0, theta);
                for (double c : {4.0, 9.0})
                    CHECK(eval_f(theta, alpha, beta, c) * std::pow(c, theta) ==
                          doctest::Approx(ref).epsilon(1e-10));
            }
}

TEST_CASE("eval_H") {
    for (double c : {1.0, 2.0, 4.0, 9.0}) {
        CHECK(eval_H(1, 1, c) == doctest::Approx(1.0 + 1.0 / c).epsilon(1e-15));
        CHECK(eval_H(0, 7, c) == 1.0);
    }
    // exact rational evaluation agrees with the compensated float sum
    for (int a = 0; a <= 12; ++a)
        for (int b = a; b <= 12; ++b)
            for (int ci : {2, 4, 9}) {
                const mpq_class exact = eval_H_exact(a, b, mpq_class(ci));
                CHECK(eval_H(a, b, ci) == doctest::Approx(exact.get_d()).epsilon(1e-13));
            }
    // H(a,b;c) <= (a+1) sup f; at a = 0 both sides are 1
    for (int b = 1; b <= 12; ++b)
        for (int ci : {2, 4, 9}) CHECK(eval_H_exact(0, b, mpq_class(ci)) == 1);
    for (int a = 1; a <= 12; ++a)
        for (int b = a; b <= 12; ++b)
            for (int ci : {2, 4, 9}) {
                const double sup = eval_f(ystar(a, b, ci), a, b, ci);
                CHECK(eval_H_exact(a, b, mpq_class(ci)).get_d() <= (a + 1) * sup);
            }
    CHECK_THROWS_AS(eval_H(3, 2, 2.0), std::domain_error);
    CHECK_THROWS_AS(eval_H_exact(3, 2, mpq_class(2)), std::domain_error);
}

TEST_CASE("derivatives match finite differences and carry the proven signs") {
    const double eps = 1e-5;
    for (double c : kCs) {
        for (double u : kGrid)
            for (double v : kGrid) {
                const double d1 = dlnG_du(u, v, c);
                if (u != v) {
                    const double fd =
                        (std::log(eval_G(u + eps, v, c)) - std::log(eval_G(u - eps, v, c))) /
                        (2 * eps);
                    CHECK(d1 == doctest::Approx(fd).epsilon(1e-6));
                    if (u < v) CHECK(d1 > 0);
                    if (u > v) CHECK(d1 < 0);
                } else {
                    CHECK(std::abs(d1) < 1e-13);
                }
                const double d2 = d2lnG_du2(u, v, c);
                CHECK(d2 < 0);
                const double fd2 =
                    (std::log(eval_G(u + eps, v, c)) + std::log(eval_G(u - eps, v, c)) -
                     2 * std::log(eval_G(u, v, c))) /
                    (eps * eps);
                CHECK(d2 == doctest::Approx(fd2).epsilon(1e-4));
            }
    }
    CHECK(dlnG_du(0.2, 0.5, 4.0) > 0);
    CHECK(d2lnG_du2(0.5, 0.5, 4.0) < 0);
    CHECK_THROWS_AS(dlnG_du(0.2, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(d2lnG_du2(0.2, 0.5, 1.0), std::domain_error);
}

TEST_CASE("strict monotonicity away from the diagonal") {
    for (double c : kCs) {
        for (size_t i = 0; i < kGrid.size(); ++i)
            for (size_t j = i + 1; j < kGrid.size(); ++j)
                for (size_t t = j + 1; t < kGrid.size(); ++t) {
                    // 0 < u < u' < v: increasing in the first argument
                    CHECK(eval_G(kGrid[i], kGrid[t], c) < eval_G(kGrid[j], kGrid[t], c));
                    // u < v < v': decreasing in the second argument
                    CHECK(eval_G(kGrid[i], kGrid[t], c) < eval_G(kGrid[i], kGrid[j], c));
                }
    }
}

TEST_CASE("off-diagonal values stay strictly below the diagonal maximum") {
    for (double c : kCs) {
        const double peak = (std::sqrt(c) + 1) * (std::sqrt(c) + 1);
        for (double u : kGrid)
            for (double v : kGrid) {
                if (u == v) continue;
                CHECK(eval_G(u, v, c) < peak - 1e-9);
            }
    }
    for (double u : kGrid)
        for (double v : kGrid) {
            if (u == v) continue;
            CHECK(eval_G(u, v, 1.0) < 4.0);
        }
}

TEST_CASE("level grid") {
    const auto grid = level_grid(4.0, 19);
    CHECK(grid.size() == 19 * 19);
    double best = 0;
    for (const auto& p : grid) best = std::max(best, p.g);
    for (const auto& p : grid) {
        if (p.u == p.v) {
            CHECK(p.g == doctest::Approx(9.0).epsilon(1e-12));
            CHECK(p.g >= best - 1e-12);  // maximum attained on the diagonal
        }
    }
    for (int i = 0; i < 19; ++i)
        for (int j = 0; j < 19; ++j)
            CHECK(grid[static_cast<size_t>(i * 19 + j)].g ==
                  grid[static_cast<size_t>(j * 19 + i)].g);

    std::ostringstream csv;
    write_level_grid_csv(csv, 4.0, 3);
    const std::string text = csv.str();
    CHECK(text.substr(0, 6) == "u,v,G\n");
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 9);
    CHECK_THROWS_AS(level_grid(4.0, 1), std::invalid_argument);
}
