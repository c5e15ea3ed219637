#include "pav/ratefn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "pav/enumeration.hpp"

namespace pav {

namespace {

void require(bool cond, const char* message) {
    if (!cond) throw std::domain_error(message);
}

}  // namespace

double rate_r(double u, double v, double c) {
    return std::sqrt((v - u) * (v - u) + 4.0 * c * u * v);
}

double eval_h(double u, double v, double c) {
    require(u > 0.0, "eval_h: requires u > 0");
    require(v > 0.0, "eval_h: requires v > 0");
    require(c >= 1.0, "eval_h: requires c >= 1");
    // Denominator is a sum of positive terms (2cu + (v-u) = v + (2c-1)u > 0),
    // so there is no cancellation for any c >= 1.
    return 4.0 * c * u / (2.0 * c * u + (v - u) + rate_r(u, v, c));
}

double eval_g(double x, double y, double c) {
    require(x > 0.0 && x < 1.0, "eval_g: requires x in (0,1)");
    require(y > 0.0 && y < 1.0, "eval_g: requires y in (0,1)");
    require(c >= 1.0, "eval_g: requires c >= 1");
    return std::exp(-x * std::log(eval_h(x, y, c)));
}

double ln_G(double u, double v, double c) {
    require(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0,
            "ln_G: requires u, v in the open interval (0,1)");
    require(c >= 1.0, "ln_G: requires c >= 1");
    if (u > v) std::swap(u, v);  // G is symmetric; canonicalize for bit-stable swaps
    return std::log(4.0 * c) - u * std::log(eval_h(u, v, c)) - v * std::log(eval_h(v, u, c)) -
           (1.0 - u) * std::log(eval_h(1.0 - u, 1.0 - v, c)) -
           (1.0 - v) * std::log(eval_h(1.0 - v, 1.0 - u, c));
}

double eval_G(double u, double v, double c) { return std::exp(ln_G(u, v, c)); }

double ystar(double a, double b, double c) {
    require(a > 0.0 && b > 0.0, "ystar: requires a, b > 0");
    require(c >= 1.0, "ystar: requires c >= 1");
    const double s = a + b;
    return 2.0 * a * b / (std::sqrt(s * s + 4.0 * (c - 1.0) * a * b) + s);
}

namespace {

// -y ln(y/t) + (y-t) ln(1-y/t) with the 0^0 = 1 convention at y = 0 and y = t.
double ln_f_factor(double y, double t) {
    if (y == 0.0) return 0.0;
    if (y == t) return 0.0;
    return -y * std::log(y / t) + (y - t) * std::log1p(-y / t);
}

}  // namespace

double ln_f(double y, double a, double b, double c) {
    require(a > 0.0 && b > 0.0, "ln_f: requires a, b > 0");
    require(c > 1.0, "ln_f: requires c > 1");
    require(y >= 0.0 && y <= std::min(a, b), "ln_f: requires y in [0, min(a,b)]");
    return ln_f_factor(y, a) + ln_f_factor(y, b) - y * std::log(c);
}

double eval_f(double y, double a, double b, double c) { return std::exp(ln_f(y, a, b, c)); }

double eval_H(int a, int b, double c) {
    require(a >= 0, "eval_H: requires a >= 0");
    require(a <= b, "eval_H: requires a <= b");
    require(c >= 1.0, "eval_H: requires c >= 1");
    double sum = 0.0, comp = 0.0;  // Kahan
    for (int n = 0; n <= a; ++n) {
        const double term =
            binomial(static_cast<unsigned long>(a), static_cast<unsigned long>(n)).get_d() *
            binomial(static_cast<unsigned long>(b), static_cast<unsigned long>(n)).get_d() *
            std::pow(c, -n);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

mpq_class eval_H_exact(int a, int b, const mpq_class& c) {
    if (a < 0 || a > b) throw std::domain_error("eval_H_exact: requires 0 <= a <= b");
    if (c < 1) throw std::domain_error("eval_H_exact: requires c >= 1");
    mpq_class sum = 0;
    mpq_class cpow = 1;
    for (int n = 0; n <= a; ++n) {
        if (n > 0) cpow /= c;
        mpq_class term(binomial(static_cast<unsigned long>(a), static_cast<unsigned long>(n)) *
                       binomial(static_cast<unsigned long>(b), static_cast<unsigned long>(n)));
        sum += term * cpow;
    }
    sum.canonicalize();
    return sum;
}

double dlnG_du(double u, double v, double c) {
    require(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0,
            "dlnG_du: requires u, v in the open interval (0,1)");
    require(c > 1.0, "dlnG_du: requires c > 1");
    return std::log(eval_h(1.0 - u, 1.0 - v, c)) - std::log(eval_h(u, v, c));
}

double d2lnG_du2(double u, double v, double c) {
    require(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0,
            "d2lnG_du2: requires u, v in the open interval (0,1)");
    require(c > 1.0, "d2lnG_du2: requires c > 1");
    return -v / (u * rate_r(u, v, c)) -
           (1.0 - v) / ((1.0 - u) * rate_r(1.0 - u, 1.0 - v, c));
}

std::vector<GridPoint> level_grid(double c, int resolution) {
    if (resolution < 2) throw std::invalid_argument("level_grid: resolution must be >= 2");
    std::vector<GridPoint> out;
    out.reserve(static_cast<size_t>(resolution) * static_cast<size_t>(resolution));
    const double step = 1.0 / (resolution + 1);
    for (int i = 1; i <= resolution; ++i)
        for (int j = 1; j <= resolution; ++j) {
            const double u = i * step, v = j * step;
            out.push_back({u, v, eval_G(u, v, c)});
        }
    return out;
}

void write_level_grid_csv(std::ostream& out, double c, int resolution) {
    out << "u,v,G\n";
    char buf[128];
    for (const auto& p : level_grid(c, resolution)) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", p.u, p.v, p.g);
        out << buf;
    }
}

}  // namespace pav
