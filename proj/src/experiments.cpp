#include "pav/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "pav/enumeration.hpp"
#include "pav/ratefn.hpp"

namespace pav {

void ExperimentSpec::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0 && delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("ExperimentSpec: gamma, delta must lie in (0,1)");
    if (!(gamma < 1.0 - delta))
        throw std::invalid_argument("ExperimentSpec: requires gamma < 1 - delta");
    if (k < 3) throw std::invalid_argument("ExperimentSpec: k must be >= 3");
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("ExperimentSpec: bad N range");
    if (col_at(n_min) < 1 || val_at(n_min) < 1)
        throw std::invalid_argument("ExperimentSpec: I_N, J_N must be >= 1 at n_min");
}

int ExperimentSpec::col_at(int n) const { return static_cast<int>(std::floor(gamma * n)); }
int ExperimentSpec::val_at(int n) const { return static_cast<int>(std::floor(delta * n)); }

double ln_count(const Count& value) {
    if (value <= 0) throw std::domain_error("ln_count: value must be positive");
    signed long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exponent) * M_LN2;
}

std::vector<ConvergenceRow> convergence_table(const ExperimentSpec& spec, CountCache* cache,
                                              int jobs) {
    spec.validate();
    const double c = static_cast<double>((spec.k - 2)) * (spec.k - 2);
    const double g_target = eval_G(spec.gamma, 1.0 - spec.delta, c);
    const Permutation tau = mu(spec.k);
    const Permutation tau_hat = mu(spec.k - 1);
    std::vector<ConvergenceRow> rows;
    for (int n = spec.n_min; n <= spec.n_max; ++n) {
        const int col = spec.col_at(n), val = spec.val_at(n);
        if (!(val < n - col))
            throw std::invalid_argument("convergence_table: J_N < N - I_N violated");
        ConvergenceRow row;
        row.n = n;
        row.count = count_cell(CellQuery{tau, n, col, val, spec.star}, cache, jobs);
        row.envelope_count = 0;
        for (int l = 0; l <= col - 1; ++l)
            for (int m = 0; m <= val - 1; ++m) {
                Count term =
                    binomial(static_cast<unsigned long>(col - 1), static_cast<unsigned long>(l));
                term *= binomial(static_cast<unsigned long>(n - val), static_cast<unsigned long>(l));
                term *= binomial(static_cast<unsigned long>(n - col), static_cast<unsigned long>(m));
                term *= binomial(static_cast<unsigned long>(val - 1), static_cast<unsigned long>(m));
                term *= count_avoiders(n - l - m - 1, tau_hat, 0, cache);
                row.envelope_count += term;
            }
        row.root = std::exp(ln_count(row.count) / n);
        row.upper_env = std::exp(ln_count(row.envelope_count) / n);
        row.g_target = g_target;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_convergence_csv(std::ostream& out, const ExperimentSpec& spec,
                           const std::vector<ConvergenceRow>& rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "# gamma=%.12g delta=%.12g k=%d star=%d I_N=floor(gamma*N) J_N=floor(delta*N)\n",
                  spec.gamma, spec.delta, spec.k, spec.star ? 1 : 0);
    out << buf;
    // ln via double mantissa: ~2^-52 relative on ln, divided by N for the root
    double max_err = 0;
    for (const auto& row : rows)
        max_err = std::max(max_err, (std::abs(ln_count(row.count)) * 2.3e-16 + 2.3e-16) / row.n);
    std::snprintf(buf, sizeof buf, "# root_rel_err_bound=%.3g\n", max_err);
    out << buf;
    out << "N,count,root,G_target,upper_envelope\n";
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, ",%.12g,%.12g,%.12g\n", row.root, row.g_target,
                      row.upper_env);
        out << row.n << ',' << row.count.get_str() << buf;
    }
}

mpq_class banded_fraction(int n, const Permutation& tau, int band, CountCache* cache) {
    if (band < 1) throw std::invalid_argument("banded_fraction: band must be >= 1");
    const Count restricted = count_avoiders(n, tau, band, cache);
    const Count all = count_avoiders(n, tau, 0, cache);
    mpq_class frac(restricted, all);
    frac.canonicalize();
    return frac;
}

InductionReport induction_check(int k, int resolution) {
    if (k < 4) throw std::invalid_argument("induction_check: k must be >= 4");
    if (resolution < 2) throw std::invalid_argument("induction_check: resolution must be >= 2");
    const double c = static_cast<double>((k - 2)) * (k - 2);
    const double limit = static_cast<double>((k - 1)) * (k - 1);
    InductionReport rep;
    rep.k = k;
    rep.resolution = resolution;
    rep.all_strict = true;
    rep.min_margin = limit;
    rep.max_diag_gap = 0;
    const double step = 1.0 / (resolution + 1);
    for (int i = 1; i <= resolution; ++i)
        for (int j = 1; j <= resolution; ++j) {
            const double gamma = i * step, delta = j * step;
            const double value = eval_G(gamma, 1.0 - delta, c);
            if (i + j == resolution + 1) {  // gamma == 1 - delta exactly on this grid
                rep.max_diag_gap = std::max(rep.max_diag_gap, std::abs(value - limit));
            } else {
                const double margin = limit - value;
                rep.min_margin = std::min(rep.min_margin, margin);
                if (margin <= 0) rep.all_strict = false;
            }
        }
    return rep;
}

}  // namespace pav
