#pragma once

#include <iosfwd>
#include <vector>

#include "pav/count_cache.hpp"
#include "pav/permutation.hpp"

namespace pav {

/// Parameters of a finite-N convergence study toward
/// |F_N(I_N, J_N; mu_k)|^(1/N) -> G(gamma, 1-delta; (k-2)^2), with
/// I_N = floor(gamma N) and J_N = floor(delta N).
struct ExperimentSpec {
    double gamma = 0.3;
    double delta = 0.3;
    int k = 4;
    int n_min = 8;
    int n_max = 12;
    bool star = false;  // restrict to (I_N, J_N) being a left-to-right minimum

    void validate() const;
    int col_at(int n) const;  // I_N
    int val_at(int n) const;  // J_N
};

struct ConvergenceRow {
    int n = 0;
    Count count;           // |F_N| (or |F*_N| when star)
    Count envelope_count;  // the exact double-binomial upper-bound sum
    double root = 0;       // count^(1/N)
    double g_target = 0;   // G(gamma, 1-delta; (k-2)^2)
    double upper_env = 0;  // envelope_count^(1/N)
};

/// ln of a positive big integer, accurate to a few ulp.
double ln_count(const Count& value);

std::vector<ConvergenceRow> convergence_table(const ExperimentSpec& spec,
                                              CountCache* cache = nullptr, int jobs = 1);

/// CSV with header "N,count,root,G_target,upper_envelope"; experiment
/// parameters and the root error bound are echoed as '#' comment lines.
void write_convergence_csv(std::ostream& out, const ExperimentSpec& spec,
                           const std::vector<ConvergenceRow>& rows);

/// |S*A_n(tau)| / |S_n(tau)| as an exact rational.
mpq_class banded_fraction(int n, const Permutation& tau, int band, CountCache* cache = nullptr);

struct InductionReport {
    int k = 0;
    int resolution = 0;
    bool all_strict = false;  // G(gamma, 1-delta; (k-2)^2) < (k-1)^2 off-diagonal
    double min_margin = 0;    // smallest (k-1)^2 - G over the off-diagonal grid
    double max_diag_gap = 0;  // largest |G - (k-1)^2| on the diagonal gamma = 1-delta
};

/// Grid check of the analytic step behind the induction over k:
/// G(gamma, 1-delta; (k-2)^2) < (k-1)^2 strictly whenever gamma != 1-delta.
InductionReport induction_check(int k, int resolution = 19);

}  // namespace pav
