// pav: exact enumeration of pattern-avoiding permutations, rate-function
// evaluation, the explicit lower-bound construction, exact samplers, and the
// verification suite behind them.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pav/construction.hpp"
#include "pav/count_cache.hpp"
#include "pav/enumeration.hpp"
#include "pav/experiments.hpp"
#include "pav/permutation.hpp"
#include "pav/ratefn.hpp"
#include "pav/rng.hpp"
#include "pav/sampling.hpp"
#include "pav/verify.hpp"

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

std::unique_ptr<pav::CountCache> open_cache(const std::string& flag_path) {
    std::string path = flag_path;
    if (path.empty())
        if (const char* env = std::getenv("PAV_CACHE")) path = env;
    if (path.empty()) return std::make_unique<pav::CountCache>();
    return std::make_unique<pav::CountCache>(std::filesystem::path(path));
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

std::string format_g(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

int run(int argc, char** argv) {
    CLI::App app{"exact pattern-avoidance toolkit"};
    app.require_subcommand(1);

    std::string cache_path;
    int jobs = 1;
    app.add_option("--cache", cache_path, "count cache file (or set PAV_CACHE)");
    app.add_option("--jobs", jobs, "worker threads for enumeration")->check(CLI::PositiveNumber);

    // count
    auto* count_cmd = app.add_subcommand("count", "exact avoider / cell counts");
    int count_n = 0, count_i = 0, count_j = 0, count_band = 0;
    std::string count_pattern;
    bool count_star = false;
    count_cmd->add_option("--n", count_n, "permutation length")->required();
    count_cmd->add_option("--pattern", count_pattern, "pattern, e.g. 1234 or 1,2,3,4")->required();
    count_cmd->add_option("--i", count_i, "fix sigma_I = J: column I");
    count_cmd->add_option("--j", count_j, "fix sigma_I = J: value J");
    count_cmd->add_flag("--star", count_star, "require (I,J) to be a left-to-right minimum");
    count_cmd->add_option("--band", count_band, "restrict to sigma_i > n - i - band");

    // ratefn
    auto* ratefn_cmd = app.add_subcommand("ratefn", "evaluate the rate function G(u,v;c)");
    double rf_u = 0, rf_v = 0, rf_c = 1;
    bool rf_verbose = false;
    ratefn_cmd->add_option("--u", rf_u)->required();
    ratefn_cmd->add_option("--v", rf_v)->required();
    ratefn_cmd->add_option("--c", rf_c)->required();
    ratefn_cmd->add_flag("--verbose", rf_verbose, "also print the g factors and maximizer");

    // grid
    auto* grid_cmd = app.add_subcommand("grid", "level-curve grid of G as CSV");
    double grid_c = 4;
    int grid_res = 50;
    std::string grid_out;
    grid_cmd->add_option("--c", grid_c)->required();
    grid_cmd->add_option("--res", grid_res, "grid resolution per axis")->check(CLI::PositiveNumber);
    grid_cmd->add_option("--out", grid_out, "output CSV path")->required();

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "exact uniform samples of avoiders");
    int sample_n = 0, sample_count = 1, sample_k = 0;
    std::string sample_pattern, sample_method = "prefix", sample_out;
    uint64_t sample_seed = 1;
    sample_cmd->add_option("--n", sample_n)->required();
    sample_cmd->add_option("--pattern", sample_pattern)->required();
    sample_cmd->add_option("--method", sample_method, "prefix | rsk")
        ->check(CLI::IsMember({"prefix", "rsk"}));
    sample_cmd->add_option("--seed", sample_seed, "64-bit RNG seed");
    sample_cmd->add_option("--count", sample_count, "number of samples")
        ->check(CLI::PositiveNumber);
    sample_cmd->add_option("--out", sample_out, "CSV output (default stdout)");

    // construct
    auto* construct_cmd = app.add_subcommand(
        "construct", "build an avoider through (I,J) from banded decreasing sets");
    int cons_n = 0, cons_i = 0, cons_j = 0, cons_a = 1, cons_k = 4;
    int cons_w1 = -1, cons_w2 = -1;
    std::string cons_out;
    construct_cmd->add_option("--n", cons_n)->required();
    construct_cmd->add_option("--i", cons_i)->required();
    construct_cmd->add_option("--j", cons_j)->required();
    construct_cmd->add_option("--a", cons_a, "band height A")->check(CLI::PositiveNumber);
    construct_cmd->add_option("--k", cons_k, "pattern is the increasing pattern of length k");
    construct_cmd->add_option("--w1", cons_w1, "size of the upper decreasing set (default: from y*)");
    construct_cmd->add_option("--w2", cons_w2, "size of the lower decreasing set (default: from y*)");
    construct_cmd->add_option("--out", cons_out, "also write the graph as scatter CSV");

    // converge
    auto* converge_cmd = app.add_subcommand("converge", "finite-N convergence table as CSV");
    double conv_gamma = 0.3, conv_delta = 0.3;
    int conv_k = 4, conv_nmin = 8, conv_nmax = 12;
    bool conv_star = false;
    std::string conv_out;
    converge_cmd->add_option("--gamma", conv_gamma);
    converge_cmd->add_option("--delta", conv_delta);
    converge_cmd->add_option("--k", conv_k);
    converge_cmd->add_option("--nmin", conv_nmin);
    converge_cmd->add_option("--nmax", conv_nmax);
    converge_cmd->add_flag("--star", conv_star, "left-to-right-minimum variant");
    converge_cmd->add_option("--out", conv_out, "output CSV path (default stdout)");

    // banded
    auto* banded_cmd = app.add_subcommand("banded", "banded avoider fraction |S*A|/|S|");
    int banded_n = 0, banded_a = 1;
    std::string banded_pattern;
    banded_cmd->add_option("--n", banded_n)->required();
    banded_cmd->add_option("--pattern", banded_pattern)->required();
    banded_cmd->add_option("--a", banded_a, "band height A")->check(CLI::PositiveNumber);

    // induction
    auto* induction_cmd = app.add_subcommand("induction", "grid check of G < (k-1)^2 off-diagonal");
    int ind_k = 4, ind_res = 19;
    induction_cmd->add_option("--k", ind_k);
    induction_cmd->add_option("--res", ind_res);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    bool verify_quick = false;
    std::string verify_only;
    verify_cmd->add_flag("--quick", verify_quick, "skip enumerations with N >= 10");
    verify_cmd->add_option("--only", verify_only, "run only checks whose name contains this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    auto cache = open_cache(cache_path);

    if (*count_cmd) {
        pav::CellQuery q;
        q.tau = pav::Permutation::parse(count_pattern);
        q.n = count_n;
        q.col = count_i;
        q.val = count_j;
        q.star = count_star;
        q.band = count_band;
        std::cout << pav::count_cell(q, cache.get(), jobs).get_str() << "\n";
    } else if (*ratefn_cmd) {
        std::cout << format_g(pav::eval_G(rf_u, rf_v, rf_c)) << "\n";
        if (rf_verbose) {
            std::cout << "g(u,v;c)     = " << format_g(pav::eval_g(rf_u, rf_v, rf_c)) << "\n"
                      << "g(v,u;c)     = " << format_g(pav::eval_g(rf_v, rf_u, rf_c)) << "\n"
                      << "g(1-u,1-v;c) = " << format_g(pav::eval_g(1 - rf_u, 1 - rf_v, rf_c)) << "\n"
                      << "g(1-v,1-u;c) = " << format_g(pav::eval_g(1 - rf_v, 1 - rf_u, rf_c)) << "\n"
                      << "y*(u,1-v;c)  = " << format_g(pav::ystar(rf_u, 1 - rf_v, rf_c)) << "\n";
        }
    } else if (*grid_cmd) {
        auto out = open_output(grid_out);
        pav::write_level_grid_csv(out, grid_c, grid_res);
        std::cout << "wrote " << grid_res * grid_res << " rows to " << grid_out << "\n";
    } else if (*sample_cmd) {
        const pav::Permutation tau = pav::Permutation::parse(sample_pattern);
        pav::Rng rng(sample_seed);
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!sample_out.empty()) {
            file = open_output(sample_out);
            out = &file;
        }
        std::optional<pav::PrefixSampler> prefix;
        std::optional<pav::RskSampler> rsk;
        if (sample_method == "rsk") {
            if (!pav::is_increasing(tau))
                throw CLI::ValidationError("--method rsk requires an increasing pattern");
            rsk.emplace(sample_n, tau.size());
        } else {
            prefix.emplace(sample_n, tau);
        }
        for (int s = 0; s < sample_count; ++s) {
            const pav::Permutation sigma = rsk ? rsk->sample(rng) : prefix->sample(rng);
            if (s > 0) *out << "# sample " << s + 1 << "\n";
            if (s == 0)
                pav::scatter_emit(sigma, *out);
            else
                for (int i = 1; i <= sigma.size(); ++i) *out << i << ',' << sigma(i) << '\n';
        }
        if (!sample_out.empty())
            std::cout << "wrote " << sample_count << " sample(s) to " << sample_out << "\n";
    } else if (*construct_cmd) {
        const double c = static_cast<double>((cons_k - 2)) * (cons_k - 2);
        const double gamma = static_cast<double>(cons_i) / cons_n;
        const double delta = static_cast<double>(cons_j) / cons_n;
        const double eps = static_cast<double>(cons_a) / cons_n;
        pav::ConstructionInput input;
        input.n = cons_n;
        input.col = cons_i;
        input.val = cons_j;
        input.band = cons_a;
        // default set sizes from the maximizer, clamped to the legal ranges
        auto clamp_w = [](double w, int hi) {
            return std::max(0, std::min(hi, static_cast<int>(std::lround(w))));
        };
        int w1 = cons_w1 >= 0 ? cons_w1
                              : clamp_w(cons_n * pav::ystar(gamma, 1 - delta - 2 * eps, c),
                                        cons_i - 1);
        int w2 = cons_w2 >= 0 ? cons_w2
                              : clamp_w(cons_n * pav::ystar(1 - gamma - 2 * eps, delta, c),
                                        cons_j - 1);
        for (; w1 >= 0; --w1) {
            try {
                input.b1 = pav::default_banded_dec(w1, cons_i - 1, cons_n - 2 * cons_a - cons_j,
                                                   cons_a);
                break;
            } catch (const std::runtime_error&) {
                if (w1 == 0) throw;
            }
        }
        for (; w2 >= 0; --w2) {
            try {
                input.b2 = pav::default_banded_dec(w2, cons_n - 2 * cons_a - cons_i, cons_j - 1,
                                                   cons_a);
                break;
            } catch (const std::runtime_error&) {
                if (w2 == 0) throw;
            }
        }
        input.phi = pav::Permutation::decreasing(cons_n - w1 - w2 - 1);
        const pav::Permutation sigma = pav::build_sigma(input);
        std::cout << sigma.str() << "\n";
        std::cout << "# w1=" << w1 << " w2=" << w2 << " psi_size=" << input.psi().size() << "\n";
        const bool avoids = !pav::contains(sigma, pav::mu(cons_k));
        std::cout << "# sigma_I=J: " << (sigma(cons_i) == cons_j ? "yes" : "no")
                  << ", avoids pattern: " << (avoids ? "yes" : "no") << ", key claim: "
                  << (pav::verify_key_claim(sigma, input.psi(), cons_a) ? "yes" : "no") << "\n";
        if (!cons_out.empty()) {
            auto out = open_output(cons_out);
            pav::scatter_emit(sigma, out);
            std::cout << "wrote graph to " << cons_out << "\n";
        }
    } else if (*converge_cmd) {
        pav::ExperimentSpec spec;
        spec.gamma = conv_gamma;
        spec.delta = conv_delta;
        spec.k = conv_k;
        spec.n_min = conv_nmin;
        spec.n_max = conv_nmax;
        spec.star = conv_star;
        const auto rows = pav::convergence_table(spec, cache.get(), jobs);
        if (conv_out.empty()) {
            pav::write_convergence_csv(std::cout, spec, rows);
        } else {
            auto out = open_output(conv_out);
            pav::write_convergence_csv(out, spec, rows);
            std::cout << "wrote " << rows.size() << " rows to " << conv_out << "\n";
        }
    } else if (*banded_cmd) {
        const mpq_class frac = pav::banded_fraction(
            banded_n, pav::Permutation::parse(banded_pattern), banded_a, cache.get());
        std::cout << frac.get_str() << " = " << format_g(frac.get_d()) << "\n";
    } else if (*induction_cmd) {
        const auto rep = pav::induction_check(ind_k, ind_res);
        std::cout << "k=" << rep.k << " grid=" << rep.resolution << "x" << rep.resolution
                  << " all_strict=" << (rep.all_strict ? "yes" : "no")
                  << " min_margin=" << format_g(rep.min_margin)
                  << " max_diag_gap=" << format_g(rep.max_diag_gap) << "\n";
        return rep.all_strict ? 0 : kExitVerifyFailure;
    } else if (*verify_cmd) {
        pav::verify::Options options;
        options.quick = verify_quick;
        options.only = verify_only;
        options.jobs = jobs;
        options.cache = cache.get();
        const auto results = pav::verify::run(options, std::cout);
        cache->save();
        if (results.empty()) {
            std::cerr << "no checks matched --only " << verify_only << "\n";
            return kExitUsage;
        }
        return pav::verify::all_passed(results) ? 0 : kExitVerifyFailure;
    }

    cache->save();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
