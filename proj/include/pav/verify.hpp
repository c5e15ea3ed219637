#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "pav/count_cache.hpp"

namespace pav::verify {

struct Options {
    bool quick = false;      // cap exact enumerations below N = 10
    std::string only;        // run checks whose name contains this substring
    int jobs = 1;
    CountCache* cache = nullptr;
};

struct Result {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

/// Names of all verification checks, in run order.
std::vector<std::string> check_names();

/// Runs the verification suite; one line "[PASS|FAIL] name: detail" per
/// check goes to `out` as each check finishes. Returns all results.
std::vector<Result> run(const Options& options, std::ostream& out);

/// True iff every result passed.
bool all_passed(const std::vector<Result>& results);

}  // namespace pav::verify
