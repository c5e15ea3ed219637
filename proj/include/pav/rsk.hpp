#pragma once

#include <map>
#include <utility>
#include <vector>

#include "pav/count_cache.hpp"
#include "pav/permutation.hpp"
#include "pav/rng.hpp"

namespace pav {

/// Row lengths of a Young diagram, weakly decreasing and positive.
using Shape = std::vector<int>;
/// A standard Young tableau stored by rows.
using Tableau = std::vector<std::vector<int>>;

bool is_valid_shape(const Shape& shape);
bool is_standard_tableau(const Tableau& tab);

/// All partitions of n with every part <= max_part, i.e. shapes of width
/// at most max_part.
std::vector<Shape> shapes_bounded_width(int n, int max_part);

/// Number of standard Young tableaux of the given shape, by the hook length
/// formula n! / prod(hooks), exact.
Count syt_count(const Shape& shape);

/// syt_count with a memo, for samplers that query many nearby shapes.
class SytCounter {
public:
    const Count& operator()(const Shape& shape);

private:
    std::map<Shape, Count> memo_;
};

/// Robinson-Schensted row insertion: sigma -> (P, Q) of common shape;
/// the length of the first row of P equals lis_length(sigma).
std::pair<Tableau, Tableau> rsk(const Permutation& sigma);

/// Inverse of rsk via reverse bumping from the recording tableau.
Permutation inverse_rsk(const Tableau& p, const Tableau& q);

/// Uniform standard Young tableau by recursive corner peeling: entry m goes
/// to corner c with probability syt_count(shape minus c) / syt_count(shape),
/// drawn exactly with integer weights.
Tableau sample_syt(const Shape& shape, Rng& rng, SytCounter& counter);

}  // namespace pav
