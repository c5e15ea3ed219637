#pragma once

#include <iosfwd>
#include <vector>

#include <gmpxx.h>

namespace pav {

/// sqrt((v-u)^2 + 4cuv).
double rate_r(double u, double v, double c);

/// The rationalized factor 4cu / (2cu + (v-u) + r(u,v)). This equals the
/// quotient (2cu + (v-u) - r(u,v)) / (u(c-1)) for c > 1 and extends it
/// continuously to c = 1, where it becomes 2u/(u+v). Requires u, v > 0 and
/// c >= 1.
double eval_h(double u, double v, double c);

/// g(x,y;c) = eval_h(x,y,c)^(-x), evaluated in log space.
/// Requires x, y in (0,1) and c >= 1.
double eval_g(double x, double y, double c);

/// ln of the rate function; eval_G = exp(ln_G).
/// G(u,v;c) = 4c g(u,v;c) g(v,u;c) g(1-u,1-v;c) g(1-v,1-u;c); symmetric in
/// (u,v), maximized on the diagonal where it equals (sqrt(c)+1)^2.
double ln_G(double u, double v, double c);
double eval_G(double u, double v, double c);

/// The unique maximizer of f(.;a,b,c) on [0, min(a,b)], in the rationalized
/// form 2ab / (sqrt((a+b)^2 + 4(c-1)ab) + (a+b)), continuous at c = 1 where
/// it equals ab/(a+b). Satisfies (a-y*)(b-y*) = c y*^2. Requires a, b > 0,
/// c >= 1.
double ystar(double a, double b, double c);

/// f(y;a,b,c) = (y/a)^(-y) (1-y/a)^(y-a) (y/b)^(-y) (1-y/b)^(y-b) c^(-y)
/// on [0, min(a,b)], with 0^0 = 1 at the endpoints. Requires a, b > 0 and
/// c > 1.
double ln_f(double y, double a, double b, double c);
double eval_f(double y, double a, double b, double c);

/// H(a,b;c) = sum_{n=0}^{a} binom(a,n) binom(b,n) c^(-n), compensated
/// floating sum. Requires 0 <= a <= b and c >= 1.
double eval_H(int a, int b, double c);
/// Exact rational evaluation of the same sum.
mpq_class eval_H_exact(int a, int b, const mpq_class& c);

/// Closed-form d/du ln G(u,v;c) = ln h(1-u,1-v) - ln h(u,v).
/// Zero on the diagonal u = v. Requires c > 1.
double dlnG_du(double u, double v, double c);

/// Closed-form d^2/du^2 ln G(u,v;c) = -v/(u r(u,v)) - (1-v)/((1-u) r(1-u,1-v)).
/// Strictly negative on (0,1)^2. Requires c > 1.
double d2lnG_du2(double u, double v, double c);

struct GridPoint {
    double u, v, g;
};

/// resolution x resolution interior grid points u,v = i/(resolution+1) with
/// eval_G values, for contour plotting. Requires resolution >= 2.
std::vector<GridPoint> level_grid(double c, int resolution);

/// CSV with header "u,v,G", 12 significant digits.
void write_level_grid_csv(std::ostream& out, double c, int resolution);

}  // namespace pav
