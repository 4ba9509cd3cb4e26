#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "amoebakit/amoeba.hpp"
#include "amoebakit/trop.hpp"

namespace amoebakit {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Richardson certificate threshold between quad_n and 2 quad_n.
inline constexpr double kRichardsonTolerance = 1e-6;

struct RonkinEstimate {
    double value = 0.0;   // fine grid (2 quad_n)
    double coarse = 0.0;  // quad_n
    double difference() const { return value - coarse; }
};

/// Mean of log|f| over the torus fiber Log^{-1}(x), by the trapezoidal rule on an n x n grid.
double torus_mean_log(const LaurentPolynomial& f, const Point2& x, int n, Execution exec = Execution::parallel);

/// Mean of log|f(z) / z^alpha| over Log^{-1}(x), i.e. the Ronkin function minus <alpha, x>.
/// Requires x in the complement component of order alpha (checked with order_of_point) and
/// quad_n >= 64; throws QuadratureError if the Richardson difference exceeds 1e-6.
RonkinEstimate c_alpha(const LaurentPolynomial& f, const ExponentVector& alpha, const Point2& x, int quad_n = 256,
                       const FiberSolveConfig& cfg = {});

struct SpineModel {
    std::vector<ExponentVector> orders_present;
    std::map<ExponentVector, double> c;
    TropicalCurve spine;
    DualSubdivision subdivision;

    TropicalPolynomial tropical() const { return TropicalPolynomial(2, {c.begin(), c.end()}); }
};

SpineModel build_spine(const LaurentPolynomial& f, const ComponentReport& report, int quad_n = 256,
                       const FiberSolveConfig& cfg = {});

/// Values of the piecewise-affine function nu on all lattice points of the polytope.
struct PRFunction {
    std::map<ExponentVector, double> values;
};

/// nu = -c on vertices of the subdivision; elsewhere the value of the maximal cell's
/// plane through the points (alpha, -c_alpha).
PRFunction pr_function(const SpineModel& spine, const NewtonPolytope& polytope);

struct DeformationFamily {
    LaurentPolynomial base;
    PRFunction nu;
    /// xi_alpha = a_alpha e^{nu(alpha)}
    LaurentPolynomial::TermMap xi;
    /// Decreasing, inside (0, 1/e].
    std::vector<double> t_schedule;
};

/// Default schedule {e^-1, e^-2, e^-3, e^-4}.
std::vector<double> default_t_schedule();

DeformationFamily make_family(const LaurentPolynomial& f, const PRFunction& nu,
                              std::vector<double> t_schedule = default_t_schedule());

/// Polynomial with coefficients xi_alpha t^{nu(alpha)}; t must lie in (0, 1/e].
LaurentPolynomial instantiate_family(const DeformationFamily& fam, double t);

}  // namespace amoebakit
