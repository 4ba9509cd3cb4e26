#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "amoebakit/lpoly.hpp"

namespace amoebakit {

/// Max-plus polynomial x -> max_alpha (coeff(alpha) + <alpha, x>).
class TropicalPolynomial {
public:
    using TermMap = std::map<ExponentVector, double>;

    TropicalPolynomial(std::size_t dimension, TermMap terms);

    std::size_t dimension() const { return dimension_; }
    const TermMap& terms() const { return terms_; }
    std::vector<ExponentVector> support() const;

private:
    std::size_t dimension_;
    TermMap terms_;
};

/// Tropical polynomial with coefficients log|a_alpha|.
TropicalPolynomial tropicalize(const LaurentPolynomial& f);

struct TropicalValue {
    double value = 0.0;
    std::vector<ExponentVector> argmax;
};

/// Relative tie tolerance used when reporting argmax sets.
inline constexpr double kTieTolerance = 1e-9;

TropicalValue trop_eval(const TropicalPolynomial& g, std::span<const double> x);

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

using IntVec2 = std::array<std::int64_t, 2>;
using Point2 = std::array<double, 2>;

enum class EdgeKind { segment, ray, line };

struct CurveEdge {
    EdgeKind kind = EdgeKind::segment;
    /// Segment: from -> to. Ray: from is the apex. Line: both kNoIndex.
    std::size_t from = kNoIndex;
    std::size_t to = kNoIndex;
    /// Primitive integer direction (from -> to for segments, outgoing for rays).
    IntVec2 direction{0, 0};
    /// A point on the edge's line; only meaningful for lines.
    Point2 anchor{0.0, 0.0};
    std::int64_t weight = 1;
    /// The two exponents whose tie defines the edge (endpoints of the dual subdivision edge).
    std::array<ExponentVector, 2> dual_pair;
};

/// Corner locus of a bivariate tropical polynomial.
struct TropicalCurve {
    std::vector<Point2> vertices;
    std::vector<CurveEdge> edges;
};

struct SubdivisionCell {
    /// Counterclockwise for 2-cells, the two endpoints for 1-cells, one point for 0-cells.
    std::vector<ExponentVector> vertices;
    /// All support points whose lift lies on this cell's face of the upper hull.
    std::vector<ExponentVector> points;
    /// Face of the upper hull over the cell: lift(alpha) = <slope, alpha> + offset.
    Point2 slope{0.0, 0.0};
    double offset = 0.0;
    /// Dual vertex of the tropical curve (2-cells only).
    std::size_t curve_vertex = kNoIndex;
};

struct SubdivisionEdge {
    ExponentVector a, b;
    /// One cell for boundary edges of the polytope, two for interior edges.
    std::vector<std::size_t> cells;
    std::int64_t lattice_length = 1;
    /// Dual edge of the tropical curve (kNoIndex for diagonals added by triangulation).
    std::size_t curve_edge = kNoIndex;
};

/// Regular subdivision of the Newton polygon induced by the upper hull of lifted coefficients.
struct DualSubdivision {
    /// 2 for a full-dimensional support, 1 for a collinear support, 0 for a single point.
    int cell_dimension = 2;
    std::vector<SubdivisionCell> cells;
    std::vector<SubdivisionEdge> edges;

    /// Union of cell vertices (upper hull vertices), sorted.
    std::vector<ExponentVector> vertices() const;
    /// Index of a maximal cell containing alpha, or kNoIndex.
    std::size_t locate(const ExponentVector& alpha) const;
};

struct SubdivisionOptions {
    /// Coefficients are snapped to integers at 2^-snap_bits before exact hull predicates.
    int snap_bits = 40;
    /// Refine polygonal cells into a fan triangulation; the dual curve is unaffected.
    bool triangulate = false;
};

DualSubdivision dual_subdivision(const TropicalPolynomial& g, const SubdivisionOptions& options = {});

/// Corner locus, with integer weights equal to lattice lengths of the dual edges.
TropicalCurve corner_locus(const TropicalPolynomial& g, const SubdivisionOptions& options = {});

/// Both objects from a single hull computation; curve indices match the subdivision incidences.
struct TropicalDual {
    TropicalCurve curve;
    DualSubdivision subdivision;
};
TropicalDual tropical_dual(const TropicalPolynomial& g, const SubdivisionOptions& options = {});

struct BalancingViolation {
    std::size_t vertex;
    IntVec2 imbalance;
};

struct BalancingReport {
    bool balanced = true;
    std::vector<BalancingViolation> violations;
};

/// Exact integer check that the weighted primitive directions at each vertex sum to zero.
BalancingReport balancing_check(const TropicalCurve& curve);

/// True iff the upper-hull vertex set of g equals the vertex set of the polytope.
bool solid_tropical(const TropicalPolynomial& g, const NewtonPolytope& polytope,
                    const SubdivisionOptions& options = {});

/// Distance from x to the curve (rays and lines treated as unbounded).
double distance_to_curve(const TropicalCurve& curve, const Point2& x);

/// Points on the curve clipped to the box [lo, hi], spaced at most `spacing` apart.
std::vector<Point2> sample_curve(const TropicalCurve& curve, const Point2& lo, const Point2& hi,
                                 double spacing);

/// Total length of bounded edges.
double bounded_length(const TropicalCurve& curve);

}  // namespace amoebakit
