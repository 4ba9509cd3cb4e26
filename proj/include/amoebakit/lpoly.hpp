#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace amoebakit {

using Complex = std::complex<double>;

/// Integer exponent vector of a monomial. Entries may be negative (Laurent terms).
using ExponentVector = std::vector<std::int64_t>;

/// Exponent entries are bounded so that all hull predicates fit in 128-bit integers.
inline constexpr std::int64_t kMaxExponent = std::int64_t{1} << 20;

/// Finite sum of complex multiples of monomials on the torus (C*)^n.
///
/// Every stored coefficient is nonzero, there is at least one term, and all
/// exponent vectors share the polynomial's dimension.
class LaurentPolynomial {
public:
    using TermMap = std::map<ExponentVector, Complex>;

    LaurentPolynomial(std::size_t dimension, TermMap terms);

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    std::vector<ExponentVector> support() const;
    Complex coefficient(const ExponentVector& alpha) const;
    Complex evaluate(std::span<const Complex> z) const;

    /// Text form accepted by parse_polynomial (variables z,w for n = 2, z1..zn otherwise).
    std::string to_string() const;

    bool operator==(const LaurentPolynomial&) const = default;

private:
    std::size_t dimension_;
    TermMap terms_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

struct ParseOptions {
    bool allow_negative_exponents = false;
    /// 0 infers the dimension from the variable names (z,w means 2).
    std::size_t dimension = 0;
};

/// Parses a signed term list such as "-z*w^2 + z^3*w - 7*z*w + 6*w + z" or "(1+2i)*z1^2*z3".
/// Equal monomials are summed and cancelled terms dropped.
LaurentPolynomial parse_polynomial(std::string_view text, const ParseOptions& options = {});

/// Shifts the support so that every coordinate has minimum exponent 0, i.e. divides out
/// the largest monomial factor z^beta. Returns the polynomial unchanged if no shift applies.
LaurentPolynomial strip_monomial_factor(const LaurentPolynomial& f);

/// Convex hull of a finite lattice point set.
struct NewtonPolytope {
    std::size_t dimension = 0;
    /// Extreme points; counterclockwise from the lexicographic minimum when dimension == 2,
    /// lexicographically sorted otherwise.
    std::vector<ExponentVector> vertices;
    /// Every integer point of the hull, sorted lexicographically (filled for dimension <= 3).
    std::vector<ExponentVector> lattice_points;

    /// Affine dimension of the hull (0 point, 1 segment, ...).
    int affine_dimension() const;
    bool contains(const ExponentVector& p) const;
};

NewtonPolytope convex_hull(std::size_t dimension, std::span<const ExponentVector> points);
NewtonPolytope newton_polytope(const LaurentPolynomial& f);

/// Integer points of the polytope, sorted lexicographically. Supported for dimension <= 3.
std::vector<ExponentVector> lattice_points(const NewtonPolytope& polytope);

/// True iff the support equals the vertex set of the Newton polytope.
bool is_maximally_sparse(const LaurentPolynomial& f);

/// Exact membership of p in the convex hull of points (dimension <= 3).
bool in_convex_hull(std::span<const ExponentVector> points, const ExponentVector& p);

/// Twice the area (n = 2) of the polygon given by counterclockwise vertices.
std::int64_t twice_area(std::span<const ExponentVector> ccw_vertices);

/// Lattice length of the segment a-b: gcd of the coordinate differences.
std::int64_t lattice_length(const ExponentVector& a, const ExponentVector& b);

}  // namespace amoebakit
