#include "amoebakit/random_poly.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace amoebakit {

LaurentPolynomial random_sparse_polynomial(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count(3, 6), coord(0, 5);
    std::uniform_real_distribution<double> r2(0.25, 4.0), phase(-std::numbers::pi, std::numbers::pi);
    for (;;) {
        const int k = count(rng);
        std::set<ExponentVector> pts;
        while (static_cast<int>(pts.size()) < k) pts.insert({coord(rng), coord(rng)});
        const std::vector<ExponentVector> drawn(pts.begin(), pts.end());
        const auto hull = convex_hull(2, drawn);
        if (hull.affine_dimension() < 2) continue;
        LaurentPolynomial::TermMap terms;
        for (const auto& v : hull.vertices) terms[v] = std::polar(std::sqrt(r2(rng)), phase(rng));
        return LaurentPolynomial(2, std::move(terms));
    }
}

std::vector<LaurentPolynomial> random_sparse_batch(std::size_t count, std::uint64_t seed) {
    std::vector<LaurentPolynomial> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_sparse_polynomial(seed * 1000003ull + i));
    return out;
}

}  // namespace amoebakit
