#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "amoebakit/lpoly.hpp"

using namespace amoebakit;

namespace {

const char* kCounterexample = "-z*w^2 + z^3*w - 7*z*w + 6*w + z";

// Independent oracle: p is extreme iff some direction makes it the unique maximizer.
std::set<ExponentVector> brute_vertices(const std::vector<ExponentVector>& raw) {
    const std::set<ExponentVector> unique(raw.begin(), raw.end());
    const std::vector<ExponentVector> pts(unique.begin(), unique.end());
    std::set<ExponentVector> out;
    for (int k = 0; k < 3600; ++k) {
        const double a = 2.0 * M_PI * (k + 0.37) / 3600.0;
        const double ux = std::cos(a), uy = std::sin(a);
        double best = -1e300;
        int arg = -1, count = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double v = ux * pts[i][0] + uy * pts[i][1];
            if (v > best + 1e-12) {
                best = v;
                arg = static_cast<int>(i);
                count = 1;
            } else if (std::abs(v - best) <= 1e-12) {
                ++count;
            }
        }
        if (count == 1) out.insert(pts[arg]);
    }
    return out;
}

}  // namespace

TEST_CASE("parse: counterexample polynomial and trivial forms") {
    const auto f = parse_polynomial(kCounterexample);
    CHECK(f.dimension() == 2);
    CHECK(f.size() == 5);
    CHECK(f.coefficient({1, 1}) == Complex(-7, 0));
    CHECK(f.coefficient({1, 2}) == Complex(-1, 0));
    CHECK(f.coefficient({3, 1}) == Complex(1, 0));

    const auto g = parse_polynomial("1 + z + w");
    CHECK(g.size() == 3);
    for (const auto& [e, c] : g.terms()) CHECK(c == Complex(1, 0));

    CHECK_THROWS_AS(parse_polynomial("z - z"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("z + * w"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("z^-1 + w"), ParseError);
    CHECK_NOTHROW(parse_polynomial("z^-1 + w", {.allow_negative_exponents = true}));
}

TEST_CASE("parse: complex literals, rationals, z1..zn") {
    const auto f = parse_polynomial("(1+2i)*z1^2*z3 - 1/2*z2");
    CHECK(f.dimension() == 3);
    CHECK(f.coefficient({2, 0, 1}) == Complex(1, 2));
    CHECK(f.coefficient({0, 1, 0}) == Complex(-0.5, 0));
    const auto g = parse_polynomial("z + w + (1/2)*z*w + z^2*w^2");
    CHECK(g.coefficient({1, 1}) == Complex(0.5, 0));
    CHECK(g.coefficient({2, 2}) == Complex(1, 0));
}

TEST_CASE("parse: to_string round trip") {
    const auto f = parse_polynomial(kCounterexample);
    CHECK(parse_polynomial(f.to_string()) == f);
    const auto g = parse_polynomial("(0.5-1.25i)*z*w + 3*w^4 - 2");
    CHECK(parse_polynomial(g.to_string()) == g);
}

TEST_CASE("parse: error position is reported") {
    try {
        parse_polynomial("1 + z + q");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 8);
    }
}

TEST_CASE("newton polytope: counterexample polygon against direction oracle") {
    const auto f = parse_polynomial(kCounterexample);
    const auto P = newton_polytope(f);
    const std::vector<ExponentVector> expect{{0, 1}, {1, 0}, {3, 1}, {1, 2}};
    CHECK(P.vertices == expect);
    const auto brute = brute_vertices(f.support());
    CHECK(std::set<ExponentVector>(P.vertices.begin(), P.vertices.end()) == brute);
    const std::vector<ExponentVector> lp{{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {3, 1}};
    CHECK(lattice_points(P) == lp);
    CHECK_FALSE(is_maximally_sparse(f));
}

TEST_CASE("newton polytope: simplex, monomial, segment") {
    const auto P = newton_polytope(parse_polynomial("1 + z + w"));
    CHECK(P.vertices == std::vector<ExponentVector>{{0, 0}, {1, 0}, {0, 1}});
    CHECK(P.lattice_points == std::vector<ExponentVector>{{0, 0}, {0, 1}, {1, 0}});
    CHECK(is_maximally_sparse(parse_polynomial("1 + z + w")));

    const auto M = newton_polytope(parse_polynomial("6*w"));
    CHECK(M.vertices == std::vector<ExponentVector>{{0, 1}});
    CHECK(M.affine_dimension() == 0);

    const auto S = newton_polytope(parse_polynomial("1 + z^3"));
    CHECK(S.lattice_points.size() == 4);
    CHECK(S.affine_dimension() == 1);
    CHECK_FALSE(is_maximally_sparse(parse_polynomial("1 + z + z^2")));
}

TEST_CASE("maximal sparsity: interior point (1,1) of conv{(1,0),(0,1),(2,2)}") {
    CHECK_FALSE(is_maximally_sparse(parse_polynomial("z + w + (1/2)*z*w + z^2*w^2")));
    CHECK(is_maximally_sparse(parse_polynomial("z + w + z^2*w^2")));
}

TEST_CASE("property: hull invariants on random supports") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coord(-6, 6), count(1, 9);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<ExponentVector> pts;
        const int m = count(rng);
        for (int i = 0; i < m; ++i) pts.push_back({coord(rng), coord(rng)});
        const auto P = convex_hull(2, pts);
        for (const auto& p : pts) CHECK(P.contains(p));
        // idempotence
        const auto Q = convex_hull(2, P.vertices);
        CHECK(Q.vertices == P.vertices);
        // lattice points by independent half-plane scan over the box
        if (P.affine_dimension() == 2) {
            CHECK(std::set<ExponentVector>(P.vertices.begin(), P.vertices.end()) == brute_vertices(pts));
            std::size_t n = 0;
            for (int x = -6; x <= 6; ++x)
                for (int y = -6; y <= 6; ++y) {
                    bool inside = true;
                    const auto& V = P.vertices;
                    for (std::size_t k = 0; k < V.size(); ++k) {
                        const auto& a = V[k];
                        const auto& b = V[(k + 1) % V.size()];
                        if ((b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]) < 0) inside = false;
                    }
                    n += inside;
                }
            CHECK(P.lattice_points.size() == n);
        }
    }
}

TEST_CASE("three-dimensional hull and lattice points") {
    const std::vector<ExponentVector> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}};
    const auto P = convex_hull(3, pts);
    CHECK(P.vertices.size() == 4);
    CHECK(P.lattice_points.size() == 4);
    const std::vector<ExponentVector> cube{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {2, 2, 0},
                                           {2, 0, 2}, {0, 2, 2}, {2, 2, 2}, {1, 1, 1}};
    const auto C = convex_hull(3, cube);
    CHECK(C.vertices.size() == 8);
    CHECK(C.lattice_points.size() == 27);
}

TEST_CASE("monomial factor stripping and evaluation") {
    const auto f = parse_polynomial("z^2*w + z^3*w^2");
    const auto g = strip_monomial_factor(f);
    CHECK(g == parse_polynomial("1 + z*w"));
    const auto h = parse_polynomial("1 + z + w");
    const std::vector<Complex> pt{Complex(2, 1), Complex(-1, 3)};
    CHECK(std::abs(h.evaluate(pt) - Complex(2, 4)) < 1e-15);
}

TEST_CASE("exponent bounds are enforced") {
    CHECK_THROWS(parse_polynomial("z^2000000 + 1"));
}
