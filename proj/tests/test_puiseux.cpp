#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "amoebakit/json_io.hpp"
#include "amoebakit/puiseux.hpp"
#include "amoebakit/roots.hpp"

using namespace amoebakit;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

PuiseuxScalar random_scalar(std::mt19937_64& rng, bool half_integer) {
    std::uniform_int_distribution<int> count(1, 4), half(-10, 10);
    std::uniform_real_distribution<double> e(-5.0, 5.0), c(-2.0, 2.0);
    std::vector<PuiseuxScalar::Term> terms;
    const int n = count(rng);
    while (static_cast<int>(terms.size()) < n) {
        const double x = half_integer ? half(rng) / 2.0 : e(rng);
        if (std::any_of(terms.begin(), terms.end(), [&](const auto& t) { return t.exponent == x; })) continue;
        Complex a{c(rng), c(rng)};
        if (std::abs(a) < 0.05) continue;
        terms.push_back({x, a});
    }
    return PuiseuxScalar(terms);
}

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// every expected point has a distinct computed point within tol
bool same_multiset(std::vector<Complex> got, const std::vector<Complex>& want, double tol) {
    if (got.size() != want.size()) return false;
    for (const auto& w : want) {
        auto it = std::min_element(got.begin(), got.end(), [&](Complex a, Complex b) { return std::abs(a - w) < std::abs(b - w); });
        if (it == got.end() || !close(*it, w, tol)) return false;
        got.erase(it);
    }
    return true;
}

}  // namespace

TEST_CASE("PuiseuxScalar construction") {
    const PuiseuxScalar a({{1.0, 2.0}, {-2.0, 3.0}});
    REQUIRE(a.terms().size() == 2);
    CHECK(a.terms()[0].exponent == -2.0);
    CHECK(a.leading().coefficient == Complex(3.0));
    CHECK(PuiseuxScalar().is_zero());
    CHECK(PuiseuxScalar::monomial(0.0, 3.0).is_zero());
    CHECK_THROWS_AS(PuiseuxScalar({{1.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PuiseuxScalar({{kInf, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PuiseuxScalar().leading(), std::domain_error);
    // terms at or beyond the order are dropped
    CHECK(PuiseuxScalar({{0.0, 1.0}, {2.0, 1.0}}, 2.0).terms().size() == 1);
    CHECK_THROWS_AS(PuiseuxScalar({{3.0, 1.0}}, 2.0), TruncationExhausted);
}

TEST_CASE("val examples") {
    CHECK(val(PuiseuxScalar::monomial(1.0, 3.0)) == -3.0);
    CHECK(val(PuiseuxScalar({{-2.0, 3.0}, {1.0, 1.0}})) == 2.0);
    CHECK(val(PuiseuxScalar()) == -kInf);
}

TEST_CASE("w_map examples") {
    CHECK(close(w_map(PuiseuxScalar::monomial(-1.0, 1.0)), std::polar(std::exp(-1.0), kPi), 1e-15));
    CHECK(close(w_map(PuiseuxScalar({{-2.0, 3.0}, {1.0, 1.0}})), std::exp(2.0), 1e-15));
    CHECK(close(w_map(PuiseuxScalar::monomial({0.0, 1.0}, 0.0)), Complex(0.0, 1.0), 1e-15));
    CHECK_THROWS_AS(w_map(PuiseuxScalar()), std::domain_error);
}

TEST_CASE("W_map examples") {
    const auto tinv = PuiseuxScalar::monomial(1.0, -1.0);
    const auto p = W_map({tinv, tinv});
    REQUIRE(p.size() == 2);
    CHECK(close(p[0], std::exp(1.0), 1e-15));
    CHECK(close(p[1], std::exp(1.0), 1e-15));
    CHECK_THROWS_AS(W_map({PuiseuxScalar(), PuiseuxScalar::monomial(1.0, 1.0)}), std::domain_error);
}

TEST_CASE("arithmetic") {
    const auto a = PuiseuxScalar({{0.0, 1.0}, {1.0, 2.0}});
    const auto b = PuiseuxScalar({{0.0, -1.0}, {2.0, 5.0}});
    const auto s = a + b;
    REQUIRE(s.terms().size() == 2);
    CHECK(s.leading() == PuiseuxScalar::Term{1.0, 2.0});
    CHECK((a - a).is_zero());
    CHECK((-a).leading().coefficient == Complex(-1.0));

    const auto p = a * b;  // (1 + 2t)(-1 + 5t^2) = -1 - 2t + 5t^2 + 10t^3
    REQUIRE(p.terms().size() == 4);
    CHECK(p.terms()[1] == PuiseuxScalar::Term{1.0, -2.0});
    CHECK(p.terms()[3] == PuiseuxScalar::Term{3.0, 10.0});

    // rounding-level cancellation counts as exact
    CHECK((PuiseuxScalar::monomial(0.1, 0.0) + PuiseuxScalar::monomial(0.2, 0.0) - PuiseuxScalar::monomial(0.3, 0.0)).is_zero());
}

TEST_CASE("truncation orders propagate and exhaustion is reported") {
    const auto a = PuiseuxScalar({{0.0, 1.0}, {1.0, 2.0}}, 2.0);
    const auto b = PuiseuxScalar({{0.0, -1.0}, {1.0, -2.0}}, 3.0);
    CHECK_THROWS_AS(a + b, TruncationExhausted);
    const auto c = PuiseuxScalar({{0.0, -1.0}}, 1.5);
    const auto s = a + c;
    CHECK(s.order() == 1.5);
    CHECK(s.leading() == PuiseuxScalar::Term{1.0, 2.0});
    // (1 + 2t + O(t^2)) * (t + O(t^4)) = t + 2t^2 + O(t^3)
    const auto p = a * PuiseuxScalar({{1.0, 1.0}}, 4.0);
    CHECK(p.order() == 3.0);
    CHECK(p.terms().size() == 2);
    // exact zero plus exact zero is zero, not exhaustion
    CHECK((PuiseuxScalar() + PuiseuxScalar()).is_zero());
}

TEST_CASE("valuation axioms on random pairs") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 1000; ++i) {
        const bool half = i % 2 == 0;
        const auto a = random_scalar(rng, half), b = random_scalar(rng, half);
        CHECK(val(a * b) == val(a) + val(b));
        CHECK(val(a + b) <= std::max(val(a), val(b)));
        if (val(a) != val(b)) CHECK(val(a + b) == std::max(val(a), val(b)));
    }
}

TEST_CASE("|w(a)| = e^val(a) and the Log-W diagram") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_scalar(rng, false), b = random_scalar(rng, false);
        CHECK(std::abs(std::abs(w_map(a)) - std::exp(val(a))) <= 1e-12 * std::exp(val(a)));
        const auto p = W_map({a, b});
        CHECK(std::abs(std::log(std::abs(p[0])) - val(a)) <= 1e-12);
        CHECK(std::abs(std::log(std::abs(p[1])) - val(b)) <= 1e-12);
        CHECK(std::abs(std::arg(p[0]) - std::arg(a.leading().coefficient)) <= 1e-12);
    }
}

TEST_CASE("univariate_W_roots examples") {
    CHECK(same_multiset(univariate_W_roots(2, PuiseuxScalar::monomial(1.0, 0.0)), {Complex(0, 1), Complex(0, -1)}, 1e-15));
    CHECK(same_multiset(univariate_W_roots(1, PuiseuxScalar::monomial(1.0, -1.0)), {-std::exp(1.0)}, 1e-15));
    std::vector<Complex> cube;
    for (int l = 0; l < 3; ++l) cube.push_back(std::polar(1.0, (2 * l + 1) * kPi / 3));
    CHECK(same_multiset(univariate_W_roots(3, PuiseuxScalar::monomial(1.0, 0.0)), cube, 1e-15));
    CHECK_THROWS_AS(univariate_W_roots(0, PuiseuxScalar::monomial(1.0, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(univariate_W_roots(2, PuiseuxScalar()), std::domain_error);
}

TEST_CASE("univariate_W_roots agrees with leading-order root solving") {
    // A root of z^k + a0 over K has leading term c t^{e0/k} with c^k = -xi_0; W of it is
    // e^{-e0/k} c/|c|. The c are computed by the polynomial root solver.
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<int> kd(1, 7);
    for (int i = 0; i < 200; ++i) {
        const int k = kd(rng);
        const auto a0 = random_scalar(rng, false);
        const auto lead = a0.leading();
        std::vector<Complex> coeffs(k + 1, Complex{});
        coeffs[0] = lead.coefficient;
        coeffs[k] = 1.0;
        const auto roots = solve_univariate(coeffs).roots;
        std::vector<Complex> want;
        for (const auto c : roots) {
            want.push_back(std::exp(-lead.exponent / k) * c / std::abs(c));
            // the leading-term ansatz really cancels the leading term of a0
            PuiseuxScalar z = PuiseuxScalar::monomial(c, lead.exponent / k), zk = z;
            for (int j = 1; j < k; ++j) zk = zk * z;
            CHECK(zk.leading().exponent == doctest::Approx(lead.exponent).epsilon(1e-14));
            CHECK(close(zk.leading().coefficient, -lead.coefficient, 1e-9));
        }
        const auto got = univariate_W_roots(k, a0);
        CHECK(same_multiset(got, want, 1e-9));
        for (const auto& w : got) CHECK(std::abs(std::abs(w) - std::exp(val(a0) / k)) <= 1e-12 * std::exp(val(a0) / k));
    }
}

TEST_CASE("JSON round trip") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 50; ++i) {
        const auto a = random_scalar(rng, false);
        CHECK(puiseux_from_json(to_json(a)) == a);
        CHECK(puiseux_from_json(json::parse(to_json(a).dump())) == a);
    }
    const auto t = PuiseuxScalar({{0.5, Complex(1, -2)}}, 3.0);
    const auto j = to_json(t);
    CHECK(j["order"] == 3.0);
    CHECK(puiseux_from_json(j) == t);
    CHECK(to_json(PuiseuxScalar::monomial(1.0, 0.0))["order"].is_null());
}
