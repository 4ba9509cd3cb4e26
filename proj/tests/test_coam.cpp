#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "amoebakit/coam.hpp"

using namespace amoebakit;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

LaurentPolynomial P(const char* s) { return parse_polynomial(s, {.allow_negative_exponents = true}); }

double wrap_signed(double a) { return std::remainder(a, 2 * kPi); }

// 1 + z_1 + ... + z_n = 0 has a solution with these arguments iff -1 lies in the open
// positive cone of the unit vectors e^{i theta_l}, iff some pair has pi strictly inside
// the short arc between them. Returns nullopt within `margin` of the boundary.
std::optional<bool> hyperplane_oracle(std::span<const double> theta, double margin = 1e-9) {
    std::vector<double> phi;
    for (const double t : theta) phi.push_back(wrap_signed(t - kPi));
    bool inside = false, near = false;
    for (std::size_t l = 0; l < phi.size(); ++l) {
        if (std::abs(phi[l]) < margin || std::abs(std::abs(phi[l]) - kPi) < margin) near = true;
        for (std::size_t m = l + 1; m < phi.size(); ++m) {
            const double lo = std::min(phi[l], phi[m]), hi = std::max(phi[l], phi[m]);
            if (std::abs(hi - lo - kPi) < margin) near = true;
            if (lo < 0 && hi > 0 && hi - lo < kPi) inside = true;
        }
    }
    if (near) return std::nullopt;
    return inside;
}

// Analytic coamoeba of a trinomial a0 z^b0 + a1 z^b1 + a2 z^b2 on a grid:
// divide by the first term and reduce to 1 + u + v.
Grid trinomial_oracle_grid(const LaurentPolynomial& f, std::size_t res) {
    std::vector<std::pair<ExponentVector, Complex>> t(f.terms().begin(), f.terms().end());
    REQUIRE(t.size() == 3);
    Grid g(res, res);
    for (std::size_t r = 0; r < res; ++r)
        for (std::size_t c = 0; c < res; ++c) {
            const double th[2] = {(c + 0.5) * 2 * kPi / res, (r + 0.5) * 2 * kPi / res};
            double uv[2];
            for (int k = 0; k < 2; ++k) {
                const auto& [b, a] = t[k + 1];
                uv[k] = (b[0] - t[0].first[0]) * th[0] + (b[1] - t[0].first[1]) * th[1] + std::arg(a / t[0].second);
            }
            g.at(r, c) = hyperplane_oracle(uv, 0.0).value_or(true);
        }
    return g;
}

std::size_t mismatches(const Grid& a, const Grid& b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] != 0) != (b[i] != 0);
    return n;
}

}  // namespace

TEST_CASE("raster_volume of full and empty grids") {
    CoamoebaRaster r{128, 128, Grid(128, 128), 0};
    CHECK(raster_volume(r) == 0.0);
    r.occupancy = Grid(128, 128, 1);
    CHECK(raster_volume(r) == doctest::Approx(4 * kPi2).epsilon(1e-15));
}

TEST_CASE("standard model volumes and formula") {
    for (int n : {2, 3}) {
        const double formula = (n - 1) * (std::pow(2.0, n) - 2) * std::pow(kPi, n) / n;
        CHECK(standard_volume_formula(n) == doctest::Approx(formula).epsilon(1e-15));
        const auto m = standard_model(n);
        CHECK(m.polyhedra.size() == (std::size_t{1} << n) - 2);
        CHECK(m.volume() == doctest::Approx(formula).epsilon(1e-12));
    }
    CHECK(standard_model(2).volume() == doctest::Approx(kPi2).epsilon(1e-12));
    CHECK(standard_model(3).volume() == doctest::Approx(4 * kPi * kPi2).epsilon(1e-12));
    CHECK_THROWS_AS(standard_model(1), std::invalid_argument);
    CHECK_THROWS_AS(standard_model(4), std::invalid_argument);

    const auto r = rasterize_model(standard_model(2), 512);
    CHECK(std::abs(raster_volume(r) - kPi2) <= 0.02 * kPi2);
    CHECK(std::abs(monte_carlo_volume(standard_model(3), 400000, 7) - 4 * kPi * kPi2) <= 0.05 * 4 * kPi * kPi2);
}

TEST_CASE("standard model membership agrees with the positive-cone oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    for (int n : {2, 3}) {
        const auto m = standard_model(n);
        int checked = 0;
        for (int i = 0; i < 20000; ++i) {
            std::vector<double> th(n);
            for (auto& t : th) t = u(rng);
            const auto want = hyperplane_oracle(th, 1e-7);
            if (!want) continue;
            CHECK(m.contains(th) == *want);
            ++checked;
        }
        CHECK(checked > 19000);
    }
}

TEST_CASE("standard model is closed: boundary points belong to it") {
    const auto m = standard_model(2);
    for (const std::vector<double> th : {std::vector<double>{kPi / 2, kPi}, {kPi, kPi / 2}, {3 * kPi / 2, kPi}, {0.0, kPi}})
        CHECK(m.contains(th));
    CHECK(!m.contains(std::vector<double>{kPi / 2, kPi / 2}));
}

TEST_CASE("standard model piece counts after removing the real hyperplanes") {
    CHECK(model_piece_count(standard_model(2), 256) == 2);
    CHECK(model_piece_count(standard_model(3), 64) == 6);
}

TEST_CASE("standard model matches the sampled coamoeba of 1+z+w") {
    const std::size_t res = 256;
    const auto model = rasterize_model(standard_model(2), res);
    // brute-force sampling of points of the line in three charts: z free, w free, z/w free
    Grid sampled(res, res);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> x(-12.0, 12.0), t(0.0, 2 * kPi);
    auto mark = [&](Complex z, Complex w) {
        const double a = std::arg(z) < 0 ? std::arg(z) + 2 * kPi : std::arg(z);
        const double b = std::arg(w) < 0 ? std::arg(w) + 2 * kPi : std::arg(w);
        sampled.at(std::min<std::size_t>(res - 1, b / (2 * kPi) * res), std::min<std::size_t>(res - 1, a / (2 * kPi) * res)) = 1;
    };
    for (int i = 0; i < 1000000; ++i) {
        const Complex s = std::polar(std::exp(x(rng)), t(rng));
        mark(s, -1.0 - s);
        mark(-1.0 - s, s);
        const Complex w = -1.0 / (1.0 + s);
        mark(s * w, w);
    }
    CHECK(pixel_hausdorff(model.occupancy, sampled, true) <= 2.0);
}

TEST_CASE("rasterize_coamoeba examples") {
    SUBCASE("1+z+w: area pi^2 within 5%, set distance to the analytic oracle within 2 pixels") {
        const auto f = P("1+z+w");
        const auto r = rasterize_coamoeba(f, 256);
        CHECK(std::abs(raster_volume(r) - kPi2) <= 0.05 * kPi2);
        CHECK(pixel_hausdorff(r.occupancy, trinomial_oracle_grid(f, 256), true) <= 2.0);
        CHECK(r.samples_used > 0);
    }
    SUBCASE("z - w: the diagonal circle, area shrinking with resolution") {
        const auto f = P("z - w");
        const auto a = rasterize_coamoeba(f, 128), b = rasterize_coamoeba(f, 256);
        CHECK(raster_volume(b) < raster_volume(a));
        CHECK(raster_volume(b) < 0.1 * kPi2);
        for (std::size_t r = 0; r < 256; ++r)
            for (std::size_t c = 0; c < 256; ++c)
                if (b.occupancy.at(r, c)) CHECK(std::abs(wrap_signed((static_cast<double>(r) - c) * 2 * kPi / 256)) <= 3 * 2 * kPi / 256);
    }
    SUBCASE("w z^3 + z^2 w^3 + 1: area pi^2 within 5% at 512") {
        const auto r = rasterize_coamoeba(P("w*z^3 + z^2*w^3 + 1"), 512);
        CHECK(std::abs(raster_volume(r) - kPi2) <= 0.05 * kPi2);
    }
    SUBCASE("resolution below the minimum is rejected") {
        CHECK_THROWS_AS(rasterize_coamoeba(P("1+z+w"), 64), std::invalid_argument);
    }
}

TEST_CASE("rasterize_coamoeba: serial and parallel agree") {
    const auto f = P("z + w + 0.5*z*w + z^2*w^2");
    CHECK(rasterize_coamoeba(f, 160, {}, Execution::serial).occupancy == rasterize_coamoeba(f, 160, {}, Execution::parallel).occupancy);
}

TEST_CASE("unimodular transforms") {
    const auto model = standard_model(2);
    SUBCASE("identity reproduces the model raster") {
        const auto T = transform_from_inverse({{1, 0}, {0, 1}}, 1);
        CHECK(T.determinant() == 1);
        CHECK(transform_coamoeba(model, T, 256).occupancy == rasterize_model(model, 256).occupancy);
    }
    SUBCASE("tL1 and tL2 preserve volume within 3%") {
        const auto T1 = transform_from_inverse({{3, -1}, {-2, 3}}, 7);
        const auto T2 = transform_from_inverse({{1, 1}, {-2, 1}}, 3);
        CHECK(T1.tL == std::vector<std::vector<std::int64_t>>{{3, 1}, {2, 3}});
        CHECK(T2.tL == std::vector<std::vector<std::int64_t>>{{1, -1}, {2, 1}});
        CHECK(T1.determinant() == 7);
        CHECK(T2.determinant() == 3);
        const double base = raster_volume(rasterize_model(model, 512));
        for (const auto* T : {&T1, &T2}) CHECK(std::abs(raster_volume(transform_coamoeba(model, *T, 512)) - base) <= 0.03 * base);
    }
    SUBCASE("non-integral or singular inverses are rejected") {
        CHECK_THROWS_AS(transform_from_inverse({{1, 1}, {1, 1}}, 1), std::invalid_argument);
        CHECK_THROWS_AS(transform_from_inverse({{2, 0}, {0, 3}}, 1), std::invalid_argument);
        CHECK_THROWS_AS(transform_from_inverse({{1, 0}, {0, 1}}, 0), std::invalid_argument);
    }
    SUBCASE("tL1 image matches the sampled coamoeba of w z^3 + z^2 w^3 + 1") {
        const auto f = P("w*z^3 + z^2*w^3 + 1");
        const auto img = transform_coamoeba(model, transform_from_inverse({{3, -1}, {-2, 3}}, 7), 256);
        CHECK(pixel_hausdorff(img.occupancy, rasterize_coamoeba(f, 256).occupancy, true) <= 3.0);
    }
    SUBCASE("trinomial transforms agree with the analytic oracle, including coefficient arguments") {
        for (const char* s : {"w*z^3 + z^2*w^3 + 1", "z + w + z^2*w^2", "(0.3+2i) + (-1-0.5i)*z^2*w + (1i)*w^3", "2 - 3*z*w^-1 + (1+1i)*z^-1*w^2"}) {
            CAPTURE(s);
            const auto f = P(s);
            const auto T = trinomial_transform(f);
            CHECK(T.determinant() > 0);
            const auto img = transform_coamoeba(model, T, 256);
            const auto oracle = trinomial_oracle_grid(f, 256);
            CHECK(mismatches(img.occupancy, oracle) <= 0.01 * img.occupancy.size());
            CHECK(pixel_hausdorff(img.occupancy, oracle, true) <= 1.5);
        }
    }
    SUBCASE("trinomial_transform needs three terms") {
        CHECK_THROWS_AS(trinomial_transform(P("1+z")), std::invalid_argument);
    }
}

TEST_CASE("extra-piece detector") {
    const std::size_t res = 256;
    const auto s = rasterize_coamoeba(P("z + w + z^2*w^2"), res);
    SUBCASE("self comparison is empty") {
        const auto rep = extra_piece_report(s, s);
        CHECK(rep.piece_count == 0);
        CHECK(rep.extra_area == 0.0);
    }
    SUBCASE("two sample counts of one curve differ by less than 1% of pi^2") {
        CoamoebaOptions coarse, fine;
        coarse.line_samples = 2 * res;
        fine.line_samples = 8 * res;
        const auto a = rasterize_coamoeba(P("z + w + z^2*w^2"), res, coarse);
        const auto b = rasterize_coamoeba(P("z + w + z^2*w^2"), res, fine);
        CHECK(extra_piece_report(a, b).extra_area < 0.01 * kPi2);
        CHECK(extra_piece_report(b, a).extra_area < 0.01 * kPi2);
    }
    SUBCASE("a maximally sparse trinomial has no pieces beyond its transformed model") {
        for (const char* t : {"z + w + z^2*w^2", "w*z^3 + z^2*w^3 + 1"}) {
            CAPTURE(t);
            const auto f = P(t);
            const auto pred = transform_coamoeba(standard_model(2), trinomial_transform(f), res);
            CHECK(extra_piece_report(pred, rasterize_coamoeba(f, res)).piece_count == 0);
        }
    }
    SUBCASE("resolution mismatch is rejected") {
        CHECK_THROWS_AS(extra_piece_report(s, rasterize_coamoeba(P("z + w + z^2*w^2"), 128)), std::invalid_argument);
    }
}
