#include "amoebakit/coam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "amoebakit/detail/fiber_plan.hpp"
#include "amoebakit/detail/sweep.hpp"

namespace amoebakit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxRefine = 8;

double mod_two_pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

// One sweep line at fixed argument theta of the other variable; marks argument cells.
template <class Mark>
std::size_t coamoeba_line(detail::FiberPlan& plan, double theta, double x0, double x1, int samples,
                          const RootSolveConfig& rc, std::size_t n, Mark&& mark) {
    std::size_t used = 0;
    std::vector<Complex> roots;
    auto fiber = [&](double x, std::vector<Complex>& logs) {
        ++used;
        const auto p = plan.eval(x, theta);
        if (p.coefficients.empty() || !detail::solve_fiber(p, rc, roots)) return false;
        logs.clear();
        for (const auto& r : roots)
            if (r != Complex{}) logs.push_back(std::log(r));
        return true;
    };
    const double cells = static_cast<double>(n);
    const auto N = static_cast<std::int64_t>(n);
    auto segment = [&](Complex a, Complex b) {
        const double fa = mod_two_pi(a.imag()) / kTwoPi * cells;
        const double fb = fa + detail::wrap_angle(b.imag() - a.imag()) / kTwoPi * cells;
        const auto i0 = static_cast<std::int64_t>(std::floor(std::min(fa, fb)));
        const auto i1 = static_cast<std::int64_t>(std::floor(std::max(fa, fb)));
        for (std::int64_t i = i0; i <= i1; ++i) mark(static_cast<std::size_t>(((i % N) + N) % N));
    };
    detail::FiberTracer tracer(fiber, segment, 1.5 * kTwoPi / cells, kMaxRefine, true);
    tracer.run(x0, x1, samples, false);
    return used;
}

std::int64_t det_int(const std::vector<std::vector<std::int64_t>>& m) {
    if (m.size() == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (m.size() == 3)
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    throw std::invalid_argument("matrix dimension must be 2 or 3");
}

// Adjugate (transpose of the cofactor matrix).
std::vector<std::vector<std::int64_t>> adjugate(const std::vector<std::vector<std::int64_t>>& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<std::int64_t>> adj(n, std::vector<std::int64_t>(n));
    if (n == 2) {
        adj = {{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}};
        return adj;
    }
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    return adj;
}

std::vector<std::vector<double>> box_corners(const std::vector<double>& lo, const std::vector<double>& hi) {
    const std::size_t n = lo.size();
    std::vector<std::vector<double>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<double> v(n);
        for (std::size_t l = 0; l < n; ++l) v[l] = (mask >> l) & 1 ? hi[l] : lo[l];
        out.push_back(v);
    }
    return out;
}

}  // namespace

Point2 CoamoebaRaster::pixel_center(std::size_t r, std::size_t c) const {
    return {(static_cast<double>(c) + 0.5) * kTwoPi / static_cast<double>(cols),
            (static_cast<double>(r) + 0.5) * kTwoPi / static_cast<double>(rows)};
}

CoamoebaRaster rasterize_coamoeba(const LaurentPolynomial& f, std::size_t resolution, const CoamoebaOptions& options,
                                  Execution exec) {
    if (f.dimension() != 2) throw std::invalid_argument("coamoeba rasters need n = 2");
    if (resolution < kMinCoamoebaResolution) throw std::invalid_argument("coamoeba resolution must be at least 128");
    options.fiber.validate();
    std::array<double, 2> range{};
    if (options.x_range) {
        range = *options.x_range;
    } else {
        const auto w = auto_window(f);
        const double m = std::log(static_cast<double>(resolution)) + 3.0;
        range = {std::min(w.x_min, w.y_min) - m, std::max(w.x_max, w.y_max) + m};
    }
    if (!(range[1] > range[0])) throw std::invalid_argument("empty modulus range");
    const int samples = options.line_samples > 0 ? options.line_samples : static_cast<int>(4 * resolution);
    const auto rc = options.fiber.root_config();
    const std::size_t n = resolution;
    const auto N = static_cast<std::int64_t>(n);

    CoamoebaRaster out;
    out.rows = out.cols = n;
    Grid by_column(n, n), by_row(n, n);
    std::size_t used = 0;
    auto centre = [&](std::int64_t i) { return (static_cast<double>(i) + 0.5) * kTwoPi / static_cast<double>(n); };
    auto column = [&](std::int64_t c, detail::FiberPlan& plan) {
        return coamoeba_line(plan, centre(c), range[0], range[1], samples, rc, n,
                             [&](std::size_t r) { by_column.at(r, static_cast<std::size_t>(c)) = 1; });
    };
    auto row = [&](std::int64_t r, detail::FiberPlan& plan) {
        return coamoeba_line(plan, centre(r), range[0], range[1], samples, rc, n,
                             [&](std::size_t c) { by_row.at(static_cast<std::size_t>(r), c) = 1; });
    };
    if (exec == Execution::serial) {
        detail::FiberPlan pw(f, 1), pz(f, 0);
        for (std::int64_t c = 0; c < N; ++c) used += column(c, pw);
        for (std::int64_t r = 0; r < N; ++r) used += row(r, pz);
    } else {
#pragma omp parallel reduction(+ : used)
        {
            detail::FiberPlan pw(f, 1), pz(f, 0);
#pragma omp for schedule(dynamic, 4)
            for (std::int64_t c = 0; c < N; ++c) used += column(c, pw);
#pragma omp for schedule(dynamic, 4)
            for (std::int64_t r = 0; r < N; ++r) used += row(r, pz);
        }
    }
    out.occupancy = grid_or(by_column, by_row);
    out.samples_used = used;
    return out;
}

double raster_volume(const CoamoebaRaster& r) {
    if (r.occupancy.size() == 0) return 0.0;
    return static_cast<double>(r.occupancy.count()) / static_cast<double>(r.occupancy.size()) * kTwoPi * kTwoPi;
}

bool CoamoebaPolyhedron::contains(std::span<const double> theta) const {
    const std::size_t n = s.size();
    for (std::size_t l = 0; l < n; ++l) {
        const double lo = s[l] * kPi;
        if (theta[l] < lo || theta[l] > lo + kPi) return false;
    }
    // Points of the closure are removed only where the cone is open relative to the cube:
    // lambda in (0, 1], and on each side plane the bound through the apex (a cube face) is closed.
    const std::size_t k = cone.base_axis;
    const double lambda = (theta[k] - cone.apex[k]) / (cone.base_value - cone.apex[k]);
    if (!(lambda > 0.0 && lambda <= 1.0)) return true;
    for (std::size_t l = 0; l < n; ++l) {
        if (l == k) continue;
        const double x = cone.apex[l] + (theta[l] - cone.apex[l]) / lambda;
        const double lo = s[l] * kPi, hi = lo + kPi;
        const bool inside = cone.apex[l] == lo ? (x >= lo && x < hi) : (x > lo && x <= hi);
        if (!inside) return true;
    }
    return false;
}

double StandardCoamoebaModel::volume() const {
    double v = 0.0;
    for (const auto& p : polyhedra) v += p.volume;
    return v;
}

bool StandardCoamoebaModel::contains(std::span<const double> theta) const {
    return std::any_of(polyhedra.begin(), polyhedra.end(), [&](const CoamoebaPolyhedron& p) { return p.contains(theta); });
}

StandardCoamoebaModel standard_model(int n) {
    if (n != 2 && n != 3) throw std::invalid_argument("standard model is implemented for n = 2 and n = 3");
    StandardCoamoebaModel model;
    model.n = n;
    const auto N = static_cast<std::size_t>(n);
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << N); ++mask) {
        CoamoebaPolyhedron p;
        p.s.resize(N);
        std::vector<std::size_t> A, B;
        std::vector<double> lo(N), hi(N);
        for (std::size_t l = 0; l < N; ++l) {
            p.s[l] = static_cast<int>((mask >> l) & 1);
            (p.s[l] ? B : A).push_back(l);
            lo[l] = p.s[l] * kPi;
            hi[l] = lo[l] + kPi;
        }
        p.cube_vertices = box_corners(lo, hi);
        // Cone {max_A u <= min_B u} in u = theta - s pi; for n <= 3 one side is a singleton.
        auto& c = p.cone;
        std::vector<double> flo = lo, fhi = hi;
        if (B.size() == 1) {
            c.apex = lo;
            c.base_axis = B[0];
            c.base_value = hi[B[0]];
        } else {
            c.apex = hi;
            c.base_axis = A[0];
            c.base_value = lo[A[0]];
        }
        flo[c.base_axis] = fhi[c.base_axis] = c.base_value;
        for (auto& v : box_corners(flo, fhi))
            if (std::find(c.base_vertices.begin(), c.base_vertices.end(), v) == c.base_vertices.end())
                c.base_vertices.push_back(v);
        const double cube = std::pow(kPi, n);
        p.volume = cube - cube / n;
        model.polyhedra.push_back(std::move(p));
    }
    return model;
}

double standard_volume_formula(int n) {
    return (n - 1) * (std::pow(2.0, n) - 2.0) * std::pow(kPi, n) / n;
}

CoamoebaRaster rasterize_model(const StandardCoamoebaModel& model, std::size_t resolution) {
    if (model.n != 2) throw std::invalid_argument("model rasters are two-dimensional");
    UnimodularTransformData id{{{1, 0}, {0, 1}}, {0.0, 0.0}};
    return transform_coamoeba(model, id, resolution);
}

double monte_carlo_volume(const StandardCoamoebaModel& model, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    std::vector<double> p(static_cast<std::size_t>(model.n));
    std::size_t hits = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        for (auto& x : p) x = u(rng);
        hits += model.contains(p);
    }
    return static_cast<double>(hits) / static_cast<double>(samples) * std::pow(kTwoPi, model.n);
}

std::size_t model_piece_count(const StandardCoamoebaModel& model, std::size_t resolution) {
    const auto n = static_cast<std::size_t>(model.n);
    std::size_t total = 1;
    for (std::size_t l = 0; l < n; ++l) total *= resolution;
    const double cell = kTwoPi / static_cast<double>(resolution);
    std::vector<std::uint8_t> in(total, 0);
    std::vector<double> p(n);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rem = i;
        bool near_real = false;
        for (std::size_t l = 0; l < n; ++l) {
            p[l] = (static_cast<double>(rem % resolution) + 0.5) * cell;
            rem /= resolution;
            const double d0 = std::min(p[l], kTwoPi - p[l]);
            const double dpi = std::abs(p[l] - kPi);
            if (std::min(d0, dpi) <= cell) near_real = true;
        }
        in[i] = !near_real && model.contains(p);
    }
    std::vector<std::int32_t> label(total, -1);
    std::vector<std::size_t> stack;
    std::size_t pieces = 0;
    for (std::size_t start = 0; start < total; ++start) {
        if (!in[start] || label[start] >= 0) continue;
        label[start] = static_cast<std::int32_t>(pieces);
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            std::size_t stride = 1;
            for (std::size_t l = 0; l < n; ++l) {
                const std::size_t coord = (i / stride) % resolution;
                const std::size_t up = coord + 1 == resolution ? i - coord * stride : i + stride;
                const std::size_t down = coord == 0 ? i + (resolution - 1) * stride : i - stride;
                for (const std::size_t nb : {up, down})
                    if (in[nb] && label[nb] < 0) {
                        label[nb] = static_cast<std::int32_t>(pieces);
                        stack.push_back(nb);
                    }
                stride *= resolution;
            }
        }
        ++pieces;
    }
    return pieces;
}

std::int64_t UnimodularTransformData::determinant() const { return det_int(tL); }

UnimodularTransformData transform_from_inverse(const std::vector<std::vector<std::int64_t>>& numerators,
                                               std::int64_t denominator, std::vector<double> translation) {
    if (denominator == 0) throw std::invalid_argument("zero denominator");
    const std::int64_t d = det_int(numerators);
    if (d == 0) throw std::invalid_argument("singular matrix");
    auto adj = adjugate(numerators);
    for (auto& row : adj)
        for (auto& x : row) {
            const std::int64_t num = x * denominator;
            if (num % d != 0) throw std::invalid_argument("inverse matrix is not integral");
            x = num / d;
        }
    UnimodularTransformData T{adj, std::move(translation)};
    if (T.translation.empty()) T.translation.assign(numerators.size(), 0.0);
    if (T.determinant() <= 0) throw std::invalid_argument("transform must have positive determinant");
    for (auto& v : T.translation) v = mod_two_pi(v);
    return T;
}

UnimodularTransformData trinomial_transform(const LaurentPolynomial& f) {
    if (f.dimension() != 2 || f.size() != 3) throw std::invalid_argument("expected a bivariate trinomial");
    std::vector<std::pair<ExponentVector, Complex>> t(f.terms().begin(), f.terms().end());
    std::vector<std::vector<std::int64_t>> M{{t[1].first[0] - t[0].first[0], t[1].first[1] - t[0].first[1]},
                                             {t[2].first[0] - t[0].first[0], t[2].first[1] - t[0].first[1]}};
    double phi[2] = {std::arg(t[1].second / t[0].second), std::arg(t[2].second / t[0].second)};
    if (det_int(M) == 0) throw std::invalid_argument("trinomial support is collinear");
    if (det_int(M) < 0) {
        std::swap(M[0], M[1]);
        std::swap(phi[0], phi[1]);
    }
    const std::int64_t d = det_int(M);
    const auto adj = adjugate(M);
    // M (theta - v) + phi = M theta, i.e. v = -M^{-1} phi
    std::vector<double> v(2);
    for (std::size_t i = 0; i < 2; ++i)
        v[i] = mod_two_pi(-(static_cast<double>(adj[i][0]) * phi[0] + static_cast<double>(adj[i][1]) * phi[1]) /
                          static_cast<double>(d));
    return {M, v};
}

CoamoebaRaster transform_coamoeba(const StandardCoamoebaModel& model, const UnimodularTransformData& T,
                                  std::size_t resolution) {
    if (model.n != 2) throw std::invalid_argument("transformed rasters are two-dimensional");
    if (T.tL.size() != 2 || T.tL[0].size() != 2 || T.tL[1].size() != 2 || T.translation.size() != 2)
        throw std::invalid_argument("transform dimension does not match the model");
    if (T.determinant() == 0) throw std::invalid_argument("singular matrix");
    if (resolution < kMinCoamoebaResolution) throw std::invalid_argument("coamoeba resolution must be at least 128");
    CoamoebaRaster out;
    out.rows = out.cols = resolution;
    out.occupancy = Grid(resolution, resolution);
    const auto N = static_cast<std::int64_t>(resolution);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < N; ++r) {
        double y[2];
        for (std::size_t c = 0; c < resolution; ++c) {
            const auto th = out.pixel_center(static_cast<std::size_t>(r), c);
            const double d0 = th[0] - T.translation[0], d1 = th[1] - T.translation[1];
            y[0] = mod_two_pi(static_cast<double>(T.tL[0][0]) * d0 + static_cast<double>(T.tL[0][1]) * d1);
            y[1] = mod_two_pi(static_cast<double>(T.tL[1][0]) * d0 + static_cast<double>(T.tL[1][1]) * d1);
            out.occupancy.at(static_cast<std::size_t>(r), c) = model.contains(y) ? 1 : 0;
        }
    }
    out.samples_used = resolution * resolution;
    return out;
}

ExtraPieceReport extra_piece_report(const CoamoebaRaster& sparse, const CoamoebaRaster& deformed) {
    if (sparse.rows != deformed.rows || sparse.cols != deformed.cols)
        throw std::invalid_argument("coamoeba resolutions differ");
    const auto diff = grid_minus(deformed.occupancy, dilate(sparse.occupancy, kExtraPieceDilation, true));
    const auto lab = label_regions(diff, 1, true);
    std::vector<std::size_t> sizes(lab.regions, 0);
    for (const auto id : lab.label)
        if (id >= 0) ++sizes[static_cast<std::size_t>(id)];
    ExtraPieceReport rep;
    const double pixel = kTwoPi * kTwoPi / static_cast<double>(diff.size());
    for (const auto s : sizes) {
        if (s <= kExtraPieceNoiseFloor) continue;
        ++rep.piece_count;
        rep.piece_pixels.push_back(s);
        rep.extra_area += static_cast<double>(s) * pixel;
        rep.largest_piece_area = std::max(rep.largest_piece_area, static_cast<double>(s) * pixel);
    }
    std::sort(rep.piece_pixels.rbegin(), rep.piece_pixels.rend());
    return rep;
}

}  // namespace amoebakit
