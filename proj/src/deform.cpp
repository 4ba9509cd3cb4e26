#include "amoebakit/deform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "amoebakit/detail/sweep.hpp"

namespace amoebakit {

PointCloud h_rescale(const PointCloud& cloud, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
    PointCloud out{cloud.points, cloud.label};
    for (auto& p : out.points) {
        p[0] *= h;
        p[1] *= h;
    }
    return out;
}

namespace {

double nearest_sq(const Point2& a, const std::vector<Point2>& B, double stop) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : B) {
        const double dx = a[0] - b[0], dy = a[1] - b[1];
        const double d = dx * dx + dy * dy;
        if (d < best) {
            best = d;
            if (best <= stop) break;  // cannot raise the running maximum
        }
    }
    return best;
}

std::array<ExponentVector, 2> sorted_pair(const CurveEdge& e) {
    auto p = e.dual_pair;
    if (p[1] < p[0]) std::swap(p[0], p[1]);
    return p;
}

}  // namespace

double directed_hausdorff(const PointCloud& A, const PointCloud& B, Execution exec) {
    if (A.points.empty() || B.points.empty()) throw std::invalid_argument("Hausdorff distance needs nonempty sets");
    const auto n = static_cast<std::int64_t>(A.points.size());
    double worst = 0.0;
    if (exec == Execution::serial) {
        for (std::int64_t i = 0; i < n; ++i) worst = std::max(worst, nearest_sq(A.points[i], B.points, worst));
    } else {
        // max is order independent, so the reduction is deterministic
#pragma omp parallel for reduction(max : worst) schedule(dynamic, 256)
        for (std::int64_t i = 0; i < n; ++i) worst = std::max(worst, nearest_sq(A.points[i], B.points, worst));
    }
    return std::sqrt(worst);
}

double hausdorff(const PointCloud& A, const PointCloud& B, Execution exec) {
    return std::max(directed_hausdorff(A, B, exec), directed_hausdorff(B, A, exec));
}

PointCloud raster_points(const AmoebaRaster& raster) {
    PointCloud out;
    out.label = "raster";
    for (std::size_t r = 0; r < raster.rows; ++r)
        for (std::size_t c = 0; c < raster.cols; ++c)
            if (raster.occupancy.at(r, c)) out.points.push_back(raster.pixel_center(r, c));
    return out;
}

TropicalDual limit_curve(const DeformationFamily& fam) {
    TropicalPolynomial::TermMap g;
    for (const auto& [alpha, xi] : fam.xi) g[alpha] = -fam.nu.values.at(alpha);
    return tropical_dual(TropicalPolynomial(fam.base.dimension(), std::move(g)));
}

ConvergenceTrace convergence_study(const DeformationFamily& fam, const Window& window,
                                   const ConvergenceOptions& options) {
    if (fam.t_schedule.size() < 4) throw std::invalid_argument("t_schedule needs at least 4 entries");
    ConvergenceTrace trace;
    trace.window = window;
    const auto gamma = limit_curve(fam);
    std::set<std::array<ExponentVector, 2>> persistent;
    for (const auto& e : gamma.curve.edges)
        if (e.kind == EdgeKind::segment) persistent.insert(sorted_pair(e));
    for (const double t : fam.t_schedule) {
        TraceRow row;
        row.t = t;
        row.h = -1.0 / std::log(t);
        try {
            const auto ft = instantiate_family(fam, t);
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (const auto& [alpha, a] : ft.terms()) {
                lo = std::min(lo, std::log(std::abs(a)));
                hi = std::max(hi, std::log(std::abs(a)));
            }
            row.coefficient_spread = hi - lo;
            const Window big{window.x_min / row.h, window.x_max / row.h, window.y_min / row.h, window.y_max / row.h};
            const auto raster = rasterize_amoeba(ft, big, options.resolution, options.resolution, options.fiber);
            const auto cloud = h_rescale(raster_points(raster), row.h);
            const double spacing = std::min(window.width(), window.height()) / static_cast<double>(options.resolution);
            PointCloud limit{sample_curve(gamma.curve, {window.x_min, window.y_min}, {window.x_max, window.y_max}, spacing),
                             "limit"};
            row.d_H = hausdorff(cloud, limit);
            const auto rep = component_report(ft, raster, options.fiber);
            row.components = rep.total;
            row.solid = rep.total == newton_polytope(ft).vertices.size();
            const auto sp = build_spine(ft, rep, options.quad_n, options.fiber);
            for (const auto& e : sp.spine.edges) {
                if (e.kind != EdgeKind::segment || persistent.count(sorted_pair(e))) continue;
                const auto& a = sp.spine.vertices[e.from];
                const auto& b = sp.spine.vertices[e.to];
                row.bounded_cell_mass += row.h * std::hypot(a[0] - b[0], a[1] - b[1]);
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        trace.rows.push_back(row);
    }
    return trace;
}

LocalizationResult localization_check(const DeformationFamily& fam, double t, std::size_t cell, double epsilon,
                                      const LocalizationOptions& options) {
    const auto gamma = limit_curve(fam);
    const auto& sub = gamma.subdivision;
    if (sub.cell_dimension != 2 || cell >= sub.cells.size()) throw std::invalid_argument("cell must be a maximal 2-cell");
    const auto& c = sub.cells[cell];
    LocalizationResult res;
    res.vertex = gamma.curve.vertices.at(c.curve_vertex);
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < gamma.curve.vertices.size(); ++i) {
        if (i == c.curve_vertex) continue;
        const auto& q = gamma.curve.vertices[i];
        nearest = std::min(nearest, std::hypot(q[0] - res.vertex[0], q[1] - res.vertex[1]));
    }
    res.radius = std::isfinite(nearest) ? nearest / 3.0 : 1.0;

    const auto ft = instantiate_family(fam, t);
    LaurentPolynomial::TermMap trunc_terms;
    for (const auto& alpha : c.points) trunc_terms[alpha] = ft.coefficient(alpha);
    const LaurentPolynomial trunc(2, std::move(trunc_terms));
    const double h = -1.0 / std::log(t);
    const double two_pi = 2.0 * std::numbers::pi;

    std::vector<double> dists;
    for (std::size_t var = 0; var < 2; ++var) {
        const std::size_t other = 1 - var;
        const int steps = std::max(8, static_cast<int>(options.grid * 2.0 * res.radius));
        for (int i = 0; i <= steps; ++i) {
            const double X = res.vertex[other] - res.radius + 2.0 * res.radius * i / steps;
            for (int k = 0; k < options.angle_samples; ++k) {
                const double theta = two_pi * k / options.angle_samples;
                std::vector<Complex> roots, troots;
                try {
                    roots = fiber_roots(ft, var, X / h, theta, options.fiber);
                } catch (const FiberError&) {
                    continue;
                }
                bool have_trunc = false;
                for (const auto& r : roots) {
                    const double Y = h * std::log(std::abs(r));
                    const double dx = X - res.vertex[other], dy = Y - res.vertex[var];
                    if (dx * dx + dy * dy > res.radius * res.radius) continue;
                    if (!have_trunc) {
                        try {
                            troots = fiber_roots(trunc, var, X / h, theta, options.fiber);
                        } catch (const FiberError&) {
                            troots.clear();
                        }
                        have_trunc = true;
                    }
                    double best = std::numeric_limits<double>::infinity();
                    for (const auto& s : troots) {
                        const double dl = h * (std::log(std::abs(r)) - std::log(std::abs(s)));
                        const double da = detail::wrap_angle(std::arg(r) - std::arg(s));
                        best = std::min(best, std::hypot(dl, da));
                    }
                    dists.push_back(best);
                }
            }
        }
    }
    if (dists.empty()) throw std::runtime_error("no variety samples inside the neighbourhood");
    res.samples = dists.size();
    res.worst = *std::max_element(dists.begin(), dists.end());
    res.within = res.worst <= epsilon;
    return res;
}

}  // namespace amoebakit
