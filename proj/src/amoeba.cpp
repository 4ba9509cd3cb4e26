#include "amoebakit/amoeba.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "amoebakit/detail/fiber_plan.hpp"
#include "amoebakit/detail/sweep.hpp"

namespace amoebakit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxRefine = 6;
using detail::FiberPlan;
using detail::solve_fiber;

std::string window_string(const Window& w) {
    std::ostringstream os;
    os.precision(17);
    os << w.x_min << ',' << w.x_max << ',' << w.y_min << ',' << w.y_max;
    return os.str();
}

// One sweep line: the fixed coordinate is `fixed`, roots are taken in `variable` and
// projected to cells [0, n) along the line with origin lo and spacing step.
template <class Mark>
std::size_t sweep_line(FiberPlan& plan, double fixed, int angle_samples, const RootSolveConfig& rc, double lo,
                       double step, std::size_t n, double max_jump, Mark&& mark) {
    std::size_t failed = 0;
    std::vector<Complex> roots;
    auto fiber = [&](double theta, std::vector<Complex>& logs) {
        const auto p = plan.eval(fixed, theta);
        if (p.coefficients.empty()) {
            ++failed;
            return false;
        }
        if (!solve_fiber(p, rc, roots)) {
            ++failed;
            return false;
        }
        logs.clear();
        for (const auto& r : roots)
            if (r != Complex{}) logs.push_back(std::log(r));
        return true;
    };
    const auto N = static_cast<double>(n);
    auto segment = [&](Complex a, Complex b) {
        const double fa = (a.real() - lo) / step, fb = (b.real() - lo) / step;
        const double l = std::min(fa, fb), h = std::max(fa, fb);
        if (h < 0.0 || l >= N) return;
        const auto i0 = static_cast<std::size_t>(std::max(0.0, std::floor(l)));
        const auto i1 = static_cast<std::size_t>(std::min(N - 1.0, std::floor(h)));
        for (std::size_t i = i0; i <= i1; ++i) mark(i);
    };
    detail::FiberTracer tracer(fiber, segment, max_jump, kMaxRefine);
    tracer.run(0.0, kTwoPi, angle_samples, true);
    return failed;
}

}  // namespace

void FiberSolveConfig::validate() const {
    if (angle_samples < 16) throw std::invalid_argument("angle_samples must be at least 16");
    if (!(root_tolerance > 0.0 && root_tolerance <= 1e-6))
        throw std::invalid_argument("root_tolerance must lie in (0, 1e-6]");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
}

std::string FiberSolveConfig::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "angle_samples=" << angle_samples << ";root_tolerance=" << root_tolerance
       << ";max_iterations=" << max_iterations;
    return os.str();
}

FiberPolynomial fiber_polynomial(const LaurentPolynomial& f, std::size_t variable, double x_other,
                                 double theta_other) {
    FiberPlan plan(f, variable);
    return plan.eval(x_other, theta_other);
}

std::vector<Complex> fiber_roots(const LaurentPolynomial& f, std::size_t variable, double x_other,
                                 double theta_other, const FiberSolveConfig& cfg) {
    cfg.validate();
    const auto p = fiber_polynomial(f, variable, x_other, theta_other);
    if (p.coefficients.empty()) throw FiberError(FiberError::Kind::degenerate, "fiber polynomial vanishes identically");
    std::vector<Complex> roots;
    if (!solve_fiber(p, cfg.root_config(), roots))
        throw FiberError(FiberError::Kind::nonconvergence, "root iteration did not converge");
    std::erase(roots, Complex{});
    return roots;
}

Point2 AmoebaRaster::pixel_center(std::size_t r, std::size_t c) const {
    return {window.x_min + (static_cast<double>(c) + 0.5) * pixel_width(),
            window.y_min + (static_cast<double>(r) + 0.5) * pixel_height()};
}

std::optional<std::pair<std::size_t, std::size_t>> AmoebaRaster::pixel_of(const Point2& x) const {
    const double fc = (x[0] - window.x_min) / pixel_width();
    const double fr = (x[1] - window.y_min) / pixel_height();
    if (!(fc >= 0.0 && fr >= 0.0 && fc < static_cast<double>(cols) && fr < static_cast<double>(rows)))
        return std::nullopt;
    return std::make_pair(static_cast<std::size_t>(fr), static_cast<std::size_t>(fc));
}

bool AmoebaRaster::occupied(const Point2& x) const {
    const auto p = pixel_of(x);
    return p && occupancy.at(p->first, p->second) != 0;
}

AmoebaRaster rasterize_amoeba(const LaurentPolynomial& f, const Window& window, std::size_t rows, std::size_t cols,
                              const FiberSolveConfig& cfg, Execution exec) {
    cfg.validate();
    if (!window.valid()) throw std::invalid_argument("window must have positive area");
    if (rows == 0 || cols == 0) throw std::invalid_argument("resolution must be positive");
    if (f.dimension() != 2) throw std::invalid_argument("amoeba rasters need n = 2");

    AmoebaRaster out;
    out.window = window;
    out.rows = rows;
    out.cols = cols;
    out.polynomial_hash = fnv1a64(f.to_string());
    out.config_hash = fnv1a64(cfg.describe() + ";window=" + window_string(window) + ";res=" +
                              std::to_string(rows) + "x" + std::to_string(cols));
    const double pw = out.pixel_width(), ph = out.pixel_height();
    const double max_jump = 1.5 * std::max(pw, ph);
    const auto rc = cfg.root_config();
    const auto R = static_cast<std::int64_t>(rows), C = static_cast<std::int64_t>(cols);

    Grid by_column(rows, cols), by_row(rows, cols);
    std::size_t failed = 0;

    auto column = [&](std::int64_t c, FiberPlan& plan) {
        const double x1 = window.x_min + (static_cast<double>(c) + 0.5) * pw;
        return sweep_line(plan, x1, cfg.angle_samples, rc, window.y_min, ph, rows, max_jump,
                          [&](std::size_t r) { by_column.at(r, static_cast<std::size_t>(c)) = 1; });
    };
    auto row = [&](std::int64_t r, FiberPlan& plan) {
        const double x2 = window.y_min + (static_cast<double>(r) + 0.5) * ph;
        return sweep_line(plan, x2, cfg.angle_samples, rc, window.x_min, pw, cols, max_jump,
                          [&](std::size_t c) { by_row.at(static_cast<std::size_t>(r), c) = 1; });
    };

    if (exec == Execution::serial) {
        FiberPlan pw_plan(f, 1), pz_plan(f, 0);
        for (std::int64_t c = 0; c < C; ++c) failed += column(c, pw_plan);
        for (std::int64_t r = 0; r < R; ++r) failed += row(r, pz_plan);
    } else {
        // Each iteration owns one column (resp. row) of its grid.
#pragma omp parallel reduction(+ : failed)
        {
            FiberPlan pw_plan(f, 1), pz_plan(f, 0);
#pragma omp for schedule(dynamic, 4)
            for (std::int64_t c = 0; c < C; ++c) failed += column(c, pw_plan);
#pragma omp for schedule(dynamic, 4)
            for (std::int64_t r = 0; r < R; ++r) failed += row(r, pz_plan);
        }
    }
    out.occupancy = grid_or(by_column, by_row);
    out.failed_fibers = failed;
    return out;
}

ExponentVector order_of_point(const LaurentPolynomial& f, const Point2& x, const FiberSolveConfig& cfg,
                              double guard) {
    cfg.validate();
    ExponentVector order(2, 0);
    const auto rc = cfg.root_config();
    std::vector<Complex> roots;
    for (std::size_t j = 0; j < 2; ++j) {
        FiberPlan plan(f, j);
        const double xo = x[1 - j];
        double sum = 0.0;
        for (int k = 0; k < cfg.angle_samples; ++k) {
            const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(cfg.angle_samples);
            const auto p = plan.eval(xo, theta);
            if (p.coefficients.empty())
                throw OrderError(OrderError::Kind::degenerate, "fiber polynomial vanishes on the order torus");
            if (!solve_fiber(p, rc, roots))
                throw FiberError(FiberError::Kind::nonconvergence, "root iteration did not converge");
            auto count = p.low_exponent;
            for (const auto& r : roots) {
                if (r == Complex{}) {
                    ++count;
                    continue;
                }
                const double lr = std::log(std::abs(r));
                if (std::abs(lr - x[j]) < guard)
                    throw OrderError(OrderError::Kind::guard_band, "fiber root inside the guard band");
                if (lr < x[j]) ++count;
            }
            sum += static_cast<double>(count);
        }
        const double avg = sum / static_cast<double>(cfg.angle_samples);
        const double rounded = std::round(avg);
        if (std::abs(avg - rounded) >= 0.1) {
            std::ostringstream os;
            os << "ambiguous order: average " << avg << " in coordinate " << j;
            throw OrderError(OrderError::Kind::ambiguous, os.str());
        }
        order[j] = static_cast<std::int64_t>(rounded);
    }
    return order;
}

ComponentReport component_report(const LaurentPolynomial& f, const AmoebaRaster& raster, const FiberSolveConfig& cfg) {
    const std::size_t R = raster.rows, C = raster.cols;
    const auto lab = label_regions(raster.occupancy, 0, false);
    const auto dist = chessboard_distance(raster.occupancy, true);

    struct Region {
        std::vector<std::size_t> pixels;
        bool touches_border = false;
        std::int32_t clearance = 0;
    };
    std::vector<Region> regions(lab.regions);
    for (std::size_t i = 0; i < R * C; ++i) {
        const auto id = lab.label[i];
        if (id < 0) continue;
        auto& g = regions[static_cast<std::size_t>(id)];
        g.pixels.push_back(i);
        const std::size_t r = i / C, c = i % C;
        if (r == 0 || c == 0 || r + 1 == R || c + 1 == C) g.touches_border = true;
        g.clearance = std::max(g.clearance, dist[i]);
    }

    ComponentReport rep;
    rep.window = raster.window;
    rep.rows = R;
    rep.cols = C;
    rep.polynomial_hash = raster.polynomial_hash;
    rep.config_hash = raster.config_hash;
    rep.component_of_pixel.assign(R * C, -1);

    const double guard = 2.0 * std::max(raster.pixel_width(), raster.pixel_height());
    constexpr std::size_t kCandidates = 8;
    std::map<ExponentVector, std::size_t> by_order;
    for (auto& g : regions) {
        if (g.clearance < kWitnessClearance) {
            ++rep.noise_regions;
            continue;
        }
        // Witness candidates: farthest from the amoeba first, ties by pixel index.
        std::vector<std::size_t> cand = g.pixels;
        const auto n = std::min(kCandidates, cand.size());
        std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(n), cand.end(),
                          [&](std::size_t a, std::size_t b) { return dist[a] != dist[b] ? dist[a] > dist[b] : a < b; });
        std::optional<ExponentVector> order;
        Point2 witness{};
        int clearance = 0;
        for (std::size_t k = 0; k < n && dist[cand[k]] >= kWitnessClearance; ++k) {
            witness = raster.pixel_center(cand[k] / C, cand[k] % C);
            try {
                order = order_of_point(f, witness, cfg, guard);
                clearance = dist[cand[k]];
                break;
            } catch (const OrderError& e) {
                if (e.kind() != OrderError::Kind::guard_band) throw;
            }
        }
        if (!order) {
            ++rep.noise_regions;
            continue;
        }
        auto [it, fresh] = by_order.emplace(*order, rep.components.size());
        if (fresh) {
            Component comp;
            comp.order = *order;
            comp.bounded = true;
            rep.components.push_back(comp);
        }
        auto& comp = rep.components[it->second];
        if (clearance > comp.witness_clearance) {
            comp.witness = witness;
            comp.witness_clearance = clearance;
        }
        comp.pixel_count += g.pixels.size();
        comp.regions += 1;
        if (g.touches_border) comp.bounded = false;
        for (const auto i : g.pixels) rep.component_of_pixel[i] = static_cast<std::int32_t>(it->second);
    }
    rep.total = rep.components.size();
    return rep;
}

ComponentReport component_report(const LaurentPolynomial& f, const Window& window, std::size_t resolution,
                                 const FiberSolveConfig& cfg) {
    const auto raster = rasterize_amoeba(f, window, resolution, resolution, cfg);
    return component_report(f, raster, cfg);
}

Window auto_window(const LaurentPolynomial& f) {
    if (f.dimension() != 2) throw std::invalid_argument("auto window needs n = 2");
    const auto curve = corner_locus(tropicalize(f));
    std::vector<Point2> pts = curve.vertices;
    if (pts.empty())
        for (const auto& e : curve.edges)
            if (e.kind == EdgeKind::line) pts.push_back(e.anchor);
    if (pts.empty()) pts.push_back({0.0, 0.0});
    double x0 = pts[0][0], x1 = x0, y0 = pts[0][1], y1 = y0;
    for (const auto& p : pts) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    }
    const auto P = newton_polytope(f);
    std::int64_t extent = 0;
    for (std::size_t j = 0; j < 2; ++j) {
        std::int64_t lo = P.vertices[0][j], hi = lo;
        for (const auto& v : P.vertices) {
            lo = std::min(lo, v[j]);
            hi = std::max(hi, v[j]);
        }
        extent = std::max(extent, hi - lo);
    }
    const double margin = std::max(3.0, static_cast<double>(extent));
    const double half = 0.5 * std::max(x1 - x0, y1 - y0) + margin;
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    return {cx - half, cx + half, cy - half, cy + half};
}

SolidityResult verify_solid(const LaurentPolynomial& f, std::size_t resolution, const FiberSolveConfig& cfg,
                            std::optional<Window> window) {
    if (f.dimension() != 2) throw std::invalid_argument("verify_solid needs n = 2");
    SolidityResult out;
    const Window w = window ? *window : auto_window(f);
    out.report = component_report(f, w, resolution, cfg);
    out.components = out.report.total;
    out.vertices = newton_polytope(f).vertices.size();
    out.maximally_sparse = is_maximally_sparse(f);
    out.solid = out.components == out.vertices;
    return out;
}

}  // namespace amoebakit
