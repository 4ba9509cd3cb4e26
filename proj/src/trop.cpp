#include "amoebakit/trop.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "amoebakit/detail/exact.hpp"

namespace amoebakit {

using detail::i128;

TropicalPolynomial::TropicalPolynomial(std::size_t dimension, TermMap terms)
    : dimension_(dimension), terms_(std::move(terms)) {
    if (dimension_ == 0) throw std::invalid_argument("tropical polynomial dimension must be positive");
    if (terms_.empty()) throw std::invalid_argument("empty tropical polynomial");
    for (const auto& [alpha, c] : terms_) {
        if (alpha.size() != dimension_) throw std::invalid_argument("exponent vector dimension mismatch");
        if (!std::isfinite(c)) throw std::invalid_argument("tropical coefficients must be finite");
    }
}

std::vector<ExponentVector> TropicalPolynomial::support() const {
    std::vector<ExponentVector> out;
    for (const auto& [alpha, c] : terms_) out.push_back(alpha);
    return out;
}

TropicalPolynomial tropicalize(const LaurentPolynomial& f) {
    TropicalPolynomial::TermMap terms;
    for (const auto& [alpha, a] : f.terms()) terms.emplace(alpha, std::log(std::abs(a)));
    return TropicalPolynomial(f.dimension(), std::move(terms));
}

TropicalValue trop_eval(const TropicalPolynomial& g, std::span<const double> x) {
    if (x.size() != g.dimension()) throw std::invalid_argument("evaluation point dimension mismatch");
    std::vector<std::pair<ExponentVector, double>> vals;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [alpha, c] : g.terms()) {
        double v = c;
        for (std::size_t j = 0; j < x.size(); ++j) v += static_cast<double>(alpha[j]) * x[j];
        vals.emplace_back(alpha, v);
        best = std::max(best, v);
    }
    TropicalValue out;
    out.value = best;
    const double tol = kTieTolerance * (1.0 + std::abs(best));
    for (auto& [alpha, v] : vals)
        if (best - v <= tol) out.argmax.push_back(alpha);
    return out;
}

// ---------------------------------------------------------------------------

std::vector<ExponentVector> DualSubdivision::vertices() const {
    std::set<ExponentVector> s;
    for (const auto& c : cells) s.insert(c.vertices.begin(), c.vertices.end());
    return {s.begin(), s.end()};
}

std::size_t DualSubdivision::locate(const ExponentVector& alpha) const {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& v = cells[i].vertices;
        if (cell_dimension == 2) {
            bool inside = true;
            for (std::size_t k = 0; k < v.size() && inside; ++k) {
                const auto& a = v[k];
                const auto& b = v[(k + 1) % v.size()];
                if (detail::cross2(b[0] - a[0], b[1] - a[1], alpha[0] - a[0], alpha[1] - a[1]) < 0)
                    inside = false;
            }
            if (inside) return i;
        } else if (cell_dimension == 1) {
            const auto& a = v[0];
            const auto& b = v[1];
            if (detail::cross2(b[0] - a[0], b[1] - a[1], alpha[0] - a[0], alpha[1] - a[1]) != 0) continue;
            const i128 t = static_cast<i128>(alpha[0] - a[0]) * (b[0] - a[0]) +
                           static_cast<i128>(alpha[1] - a[1]) * (b[1] - a[1]);
            const i128 len = static_cast<i128>(b[0] - a[0]) * (b[0] - a[0]) +
                             static_cast<i128>(b[1] - a[1]) * (b[1] - a[1]);
            if (t >= 0 && t <= len) return i;
        } else if (v.front() == alpha) {
            return i;
        }
    }
    return kNoIndex;
}

namespace {

struct Lifted {
    ExponentVector alpha;
    std::int64_t lift;  // snapped coefficient
    double coeff;
};

std::vector<Lifted> snap(const TropicalPolynomial& g, int bits) {
    if (bits < 0 || bits > 52) throw std::invalid_argument("snap_bits must be in [0, 52]");
    const double scale = std::ldexp(1.0, bits);
    std::vector<Lifted> pts;
    for (const auto& [alpha, c] : g.terms()) {
        const double s = c * scale;
        if (std::abs(s) >= std::ldexp(1.0, 61))
            throw std::domain_error("tropical coefficient too large for exact subdivision");
        pts.push_back({alpha, std::llround(s), c});
    }
    return pts;
}

long double to_ld(i128 v) { return static_cast<long double>(v); }

IntVec2 primitive(std::int64_t x, std::int64_t y, std::int64_t& g) {
    g = detail::gcd64(x, y);
    return {x / g, y / g};
}

TropicalDual build_full_dimensional(const std::vector<Lifted>& pts, double scale) {
    const std::size_t m = pts.size();
    struct Facet {
        std::vector<std::size_t> on;
        i128 nx, ny, nz;
        std::size_t base;
    };
    std::vector<Facet> facets;
    std::set<std::vector<std::size_t>> seen;
    auto lifted = [&](std::size_t i, std::size_t j, i128 out[3]) {
        out[0] = static_cast<i128>(pts[j].alpha[0]) - pts[i].alpha[0];
        out[1] = static_cast<i128>(pts[j].alpha[1]) - pts[i].alpha[1];
        out[2] = static_cast<i128>(pts[j].lift) - pts[i].lift;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                i128 u[3], v[3];
                lifted(i, j, u);
                lifted(i, k, v);
                i128 nz = u[0] * v[1] - u[1] * v[0];
                if (nz == 0) continue;
                i128 nx = u[1] * v[2] - u[2] * v[1];
                i128 ny = u[2] * v[0] - u[0] * v[2];
                if (nz < 0) {
                    nx = -nx;
                    ny = -ny;
                    nz = -nz;
                }
                std::vector<std::size_t> on;
                bool upper = true;
                for (std::size_t q = 0; q < m && upper; ++q) {
                    i128 d[3];
                    lifted(i, q, d);
                    const i128 s = nx * d[0] + ny * d[1] + nz * d[2];
                    if (s > 0) upper = false;
                    else if (s == 0) on.push_back(q);
                }
                if (!upper || !seen.insert(on).second) continue;
                facets.push_back({std::move(on), nx, ny, nz, i});
            }

    TropicalDual out;
    auto& sub = out.subdivision;
    auto& curve = out.curve;
    sub.cell_dimension = 2;
    for (const auto& f : facets) {
        SubdivisionCell cell;
        std::vector<ExponentVector> on_pts;
        for (auto q : f.on) on_pts.push_back(pts[q].alpha);
        cell.points = on_pts;
        std::sort(cell.points.begin(), cell.points.end());
        cell.vertices = convex_hull(2, on_pts).vertices;
        // lift = C_base - (nx*(a-a_base) + ny*(b-b_base))/nz  (in snapped units)
        const long double sx = -to_ld(f.nx) / to_ld(f.nz) / scale;
        const long double sy = -to_ld(f.ny) / to_ld(f.nz) / scale;
        const auto& base = pts[f.base];
        cell.slope = {static_cast<double>(sx), static_cast<double>(sy)};
        cell.offset = static_cast<double>(static_cast<long double>(base.lift) / scale - sx * base.alpha[0] -
                                          sy * base.alpha[1]);
        cell.curve_vertex = curve.vertices.size();
        curve.vertices.push_back({static_cast<double>(-sx), static_cast<double>(-sy)});
        sub.cells.push_back(std::move(cell));
    }

    // Edges: consecutive counterclockwise vertex pairs, matched between cells.
    std::map<std::pair<ExponentVector, ExponentVector>, std::size_t> edge_index;
    std::vector<IntVec2> first_normal;
    for (std::size_t ci = 0; ci < sub.cells.size(); ++ci) {
        const auto& v = sub.cells[ci].vertices;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const auto& a = v[k];
            const auto& b = v[(k + 1) % v.size()];
            auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            auto it = edge_index.find(key);
            if (it == edge_index.end()) {
                std::int64_t g = 1;
                // outward normal of a counterclockwise edge a->b
                IntVec2 n = primitive(b[1] - a[1], -(b[0] - a[0]), g);
                edge_index.emplace(key, sub.edges.size());
                sub.edges.push_back({a, b, {ci}, g, kNoIndex});
                first_normal.push_back(n);
            } else {
                sub.edges[it->second].cells.push_back(ci);
            }
        }
    }
    for (std::size_t e = 0; e < sub.edges.size(); ++e) {
        auto& se = sub.edges[e];
        if (se.cells.size() > 2) throw std::logic_error("subdivision edge shared by more than two cells");
        CurveEdge ce;
        ce.weight = se.lattice_length;
        ce.dual_pair = {se.a, se.b};
        ce.direction = first_normal[e];
        ce.from = sub.cells[se.cells[0]].curve_vertex;
        if (se.cells.size() == 2) {
            ce.kind = EdgeKind::segment;
            ce.to = sub.cells[se.cells[1]].curve_vertex;
            const auto& p = curve.vertices[ce.from];
            const auto& q = curve.vertices[ce.to];
            if ((q[0] - p[0]) * ce.direction[0] + (q[1] - p[1]) * ce.direction[1] < 0)
                throw std::logic_error("inconsistent dual edge orientation");
        } else {
            ce.kind = EdgeKind::ray;
        }
        ce.anchor = curve.vertices[ce.from];
        se.curve_edge = curve.edges.size();
        curve.edges.push_back(std::move(ce));
    }
    return out;
}

TropicalDual build_collinear(const std::vector<Lifted>& pts, double scale) {
    // all points on a line through pts[lo] with primitive direction u
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end(), [](const Lifted& a, const Lifted& b) { return a.alpha < b.alpha; });
    const auto& a0 = sorted.front().alpha;
    const auto& a1 = sorted.back().alpha;
    std::int64_t g = 1;
    const IntVec2 u = primitive(a1[0] - a0[0], a1[1] - a0[1], g);
    auto param = [&](const ExponentVector& p) {
        return u[0] != 0 ? (p[0] - a0[0]) / u[0] : (p[1] - a0[1]) / u[1];
    };
    // upper hull of (t, lift)
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        while (hull.size() >= 2) {
            const auto& p = sorted[hull[hull.size() - 2]];
            const auto& q = sorted[hull.back()];
            const auto& r = sorted[i];
            const i128 cr = static_cast<i128>(param(q.alpha) - param(p.alpha)) * (r.lift - p.lift) -
                            static_cast<i128>(q.lift - p.lift) * (param(r.alpha) - param(p.alpha));
            if (cr >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }
    TropicalDual out;
    auto& sub = out.subdivision;
    sub.cell_dimension = 1;
    const double uu = static_cast<double>(u[0] * u[0] + u[1] * u[1]);
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const auto& p = sorted[hull[h]];
        const auto& q = sorted[hull[h + 1]];
        SubdivisionCell cell;
        cell.vertices = {p.alpha, q.alpha};
        const auto tp = param(p.alpha), tq = param(q.alpha);
        for (const auto& r : sorted) {
            const auto tr = param(r.alpha);
            if (tr < tp || tr > tq) continue;
            const i128 cr = static_cast<i128>(tq - tp) * (r.lift - p.lift) -
                            static_cast<i128>(q.lift - p.lift) * (tr - tp);
            if (cr == 0) cell.points.push_back(r.alpha);
        }
        const double rate = (static_cast<double>(q.lift - p.lift) / scale) / static_cast<double>(tq - tp);
        cell.slope = {rate * u[0] / uu, rate * u[1] / uu};
        cell.offset = static_cast<double>(p.lift) / scale - cell.slope[0] * p.alpha[0] - cell.slope[1] * p.alpha[1];
        const std::size_t ci = sub.cells.size();
        sub.cells.push_back(cell);

        std::int64_t len = 1;
        const IntVec2 d = primitive(q.alpha[0] - p.alpha[0], q.alpha[1] - p.alpha[1], len);
        CurveEdge ce;
        ce.kind = EdgeKind::line;
        ce.weight = len;
        ce.direction = {-d[1], d[0]};
        ce.dual_pair = {p.alpha, q.alpha};
        // tie: <q - p, x> = c_p - c_q
        const double dx = static_cast<double>(q.alpha[0] - p.alpha[0]);
        const double dy = static_cast<double>(q.alpha[1] - p.alpha[1]);
        const double rhs = static_cast<double>(p.lift - q.lift) / scale;
        const double nn = dx * dx + dy * dy;
        ce.anchor = {rhs * dx / nn, rhs * dy / nn};
        sub.edges.push_back({p.alpha, q.alpha, {ci}, len, out.curve.edges.size()});
        out.curve.edges.push_back(ce);
    }
    return out;
}

void fan_triangulate(DualSubdivision& sub) {
    DualSubdivision refined;
    refined.cell_dimension = 2;
    for (const auto& cell : sub.cells) {
        if (cell.vertices.size() <= 3) {
            refined.cells.push_back(cell);
            continue;
        }
        const auto& v = cell.vertices;
        for (std::size_t k = 1; k + 1 < v.size(); ++k) {
            SubdivisionCell t = cell;
            t.vertices = {v[0], v[k], v[k + 1]};
            t.points.clear();
            for (const auto& p : cell.points)
                if (convex_hull(2, t.vertices).contains(p)) t.points.push_back(p);
            refined.cells.push_back(std::move(t));
        }
    }
    // keep the coarse edge -> curve edge incidences, add diagonals
    std::map<std::pair<ExponentVector, ExponentVector>, std::size_t> coarse;
    for (const auto& e : sub.edges) coarse[std::minmax(e.a, e.b)] = e.curve_edge;
    std::map<std::pair<ExponentVector, ExponentVector>, std::size_t> idx;
    for (std::size_t ci = 0; ci < refined.cells.size(); ++ci) {
        const auto& v = refined.cells[ci].vertices;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const auto& a = v[k];
            const auto& b = v[(k + 1) % v.size()];
            auto key = std::minmax(a, b);
            auto it = idx.find(key);
            if (it != idx.end()) {
                refined.edges[it->second].cells.push_back(ci);
                continue;
            }
            idx.emplace(key, refined.edges.size());
            auto ce = coarse.find(key);
            refined.edges.push_back({a, b, {ci}, lattice_length(a, b), ce == coarse.end() ? kNoIndex : ce->second});
        }
    }
    sub = std::move(refined);
}

}  // namespace

TropicalDual tropical_dual(const TropicalPolynomial& g, const SubdivisionOptions& options) {
    if (g.dimension() != 2) throw std::domain_error("corner loci are implemented for n = 2");
    const auto pts = snap(g, options.snap_bits);
    const double scale = std::ldexp(1.0, options.snap_bits);
    const auto support = g.support();
    const auto poly = convex_hull(2, support);
    TropicalDual out;
    switch (poly.affine_dimension()) {
        case 0: {
            out.subdivision.cell_dimension = 0;
            SubdivisionCell cell;
            cell.vertices = {pts.front().alpha};
            cell.points = cell.vertices;
            cell.offset = pts.front().coeff;
            out.subdivision.cells.push_back(cell);
            break;
        }
        case 1:
            out = build_collinear(pts, scale);
            break;
        default:
            out = build_full_dimensional(pts, scale);
            if (options.triangulate) fan_triangulate(out.subdivision);
    }
    return out;
}

DualSubdivision dual_subdivision(const TropicalPolynomial& g, const SubdivisionOptions& options) {
    return tropical_dual(g, options).subdivision;
}

TropicalCurve corner_locus(const TropicalPolynomial& g, const SubdivisionOptions& options) {
    return tropical_dual(g, options).curve;
}

BalancingReport balancing_check(const TropicalCurve& curve) {
    std::vector<IntVec2> sum(curve.vertices.size(), IntVec2{0, 0});
    for (const auto& e : curve.edges) {
        if (e.kind == EdgeKind::line) continue;
        if (e.from != kNoIndex && e.from < sum.size()) {
            sum[e.from][0] += e.weight * e.direction[0];
            sum[e.from][1] += e.weight * e.direction[1];
        }
        if (e.kind == EdgeKind::segment && e.to < sum.size()) {
            sum[e.to][0] -= e.weight * e.direction[0];
            sum[e.to][1] -= e.weight * e.direction[1];
        }
    }
    BalancingReport report;
    for (std::size_t v = 0; v < sum.size(); ++v)
        if (sum[v][0] != 0 || sum[v][1] != 0) report.violations.push_back({v, sum[v]});
    report.balanced = report.violations.empty();
    return report;
}

bool solid_tropical(const TropicalPolynomial& g, const NewtonPolytope& polytope,
                    const SubdivisionOptions& options) {
    for (const auto& alpha : g.support())
        if (!polytope.contains(alpha))
            throw std::invalid_argument("tropical support is not contained in the polytope");
    auto verts = dual_subdivision(g, options).vertices();
    auto expected = polytope.vertices;
    std::sort(expected.begin(), expected.end());
    return verts == expected;
}

// ---------------------------------------------------------------------------
// Geometry on curves

namespace {

struct Param {
    Point2 origin;
    Point2 dir;  // unit
    double t0, t1;
};

Param edge_param(const TropicalCurve& curve, const CurveEdge& e) {
    const double dx = static_cast<double>(e.direction[0]);
    const double dy = static_cast<double>(e.direction[1]);
    const double len = std::hypot(dx, dy);
    Param p;
    p.dir = {dx / len, dy / len};
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (e.kind) {
        case EdgeKind::segment: {
            p.origin = curve.vertices[e.from];
            const auto& q = curve.vertices[e.to];
            p.t0 = 0.0;
            p.t1 = std::hypot(q[0] - p.origin[0], q[1] - p.origin[1]);
            break;
        }
        case EdgeKind::ray:
            p.origin = curve.vertices[e.from];
            p.t0 = 0.0;
            p.t1 = inf;
            break;
        case EdgeKind::line:
            p.origin = e.anchor;
            p.t0 = -inf;
            p.t1 = inf;
            break;
    }
    return p;
}

}  // namespace

double distance_to_curve(const TropicalCurve& curve, const Point2& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : curve.vertices) best = std::min(best, std::hypot(x[0] - v[0], x[1] - v[1]));
    for (const auto& e : curve.edges) {
        const Param p = edge_param(curve, e);
        double t = (x[0] - p.origin[0]) * p.dir[0] + (x[1] - p.origin[1]) * p.dir[1];
        t = std::clamp(t, p.t0, p.t1);
        best = std::min(best, std::hypot(x[0] - (p.origin[0] + t * p.dir[0]), x[1] - (p.origin[1] + t * p.dir[1])));
    }
    return best;
}

std::vector<Point2> sample_curve(const TropicalCurve& curve, const Point2& lo, const Point2& hi, double spacing) {
    if (!(spacing > 0.0)) throw std::invalid_argument("sample spacing must be positive");
    std::vector<Point2> out;
    for (const auto& e : curve.edges) {
        const Param p = edge_param(curve, e);
        double t0 = p.t0, t1 = p.t1;
        // clip to the box (Liang-Barsky)
        bool empty = false;
        for (int k = 0; k < 2 && !empty; ++k) {
            if (p.dir[k] == 0.0) {
                if (p.origin[k] < lo[k] || p.origin[k] > hi[k]) empty = true;
                continue;
            }
            double a = (lo[k] - p.origin[k]) / p.dir[k];
            double b = (hi[k] - p.origin[k]) / p.dir[k];
            if (a > b) std::swap(a, b);
            t0 = std::max(t0, a);
            t1 = std::min(t1, b);
        }
        if (empty || t0 > t1) continue;
        const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / spacing));
        for (std::size_t s = 0; s <= steps; ++s) {
            const double t = steps == 0 ? t0 : t0 + (t1 - t0) * static_cast<double>(s) / static_cast<double>(steps);
            out.push_back({p.origin[0] + t * p.dir[0], p.origin[1] + t * p.dir[1]});
        }
    }
    for (const auto& v : curve.vertices)
        if (v[0] >= lo[0] && v[0] <= hi[0] && v[1] >= lo[1] && v[1] <= hi[1]) out.push_back(v);
    return out;
}

double bounded_length(const TropicalCurve& curve) {
    double total = 0.0;
    for (const auto& e : curve.edges) {
        if (e.kind != EdgeKind::segment) continue;
        const auto& p = curve.vertices[e.from];
        const auto& q = curve.vertices[e.to];
        total += std::hypot(q[0] - p[0], q[1] - p[1]);
    }
    return total;
}

}  // namespace amoebakit
