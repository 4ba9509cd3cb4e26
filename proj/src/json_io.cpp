#include "amoebakit/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace amoebakit {

namespace {

json exponent_json(const ExponentVector& a) { return json(a); }

json number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return nullptr;
    return x > 0 ? "inf" : "-inf";
}

json point_json(const Point2& p) { return json::array({p[0], p[1]}); }

const char* kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::segment: return "segment";
        case EdgeKind::ray: return "ray";
        case EdgeKind::line: return "line";
    }
    return "?";
}

json index_json(std::size_t i) { return i == kNoIndex ? json(nullptr) : json(i); }

}  // namespace

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json provenance(const std::string& config_text, const std::string& polynomial_text) {
    json j;
    j["version"] = kVersion;
    j["config_hash"] = hex64(fnv1a64(config_text));
    j["polynomial_hash"] = polynomial_text.empty() ? json(nullptr) : json(hex64(fnv1a64(polynomial_text)));
    return j;
}

json to_json(const LaurentPolynomial& f) {
    json terms = json::array();
    for (const auto& [alpha, a] : f.terms())
        terms.push_back({{"exponent", exponent_json(alpha)}, {"re", a.real()}, {"im", a.imag()}});
    return {{"text", f.to_string()}, {"dimension", f.dimension()}, {"terms", terms}};
}

json to_json(const TropicalPolynomial& g) {
    json terms = json::array();
    for (const auto& [alpha, c] : g.terms()) terms.push_back({{"exponent", exponent_json(alpha)}, {"coefficient", c}});
    return {{"dimension", g.dimension()}, {"terms", terms}};
}

json to_json(const TropicalCurve& curve) {
    json v = json::array(), e = json::array();
    for (const auto& p : curve.vertices) v.push_back(point_json(p));
    for (const auto& edge : curve.edges) {
        json j{{"kind", kind_name(edge.kind)},
               {"from", index_json(edge.from)},
               {"to", index_json(edge.to)},
               {"direction", {edge.direction[0], edge.direction[1]}},
               {"weight", edge.weight},
               {"dual_pair", {exponent_json(edge.dual_pair[0]), exponent_json(edge.dual_pair[1])}}};
        if (edge.kind == EdgeKind::line) j["anchor"] = point_json(edge.anchor);
        e.push_back(std::move(j));
    }
    return {{"vertices", v}, {"edges", e}};
}

json to_json(const DualSubdivision& sub) {
    json cells = json::array(), edges = json::array();
    for (const auto& c : sub.cells)
        cells.push_back({{"vertices", c.vertices},
                         {"points", c.points},
                         {"slope", point_json(c.slope)},
                         {"offset", c.offset},
                         {"curve_vertex", index_json(c.curve_vertex)}});
    for (const auto& e : sub.edges)
        edges.push_back({{"a", e.a},
                         {"b", e.b},
                         {"cells", e.cells},
                         {"lattice_length", e.lattice_length},
                         {"curve_edge", index_json(e.curve_edge)}});
    return {{"cell_dimension", sub.cell_dimension}, {"cells", cells}, {"edges", edges}};
}

json to_json(const BalancingReport& report) {
    json v = json::array();
    for (const auto& x : report.violations)
        v.push_back({{"vertex", x.vertex}, {"imbalance", {x.imbalance[0], x.imbalance[1]}}});
    return {{"balanced", report.balanced}, {"violations", v}};
}

json to_json(const Window& w) {
    return {{"x_min", w.x_min}, {"x_max", w.x_max}, {"y_min", w.y_min}, {"y_max", w.y_max}};
}

json to_json(const ComponentReport& report) {
    json comps = json::array();
    for (const auto& c : report.components)
        comps.push_back({{"order", c.order},
                         {"bounded", c.bounded},
                         {"witness", point_json(c.witness)},
                         {"witness_clearance", c.witness_clearance},
                         {"pixel_count", c.pixel_count},
                         {"regions", c.regions}});
    return {{"window", to_json(report.window)},
            {"rows", report.rows},
            {"cols", report.cols},
            {"total", report.total},
            {"bounded", std::count_if(report.components.begin(), report.components.end(),
                                      [](const Component& c) { return c.bounded; })},
            {"noise_regions", report.noise_regions},
            {"components", comps},
            {"raster_polynomial_hash", hex64(report.polynomial_hash)},
            {"raster_config_hash", hex64(report.config_hash)}};
}

json to_json(const SpineModel& spine) {
    json c = json::array();
    for (const auto& [alpha, v] : spine.c) c.push_back({{"exponent", alpha}, {"c", v}});
    return {{"orders_present", spine.orders_present},
            {"c", c},
            {"spine", to_json(spine.spine)},
            {"subdivision", to_json(spine.subdivision)}};
}

json to_json(const PRFunction& nu) {
    json v = json::array();
    for (const auto& [alpha, x] : nu.values) v.push_back({{"exponent", alpha}, {"nu", x}});
    return v;
}

json to_json(const DeformationFamily& fam) {
    json xi = json::array();
    for (const auto& [alpha, a] : fam.xi) xi.push_back({{"exponent", alpha}, {"re", a.real()}, {"im", a.imag()}});
    return {{"base", to_json(fam.base)}, {"nu", to_json(fam.nu)}, {"xi", xi}, {"t_schedule", fam.t_schedule}};
}

json to_json(const ConvergenceTrace& trace) {
    json rows = json::array();
    for (const auto& r : trace.rows) {
        json j{{"t", r.t},
               {"h", r.h},
               {"d_H", number(r.d_H)},
               {"bounded_cell_mass", r.bounded_cell_mass},
               {"solid", r.solid},
               {"components", r.components},
               {"coefficient_spread", r.coefficient_spread}};
        if (!r.error.empty()) j["error"] = r.error;
        rows.push_back(std::move(j));
    }
    return {{"window", to_json(trace.window)}, {"rows", rows}};
}

json to_json(const LocalizationResult& r) {
    return {{"within", r.within},
            {"worst", number(r.worst)},
            {"samples", r.samples},
            {"vertex", point_json(r.vertex)},
            {"radius", r.radius}};
}

json to_json(const StandardCoamoebaModel& model) {
    json polys = json::array();
    for (const auto& p : model.polyhedra)
        polys.push_back({{"s", p.s},
                         {"cube_vertices", p.cube_vertices},
                         {"cone", {{"apex", p.cone.apex},
                                   {"base_axis", p.cone.base_axis},
                                   {"base_value", p.cone.base_value},
                                   {"base_vertices", p.cone.base_vertices}}},
                         {"volume", p.volume}});
    return {{"n", model.n}, {"volume", model.volume()}, {"polyhedra", polys}};
}

json to_json(const ExtraPieceReport& r) {
    return {{"extra_area", r.extra_area},
            {"piece_count", r.piece_count},
            {"largest_piece_area", r.largest_piece_area},
            {"piece_pixels", r.piece_pixels}};
}

json to_json(const PuiseuxScalar& a) {
    json terms = json::array();
    for (const auto& t : a.terms())
        terms.push_back(json::array({t.exponent, t.coefficient.real(), t.coefficient.imag()}));
    return {{"order", std::isfinite(a.order()) ? json(a.order()) : json(nullptr)}, {"terms", terms}};
}

PuiseuxScalar puiseux_from_json(const json& j) {
    std::vector<PuiseuxScalar::Term> terms;
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 3) throw std::invalid_argument("Puiseux term must be [exponent, re, im]");
        terms.push_back({t[0].get<double>(), Complex(t[1].get<double>(), t[2].get<double>())});
    }
    const auto& o = j.at("order");
    const double order = o.is_null() ? std::numeric_limits<double>::infinity() : o.get<double>();
    return PuiseuxScalar(std::move(terms), order);
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string trace_csv(const ConvergenceTrace& trace) {
    std::ostringstream os;
    os << "t,h,d_H,bounded_cell_mass,solid,components,coefficient_spread,error\n";
    for (const auto& r : trace.rows) {
        std::string err = r.error;
        for (auto& ch : err)
            if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
        os << format_number(r.t) << ',' << format_number(r.h) << ',' << format_number(r.d_H) << ','
           << format_number(r.bounded_cell_mass) << ',' << (r.solid ? "true" : "false") << ',' << r.components << ','
           << format_number(r.coefficient_spread) << ',' << err << '\n';
    }
    return os.str();
}

}  // namespace amoebakit
