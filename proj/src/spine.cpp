#include "amoebakit/spine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace amoebakit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Pairwise summation; the split points depend only on the length.
double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

struct TorusTerm {
    Complex a;  // coefficient times e^{<alpha, x>}, scaled by the largest such modulus
    std::int64_t e0, e1;
};

// Angles are exact table lookups: e^{i 2pi (e0 i + e1 j) / n}.
double row_sum(const std::vector<TorusTerm>& terms, const std::vector<Complex>& unit, int i, std::vector<double>& buf) {
    const auto n = static_cast<std::int64_t>(unit.size());
    for (std::int64_t j = 0; j < n; ++j) {
        Complex s{};
        for (const auto& t : terms) {
            const std::int64_t m = ((t.e0 * i + t.e1 * j) % n + n) % n;
            s += t.a * unit[static_cast<std::size_t>(m)];
        }
        buf[static_cast<std::size_t>(j)] = 0.5 * std::log(std::norm(s));
    }
    return pairwise_sum(buf.data(), buf.size());
}

}  // namespace

double torus_mean_log(const LaurentPolynomial& f, const Point2& x, int n, Execution exec) {
    if (f.dimension() != 2) throw std::invalid_argument("torus quadrature is implemented for n = 2");
    if (n < 1) throw std::invalid_argument("quadrature size must be positive");
    std::vector<TorusTerm> terms;
    std::vector<double> log_mod;
    for (const auto& [alpha, a] : f.terms()) {
        log_mod.push_back(std::log(std::abs(a)) + static_cast<double>(alpha[0]) * x[0] +
                          static_cast<double>(alpha[1]) * x[1]);
        terms.push_back({a, alpha[0], alpha[1]});
    }
    const double top = *std::max_element(log_mod.begin(), log_mod.end());
    for (std::size_t k = 0; k < terms.size(); ++k)
        terms[k].a = std::polar(std::exp(log_mod[k] - top), std::arg(terms[k].a));
    std::vector<Complex> unit(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) unit[static_cast<std::size_t>(m)] = std::polar(1.0, kTwoPi * m / n);
    std::vector<double> rows(static_cast<std::size_t>(n));
    if (exec == Execution::serial) {
        std::vector<double> buf(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = row_sum(terms, unit, i, buf);
    } else {
#pragma omp parallel
        {
            std::vector<double> buf(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
            for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = row_sum(terms, unit, i, buf);
        }
    }
    return top + pairwise_sum(rows.data(), rows.size()) / (static_cast<double>(n) * n);
}

RonkinEstimate c_alpha(const LaurentPolynomial& f, const ExponentVector& alpha, const Point2& x, int quad_n,
                       const FiberSolveConfig& cfg) {
    if (quad_n < 64) throw std::invalid_argument("quad_n must be at least 64");
    if (alpha.size() != 2) throw std::invalid_argument("alpha must have dimension 2");
    const auto ord = order_of_point(f, x, cfg);
    if (ord != alpha) {
        std::ostringstream os;
        os << "point has order (" << ord[0] << "," << ord[1] << "), not (" << alpha[0] << "," << alpha[1] << ")";
        throw std::invalid_argument(os.str());
    }
    const double shift = static_cast<double>(alpha[0]) * x[0] + static_cast<double>(alpha[1]) * x[1];
    RonkinEstimate est;
    est.coarse = torus_mean_log(f, x, quad_n) - shift;
    est.value = torus_mean_log(f, x, 2 * quad_n) - shift;
    if (!(std::abs(est.difference()) <= kRichardsonTolerance)) {
        std::ostringstream os;
        os << "Richardson check failed: |Q(" << quad_n << ") - Q(" << 2 * quad_n << ")| = " << std::abs(est.difference());
        throw QuadratureError(os.str());
    }
    return est;
}

SpineModel build_spine(const LaurentPolynomial& f, const ComponentReport& report, int quad_n,
                       const FiberSolveConfig& cfg) {
    if (report.components.empty()) throw std::invalid_argument("component report is empty");
    SpineModel m;
    for (const auto& comp : report.components) {
        m.orders_present.push_back(comp.order);
        m.c[comp.order] = c_alpha(f, comp.order, comp.witness, quad_n, cfg).value;
    }
    std::sort(m.orders_present.begin(), m.orders_present.end());
    auto dual = tropical_dual(m.tropical());
    m.spine = std::move(dual.curve);
    m.subdivision = std::move(dual.subdivision);
    return m;
}

PRFunction pr_function(const SpineModel& spine, const NewtonPolytope& polytope) {
    PRFunction nu;
    const auto verts = spine.subdivision.vertices();
    for (const auto& alpha : polytope.lattice_points) {
        if (std::binary_search(verts.begin(), verts.end(), alpha)) {
            nu.values[alpha] = -spine.c.at(alpha);
            continue;
        }
        const auto cell = spine.subdivision.locate(alpha);
        if (cell == kNoIndex) throw std::logic_error("lattice point outside the spine subdivision");
        const auto& pl = spine.subdivision.cells[cell];
        nu.values[alpha] = -(pl.slope[0] * static_cast<double>(alpha[0]) +
                             pl.slope[1] * static_cast<double>(alpha[1]) + pl.offset);
    }
    return nu;
}

std::vector<double> default_t_schedule() { return {std::exp(-1.0), std::exp(-2.0), std::exp(-3.0), std::exp(-4.0)}; }

namespace {

// 1/e computed in floating point may differ from a caller's exp(-1) by an ulp.
bool t_in_range(double t) { return t > 0.0 && t <= std::exp(-1.0) * (1.0 + 1e-12); }

}  // namespace

DeformationFamily make_family(const LaurentPolynomial& f, const PRFunction& nu, std::vector<double> t_schedule) {
    for (std::size_t i = 0; i < t_schedule.size(); ++i) {
        if (!t_in_range(t_schedule[i])) throw std::invalid_argument("t_schedule entries must lie in (0, 1/e]");
        if (i > 0 && !(t_schedule[i] < t_schedule[i - 1]))
            throw std::invalid_argument("t_schedule must be strictly decreasing");
    }
    DeformationFamily fam{f, nu, {}, std::move(t_schedule)};
    for (const auto& [alpha, a] : f.terms()) {
        const auto it = nu.values.find(alpha);
        if (it == nu.values.end()) throw std::invalid_argument("nu is not defined on the support");
        fam.xi[alpha] = a * std::exp(it->second);
    }
    return fam;
}

LaurentPolynomial instantiate_family(const DeformationFamily& fam, double t) {
    if (!t_in_range(t)) throw std::invalid_argument("t must lie in (0, 1/e]");
    LaurentPolynomial::TermMap terms;
    const double lt = std::log(t);
    for (const auto& [alpha, xi] : fam.xi) terms[alpha] = xi * std::exp(fam.nu.values.at(alpha) * lt);
    return LaurentPolynomial(fam.base.dimension(), std::move(terms));
}

}  // namespace amoebakit
