#include "amoebakit/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amoebakit {

namespace {

// p(x) and p'(x) by Horner; for |x| > 1 the reversed polynomial keeps magnitudes bounded.
void eval_ratio(std::span<const Complex> c, Complex x, Complex& ratio, double& berr) {
    const std::size_t d = c.size() - 1;
    const double ax = std::abs(x);
    if (ax <= 1.0) {
        Complex p = c[d], dp = 0.0;
        double s = std::abs(c[d]);
        for (std::size_t k = d; k-- > 0;) {
            dp = dp * x + p;
            p = p * x + c[k];
            s = s * ax + std::abs(c[k]);
        }
        berr = std::abs(p) / s;
        ratio = p / dp;  // Newton correction p/p'
        return;
    }
    // q(y) = y^d p(1/y) = sum c[k] y^(d-k)
    const Complex y = 1.0 / x;
    const double ay = std::abs(y);
    Complex q = c[0], dq = 0.0;
    double s = std::abs(c[0]);
    for (std::size_t k = 1; k <= d; ++k) {
        dq = dq * y + q;
        q = q * y + c[k];
        s = s * ay + std::abs(c[k]);
    }
    berr = std::abs(q) / s;
    // p'/p = d/x - y^2 q'(y)/q(y)
    const Complex inv = static_cast<double>(d) * y - y * y * dq / q;
    ratio = 1.0 / inv;
}

std::vector<Complex> initial_guesses(std::span<const Complex> c) {
    const std::size_t d = c.size() - 1;
    std::vector<std::pair<double, double>> pts;  // (k, log|c_k|)
    for (std::size_t k = 0; k <= d; ++k)
        if (c[k] != Complex{}) pts.emplace_back(static_cast<double>(k), std::log(std::abs(c[k])));
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (hull.size() >= 2) {
            const auto& a = pts[hull[hull.size() - 2]];
            const auto& b = pts[hull.back()];
            const auto& p = pts[i];
            if ((b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first) >= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    std::vector<Complex> z;
    z.reserve(d);
    constexpr double sigma = 0.7;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const auto& a = pts[hull[h]];
        const auto& b = pts[hull[h + 1]];
        const auto m = static_cast<std::size_t>(b.first - a.first);
        const double r = std::exp((a.second - b.second) / static_cast<double>(m));
        for (std::size_t j = 0; j < m; ++j) {
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m) +
                               2.0 * std::numbers::pi * static_cast<double>(h) / static_cast<double>(d) + sigma;
            z.push_back(std::polar(r, ang));
        }
    }
    return z;
}

}  // namespace

double backward_error(std::span<const Complex> c, Complex r) {
    Complex ratio;
    double berr = 0.0;
    eval_ratio(c, r, ratio, berr);
    return berr;
}

RootSolveResult solve_univariate(std::span<const Complex> coefficients, const RootSolveConfig& config) {
    if (coefficients.empty() || coefficients.back() == Complex{})
        throw std::invalid_argument("leading coefficient must be nonzero");
    RootSolveResult out;
    std::size_t lead = 0;
    while (coefficients[lead] == Complex{}) ++lead;
    out.roots.assign(lead, Complex{});
    const auto c = coefficients.subspan(lead);
    const std::size_t d = c.size() - 1;
    if (d == 0) return out;
    if (d == 1) {
        out.roots.push_back(-c[0] / c[1]);
        return out;
    }
    if (d == 2) {
        Complex s = std::sqrt(c[1] * c[1] - 4.0 * c[2] * c[0]);
        if ((std::conj(c[1]) * s).real() < 0.0) s = -s;
        const Complex q = -0.5 * (c[1] + s);
        out.roots.push_back(q / c[2]);
        out.roots.push_back(c[0] / q);
        return out;
    }

    std::vector<Complex> z = initial_guesses(c);
    std::vector<bool> done(d, false);
    std::vector<Complex> ratio(d);
    int it = 0;
    for (; it < config.max_iterations; ++it) {
        bool all = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (done[i]) continue;
            double berr = 0.0;
            eval_ratio(c, z[i], ratio[i], berr);
            if (berr <= config.tolerance || !std::isfinite(std::abs(ratio[i]))) {
                done[i] = berr <= config.tolerance;
                if (done[i]) continue;
            }
            all = false;
            Complex sum = 0.0;
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            const Complex w = ratio[i] / (1.0 - ratio[i] * sum);
            if (std::isfinite(w.real()) && std::isfinite(w.imag())) z[i] -= w;
        }
        if (all) break;
    }
    out.iterations = it;
    out.converged = std::all_of(done.begin(), done.end(), [](bool b) { return b; });
    if (!out.converged) {
        // Recheck: iteration may have stopped on the last sweep without a final evaluation.
        out.converged = true;
        for (std::size_t i = 0; i < d; ++i)
            if (backward_error(c, z[i]) > config.tolerance) out.converged = false;
    }
    out.roots.insert(out.roots.end(), z.begin(), z.end());
    return out;
}

}  // namespace amoebakit
