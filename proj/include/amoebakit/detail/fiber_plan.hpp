#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "amoebakit/amoeba.hpp"

namespace amoebakit::detail {

constexpr double kCancel = 64.0 * std::numeric_limits<double>::epsilon();

// Coefficient bookkeeping for one variable, shared by all fibers of a sweep.
class FiberPlan {
public:
    FiberPlan(const LaurentPolynomial& f, std::size_t variable) : variable_(variable) {
        if (f.dimension() != 2) throw std::invalid_argument("fiber sampling needs a bivariate polynomial");
        if (variable > 1) throw std::invalid_argument("variable index must be 0 or 1");
        const std::size_t other = 1 - variable;
        kmin_ = std::numeric_limits<std::int64_t>::max();
        kmax_ = std::numeric_limits<std::int64_t>::min();
        for (const auto& [alpha, a] : f.terms()) {
            terms_.push_back({alpha[variable], alpha[other], a, std::abs(a)});
            kmin_ = std::min(kmin_, alpha[variable]);
            kmax_ = std::max(kmax_, alpha[variable]);
        }
        b_.resize(static_cast<std::size_t>(kmax_ - kmin_ + 1));
        m_.resize(b_.size());
    }

    std::int64_t kmin() const { return kmin_; }

    FiberPolynomial eval(double x, double theta) {
        std::fill(b_.begin(), b_.end(), Complex{});
        std::fill(m_.begin(), m_.end(), 0.0);
        for (const auto& t : terms_) {
            const double mod = std::exp(static_cast<double>(t.e) * x);
            const auto i = static_cast<std::size_t>(t.k - kmin_);
            b_[i] += t.a * std::polar(mod, static_cast<double>(t.e) * theta);
            m_[i] += t.abs_a * mod;
        }
        std::size_t lo = 0, hi = b_.size();
        auto vanishes = [&](std::size_t i) { return std::abs(b_[i]) <= kCancel * m_[i]; };
        while (lo < hi && vanishes(lo)) ++lo;
        while (hi > lo && vanishes(hi - 1)) --hi;
        FiberPolynomial out;
        out.low_exponent = kmin_ + static_cast<std::int64_t>(lo);
        out.coefficients.assign(b_.begin() + static_cast<std::ptrdiff_t>(lo), b_.begin() + static_cast<std::ptrdiff_t>(hi));
        // interior cancellations become exact zeros
        for (std::size_t i = lo; i < hi; ++i)
            if (vanishes(i)) out.coefficients[i - lo] = Complex{};
        return out;
    }

private:
    struct Term {
        std::int64_t k, e;
        Complex a;
        double abs_a;
    };
    std::size_t variable_;
    std::int64_t kmin_ = 0, kmax_ = 0;
    std::vector<Term> terms_;
    std::vector<Complex> b_;
    std::vector<double> m_;
};

// Roots of a trimmed fiber; false on nonconvergence.
inline bool solve_fiber(const FiberPolynomial& p, const RootSolveConfig& rc, std::vector<Complex>& roots) {
    roots.clear();
    if (p.coefficients.size() <= 1) return true;
    auto r = solve_univariate(p.coefficients, rc);
    if (!r.converged) return false;
    roots = std::move(r.roots);
    return true;
}

}  // namespace amoebakit::detail
