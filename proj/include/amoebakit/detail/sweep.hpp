#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace amoebakit::detail {

inline double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    return a;
}

/// Distance between two roots given as complex logarithms (log|r| + i arg r).
inline double log_polar_distance(std::complex<double> a, std::complex<double> b) {
    return std::hypot(a.real() - b.real(), wrap_angle(a.imag() - b.imag()));
}

/// Greedy closest-pair matching of two equally sized root sets. Returns the largest
/// matched distance; match[i] is the index in b paired with a[i].
inline double match_roots(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b,
                          std::vector<std::size_t>& match) {
    const std::size_t n = a.size();
    match.assign(n, n);
    std::vector<bool> used(n, false);
    double worst = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        double best = HUGE_VAL;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (match[i] != n) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j]) continue;
                const double d = log_polar_distance(a[i], b[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        match[bi] = bj;
        used[bj] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

/// Follows the roots of a one-parameter family of univariate polynomials between s0 and
/// s1. `fiber(s, logs)` fills the complex logarithms of the roots and returns false if the
/// sample is unusable. Consecutive samples are matched root to root and `segment(a, b)` is
/// called for every matched pair; steps whose displacement exceeds max_jump are bisected
/// up to max_depth times. Unmatched samples fall back to segment(a, a).
template <class Fiber, class Segment>
class FiberTracer {
public:
    /// With angular, only the change of argument counts towards max_jump.
    FiberTracer(Fiber& fiber, Segment& segment, double max_jump, int max_depth, bool angular = false)
        : fiber_(fiber), segment_(segment), max_jump_(max_jump), max_depth_(max_depth), angular_(angular) {}

    /// Samples s0 + (s1 - s0) k / steps for k = 0..steps. With closed, the sample at s1 is
    /// taken to be the one at s0 (periodic parameter).
    void run(double s0, double s1, int steps, bool closed) {
        std::vector<std::complex<double>> first, prev, cur;
        bool ok_first = fiber_(s0, first);
        prev = first;
        bool ok_prev = ok_first;
        double sp = s0;
        for (int k = 1; k <= steps; ++k) {
            const double s = s0 + (s1 - s0) * static_cast<double>(k) / static_cast<double>(steps);
            bool ok;
            if (closed && k == steps) {
                cur = first;
                ok = ok_first;
            } else {
                ok = fiber_(s, cur);
            }
            refine(sp, prev, ok_prev, s, cur, ok, 0);
            prev.swap(cur);
            ok_prev = ok;
            sp = s;
        }
    }

private:
    void emit_points(const std::vector<std::complex<double>>& v) {
        for (const auto& r : v) segment_(r, r);
    }

    void refine(double sa, const std::vector<std::complex<double>>& a, bool oka, double sb,
                const std::vector<std::complex<double>>& b, bool okb, int depth) {
        if (oka && okb && a.size() == b.size()) {
            double worst = match_roots(a, b, match_);
            if (angular_) {
                worst = 0.0;
                for (std::size_t i = 0; i < a.size(); ++i)
                    worst = std::max(worst, std::abs(wrap_angle(a[i].imag() - b[match_[i]].imag())));
            }
            if (worst <= max_jump_ || depth >= max_depth_) {
                const auto m = match_;
                for (std::size_t i = 0; i < a.size(); ++i) segment_(a[i], b[m[i]]);
                return;
            }
        } else if (depth >= max_depth_) {
            if (oka) emit_points(a);
            if (okb) emit_points(b);
            return;
        }
        const double sm = 0.5 * (sa + sb);
        std::vector<std::complex<double>> mid;
        const bool okm = fiber_(sm, mid);
        refine(sa, a, oka, sm, mid, okm, depth + 1);
        refine(sm, mid, okm, sb, b, okb, depth + 1);
    }

    Fiber& fiber_;
    Segment& segment_;
    double max_jump_;
    int max_depth_;
    bool angular_;
    std::vector<std::size_t> match_;
};

}  // namespace amoebakit::detail
