#pragma once

#include <span>
#include <vector>

#include "amoebakit/lpoly.hpp"

namespace amoebakit {

struct RootSolveConfig {
    /// Backward-error target |p(r)| / sum_k |c_k||r|^k for every root.
    double tolerance = 1e-10;
    int max_iterations = 200;
};

struct RootSolveResult {
    std::vector<Complex> roots;
    bool converged = true;
    int iterations = 0;
};

/// All roots (with multiplicity) of c[0] + c[1] x + ... + c[d] x^d, where c[d] != 0.
/// Leading zeros in c[0..] produce exact zero roots. Degrees 1 and 2 use closed forms;
/// higher degrees run Aberth-Ehrlich iteration from Newton-polygon initial radii.
RootSolveResult solve_univariate(std::span<const Complex> coefficients, const RootSolveConfig& config = {});

/// Relative backward error of r as a root of the polynomial.
double backward_error(std::span<const Complex> coefficients, Complex r);

}  // namespace amoebakit
