#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amoebakit/lpoly.hpp"

namespace amoebakit {

/// Raised when cancellation removes every stored term of a truncated series, so the
/// leading term of the result lies beyond the known part.
class TruncationExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite truncation of a Puiseux series sum xi_j t^j with real exponents.
///
/// Terms are sorted by strictly increasing exponent with nonzero coefficients. `order` is
/// the truncation order: terms with exponent >= order are unknown. An infinite order
/// means the stored terms are the whole series; the empty exact series is zero.
class PuiseuxScalar {
public:
    struct Term {
        double exponent;
        Complex coefficient;
        bool operator==(const Term&) const = default;
    };

    PuiseuxScalar() = default;
    explicit PuiseuxScalar(std::vector<Term> terms, double order = std::numeric_limits<double>::infinity());

    /// c t^e, exact.
    static PuiseuxScalar monomial(Complex c, double e);

    const std::vector<Term>& terms() const { return terms_; }
    double order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const Term& leading() const;

    PuiseuxScalar operator-() const;
    friend PuiseuxScalar operator+(const PuiseuxScalar& a, const PuiseuxScalar& b);
    friend PuiseuxScalar operator-(const PuiseuxScalar& a, const PuiseuxScalar& b);
    friend PuiseuxScalar operator*(const PuiseuxScalar& a, const PuiseuxScalar& b);

    bool operator==(const PuiseuxScalar&) const = default;

    std::string to_string() const;

private:
    std::vector<Term> terms_;
    double order_ = std::numeric_limits<double>::infinity();
};

/// -min exponent; -infinity for zero.
double val(const PuiseuxScalar& a);

/// e^{val(a) + i arg(leading coefficient)}.
Complex w_map(const PuiseuxScalar& a);

/// Coordinatewise w_map; throws on a zero coordinate.
std::vector<Complex> W_map(const std::vector<PuiseuxScalar>& point);

/// W of the roots of z^k + a0: e^{(val(a0) + i arg a0)/k} e^{i(2l+1)pi/k}, l = 0..k-1.
std::vector<Complex> univariate_W_roots(int k, const PuiseuxScalar& a0);

}  // namespace amoebakit
