#include "amoebakit/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace amoebakit {

namespace {

// Relative size below which a summed coefficient counts as cancelled.
constexpr double kCancelRel = 8.0 * std::numeric_limits<double>::epsilon();

using Term = PuiseuxScalar::Term;

void finish(std::vector<Term>& terms, double order) {
    std::erase_if(terms, [&](const Term& t) { return t.exponent >= order || t.coefficient == Complex{}; });
}

}  // namespace

PuiseuxScalar::PuiseuxScalar(std::vector<Term> terms, double order) : order_(order) {
    if (std::isnan(order)) throw std::invalid_argument("truncation order is NaN");
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!std::isfinite(terms[i].exponent)) throw std::invalid_argument("Puiseux exponents must be finite");
        if (!std::isfinite(terms[i].coefficient.real()) || !std::isfinite(terms[i].coefficient.imag()))
            throw std::invalid_argument("Puiseux coefficients must be finite");
        if (i > 0 && terms[i].exponent == terms[i - 1].exponent)
            throw std::invalid_argument("repeated Puiseux exponent");
    }
    finish(terms, order_);
    if (terms.empty() && std::isfinite(order_))
        throw TruncationExhausted("no known terms below the truncation order");
    terms_ = std::move(terms);
}

PuiseuxScalar PuiseuxScalar::monomial(Complex c, double e) {
    if (c == Complex{}) return {};
    return PuiseuxScalar({{e, c}});
}

const Term& PuiseuxScalar::leading() const {
    if (terms_.empty()) throw std::domain_error("zero has no leading term");
    return terms_.front();
}

PuiseuxScalar PuiseuxScalar::operator-() const {
    PuiseuxScalar out = *this;
    for (auto& t : out.terms_) t.coefficient = -t.coefficient;
    return out;
}

PuiseuxScalar operator+(const PuiseuxScalar& a, const PuiseuxScalar& b) {
    const double order = std::min(a.order_, b.order_);
    std::vector<Term> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exponent < b.terms_[j].exponent)) {
            out.push_back(a.terms_[i++]);
        } else if (i == a.terms_.size() || b.terms_[j].exponent < a.terms_[i].exponent) {
            out.push_back(b.terms_[j++]);
        } else {
            const Complex x = a.terms_[i].coefficient, y = b.terms_[j].coefficient;
            const Complex s = x + y;
            if (std::abs(s) > kCancelRel * (std::abs(x) + std::abs(y))) out.push_back({a.terms_[i].exponent, s});
            ++i;
            ++j;
        }
    }
    finish(out, order);
    PuiseuxScalar r;
    r.order_ = order;
    if (out.empty() && std::isfinite(order))
        throw TruncationExhausted("sum cancels every known term; leading term is beyond order " +
                                  std::to_string(order));
    r.terms_ = std::move(out);
    if (r.terms_.empty()) r.order_ = std::numeric_limits<double>::infinity();
    return r;
}

PuiseuxScalar operator-(const PuiseuxScalar& a, const PuiseuxScalar& b) { return a + (-b); }

PuiseuxScalar operator*(const PuiseuxScalar& a, const PuiseuxScalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    // the unknown tail of either factor first appears at its order plus the other's lead
    const double order = std::min(a.order_ + b.leading().exponent, b.order_ + a.leading().exponent);
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) prod.push_back({x.exponent + y.exponent, x.coefficient * y.coefficient});
    std::stable_sort(prod.begin(), prod.end(), [](const Term& p, const Term& q) { return p.exponent < q.exponent; });
    std::vector<Term> out;
    for (const auto& t : prod) {
        if (!out.empty() && out.back().exponent == t.exponent)
            out.back().coefficient += t.coefficient;
        else
            out.push_back(t);
    }
    finish(out, order);
    PuiseuxScalar r;
    r.order_ = order;
    r.terms_ = std::move(out);  // leading product of nonzero leads never cancels
    return r;
}

std::string PuiseuxScalar::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << " + ";
        os << "(" << terms_[i].coefficient.real() << (terms_[i].coefficient.imag() < 0 ? "" : "+")
           << terms_[i].coefficient.imag() << "i)*t^" << terms_[i].exponent;
    }
    if (std::isfinite(order_)) os << " + O(t^" << order_ << ")";
    return os.str();
}

double val(const PuiseuxScalar& a) {
    if (a.is_zero()) return -std::numeric_limits<double>::infinity();
    return -a.leading().exponent;
}

Complex w_map(const PuiseuxScalar& a) {
    if (a.is_zero()) throw std::domain_error("w is undefined at zero");
    return std::polar(std::exp(val(a)), std::arg(a.leading().coefficient));
}

std::vector<Complex> W_map(const std::vector<PuiseuxScalar>& point) {
    std::vector<Complex> out;
    out.reserve(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (point[i].is_zero()) throw std::domain_error("W is undefined: coordinate " + std::to_string(i) + " is zero");
        out.push_back(w_map(point[i]));
    }
    return out;
}

std::vector<Complex> univariate_W_roots(int k, const PuiseuxScalar& a0) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (a0.is_zero()) throw std::domain_error("a0 must be nonzero");
    const double kd = k;
    const double modulus = std::exp(val(a0) / kd);
    const double phase = std::arg(a0.leading().coefficient) / kd;
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int l = 0; l < k; ++l) out.push_back(std::polar(modulus, phase + (2.0 * l + 1.0) * std::numbers::pi / kd));
    return out;
}

}  // namespace amoebakit
