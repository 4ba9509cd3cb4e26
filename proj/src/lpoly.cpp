#include "amoebakit/lpoly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "amoebakit/detail/exact.hpp"

namespace amoebakit {

using detail::i128;

// ---------------------------------------------------------------------------
// LaurentPolynomial

LaurentPolynomial::LaurentPolynomial(std::size_t dimension, TermMap terms)
    : dimension_(dimension), terms_(std::move(terms)) {
    if (dimension_ == 0) throw std::invalid_argument("polynomial dimension must be positive");
    if (terms_.empty()) throw std::invalid_argument("empty polynomial");
    for (const auto& [alpha, a] : terms_) {
        if (alpha.size() != dimension_)
            throw std::invalid_argument("exponent vector dimension mismatch");
        if (a == Complex{0.0, 0.0}) throw std::invalid_argument("zero coefficient stored");
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("non-finite coefficient");
        for (auto e : alpha)
            if (e > kMaxExponent || e < -kMaxExponent)
                throw std::invalid_argument("exponent out of supported range");
    }
}

std::vector<ExponentVector> LaurentPolynomial::support() const {
    std::vector<ExponentVector> out;
    out.reserve(terms_.size());
    for (const auto& [alpha, a] : terms_) out.push_back(alpha);
    return out;
}

Complex LaurentPolynomial::coefficient(const ExponentVector& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Complex{} : it->second;
}

Complex LaurentPolynomial::evaluate(std::span<const Complex> z) const {
    if (z.size() != dimension_) throw std::invalid_argument("evaluation point dimension mismatch");
    Complex sum{};
    for (const auto& [alpha, a] : terms_) {
        Complex m = a;
        for (std::size_t j = 0; j < dimension_; ++j)
            if (alpha[j] != 0) m *= std::pow(z[j], static_cast<double>(alpha[j]));
        sum += m;
    }
    return sum;
}

namespace {

std::string format_real(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string variable_name(std::size_t dim, std::size_t j) {
    if (dim == 2) return j == 0 ? "z" : "w";
    return "z" + std::to_string(j + 1);
}

}  // namespace

std::string LaurentPolynomial::to_string() const {
    std::string out;
    bool first = true;
    for (const auto& [alpha, a] : terms_) {
        std::string coef;
        bool negative = false;
        if (a.imag() == 0.0) {
            negative = a.real() < 0.0;
            coef = format_real(std::abs(a.real()));
        } else {
            coef = "(" + format_real(a.real()) + (a.imag() < 0 ? "-" : "+") +
                   format_real(std::abs(a.imag())) + "i)";
        }
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        out += coef;
        for (std::size_t j = 0; j < dimension_; ++j) {
            if (alpha[j] == 0) continue;
            out += "*" + variable_name(dimension_, j);
            if (alpha[j] != 1) out += "^(" + std::to_string(alpha[j]) + ")";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

enum class NamingMode { unknown, zw, indexed };

struct RawTerm {
    std::map<std::size_t, std::int64_t> exponents;
    Complex coefficient;
    std::size_t position;
};

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

    std::vector<RawTerm> parse_terms() {
        std::vector<RawTerm> terms;
        skip_ws();
        if (at_end()) throw ParseError("empty input", pos_);
        bool first = true;
        while (true) {
            skip_ws();
            double sign = 1.0;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1.0 : 1.0;
                ++pos_;
            } else if (!first) {
                throw ParseError("expected '+' or '-'", pos_);
            }
            first = false;
            skip_ws();
            RawTerm term = parse_term();
            term.coefficient *= sign;
            terms.push_back(std::move(term));
            skip_ws();
            if (at_end()) break;
        }
        return terms;
    }

    NamingMode mode() const { return mode_; }
    std::size_t max_index() const { return max_index_; }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    static bool is_number_start(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

    double parse_unsigned_real() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
        if (!at_end() && (peek() == 'e' || peek() == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            } else {
                pos_ = save;
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || ptr != text_.data() + pos_ || pos_ == start)
            throw ParseError("malformed number", start);
        return value;
    }

    // number ['/' number]
    double parse_rational() {
        double v = parse_unsigned_real();
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            const std::size_t at = pos_;
            if (!is_number_start(peek())) throw ParseError("expected denominator", pos_);
            const double d = parse_unsigned_real();
            if (d == 0.0) throw ParseError("division by zero", at);
            v /= d;
        }
        return v;
    }

    // '(' [sign] part { sign part } ')' with part = rational ['*'] ['i'] | 'i'
    Complex parse_parenthesized() {
        ++pos_;  // '('
        Complex value{};
        bool first = true;
        while (true) {
            skip_ws();
            if (peek() == ')') {
                if (first) throw ParseError("empty parentheses", pos_);
                ++pos_;
                return value;
            }
            double sign = 1.0;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1.0 : 1.0;
                ++pos_;
                skip_ws();
            } else if (!first) {
                throw ParseError("expected '+', '-' or ')'", pos_);
            }
            first = false;
            if (peek() == 'i') {
                ++pos_;
                value += Complex{0.0, sign};
                continue;
            }
            if (!is_number_start(peek())) throw ParseError("expected number", pos_);
            double v = sign * parse_rational();
            skip_ws();
            std::size_t save = pos_;
            if (peek() == '*') {
                ++pos_;
                skip_ws();
            }
            if (peek() == 'i') {
                ++pos_;
                value += Complex{0.0, v};
            } else {
                pos_ = save;
                value += Complex{v, 0.0};
            }
        }
    }

    std::int64_t parse_exponent() {
        skip_ws();
        bool paren = false;
        if (peek() == '(') {
            paren = true;
            ++pos_;
            skip_ws();
        }
        const std::size_t at = pos_;
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
            skip_ws();
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected integer exponent", pos_);
        std::int64_t value = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            value = value * 10 + (peek() - '0');
            if (value > kMaxExponent) throw ParseError("exponent too large", at);
            ++pos_;
        }
        if (paren) {
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
        }
        if (negative && !options_.allow_negative_exponents)
            throw ParseError("negative exponent (enable Laurent terms to allow)", at);
        return negative ? -value : value;
    }

    std::size_t parse_variable() {
        const std::size_t at = pos_;
        const char c = peek();
        ++pos_;
        if (c == 'w') {
            set_mode(NamingMode::zw, at);
            max_index_ = std::max<std::size_t>(max_index_, 2);
            return 1;
        }
        // 'z' optionally followed by an index
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::size_t idx = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                idx = idx * 10 + static_cast<std::size_t>(peek() - '0');
                if (idx > 64) throw ParseError("variable index too large", at);
                ++pos_;
            }
            if (idx == 0) throw ParseError("variable indices start at 1", at);
            set_mode(NamingMode::indexed, at);
            max_index_ = std::max(max_index_, idx);
            return idx - 1;
        }
        set_mode(NamingMode::zw, at);
        max_index_ = std::max<std::size_t>(max_index_, 2);
        return 0;
    }

    void set_mode(NamingMode m, std::size_t at) {
        if (mode_ != NamingMode::unknown && mode_ != m)
            throw ParseError("cannot mix z,w naming with z1..zn naming", at);
        mode_ = m;
    }

    RawTerm parse_term() {
        RawTerm term;
        term.position = pos_;
        term.coefficient = 1.0;
        bool has_coef = false;
        if (is_number_start(peek())) {
            term.coefficient = parse_rational();
            has_coef = true;
        } else if (peek() == '(') {
            term.coefficient = parse_parenthesized();
            has_coef = true;
        }
        skip_ws();
        bool need_factor = false;
        if (has_coef && peek() == '*') {
            ++pos_;
            skip_ws();
            need_factor = true;
        }
        bool has_factor = false;
        while (peek() == 'z' || peek() == 'w') {
            const std::size_t var = parse_variable();
            skip_ws();
            std::int64_t e = 1;
            if (peek() == '^') {
                ++pos_;
                e = parse_exponent();
                skip_ws();
            }
            term.exponents[var] += e;
            has_factor = true;
            need_factor = false;
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                need_factor = true;
                if (peek() != 'z' && peek() != 'w') throw ParseError("expected variable after '*'", pos_);
            }
        }
        if (need_factor) throw ParseError("expected variable", pos_);
        if (!has_coef && !has_factor) throw ParseError("expected term", pos_);
        if (!at_end() && peek() != '+' && peek() != '-')
            throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
        return term;
    }

    std::string_view text_;
    ParseOptions options_;
    std::size_t pos_ = 0;
    NamingMode mode_ = NamingMode::unknown;
    std::size_t max_index_ = 0;
};

}  // namespace

LaurentPolynomial parse_polynomial(std::string_view text, const ParseOptions& options) {
    Parser parser(text, options);
    std::vector<RawTerm> raw = parser.parse_terms();

    std::size_t dim = options.dimension;
    const std::size_t used = parser.mode() == NamingMode::unknown ? 0 : parser.max_index();
    if (dim == 0) dim = used == 0 ? 2 : used;
    if (used > dim) throw ParseError("variable index exceeds the requested dimension", 0);
    if (parser.mode() == NamingMode::zw && dim != 2)
        throw ParseError("z,w naming implies dimension 2", 0);

    LaurentPolynomial::TermMap terms;
    for (const auto& t : raw) {
        ExponentVector alpha(dim, 0);
        for (auto [j, e] : t.exponents) {
            if (e < 0 && !options.allow_negative_exponents)
                throw ParseError("negative exponent (enable Laurent terms to allow)", t.position);
            if (e > kMaxExponent || e < -kMaxExponent) throw ParseError("exponent too large", t.position);
            alpha[j] = e;
        }
        terms[alpha] += t.coefficient;
    }
    std::erase_if(terms, [](const auto& kv) { return kv.second == Complex{0.0, 0.0}; });
    if (terms.empty()) throw ParseError("empty polynomial (all terms cancel)", 0);
    return LaurentPolynomial(dim, std::move(terms));
}

LaurentPolynomial strip_monomial_factor(const LaurentPolynomial& f) {
    const std::size_t n = f.dimension();
    ExponentVector shift(n, 0);
    bool first = true;
    for (const auto& [alpha, a] : f.terms()) {
        for (std::size_t j = 0; j < n; ++j) shift[j] = first ? alpha[j] : std::min(shift[j], alpha[j]);
        first = false;
    }
    if (std::all_of(shift.begin(), shift.end(), [](auto s) { return s == 0; })) return f;
    LaurentPolynomial::TermMap terms;
    for (const auto& [alpha, a] : f.terms()) {
        ExponentVector b(alpha);
        for (std::size_t j = 0; j < n; ++j) b[j] -= shift[j];
        terms.emplace(std::move(b), a);
    }
    return LaurentPolynomial(n, std::move(terms));
}

// ---------------------------------------------------------------------------
// Hulls

namespace {

struct V3 {
    i128 x, y, z;
};

V3 diff3(const ExponentVector& a, const ExponentVector& b) {
    return {static_cast<i128>(a[0]) - b[0], static_cast<i128>(a[1]) - b[1],
            static_cast<i128>(a[2]) - b[2]};
}
V3 cross3(const V3& a, const V3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
i128 dot3(const V3& a, const V3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
bool is_zero(const V3& a) { return a.x == 0 && a.y == 0 && a.z == 0; }

bool on_segment3(const ExponentVector& a, const ExponentVector& b, const ExponentVector& p) {
    const V3 ab = diff3(b, a), ap = diff3(p, a);
    if (!is_zero(cross3(ab, ap))) return false;
    return dot3(ap, ab) >= 0 && dot3(diff3(p, b), diff3(a, b)) >= 0;
}

bool in_triangle3(const ExponentVector& a, const ExponentVector& b, const ExponentVector& c,
                  const ExponentVector& p) {
    const V3 n = cross3(diff3(b, a), diff3(c, a));
    if (is_zero(n)) return false;
    if (dot3(n, diff3(p, a)) != 0) return false;
    return dot3(cross3(diff3(b, a), diff3(p, a)), n) >= 0 &&
           dot3(cross3(diff3(c, b), diff3(p, b)), n) >= 0 &&
           dot3(cross3(diff3(a, c), diff3(p, c)), n) >= 0;
}

int orient3(const ExponentVector& a, const ExponentVector& b, const ExponentVector& c,
            const ExponentVector& d) {
    const V3 u = diff3(b, a), v = diff3(c, a), w = diff3(d, a);
    return detail::sign(dot3(u, cross3(v, w)));
}

bool in_tetra3(const ExponentVector& a, const ExponentVector& b, const ExponentVector& c,
               const ExponentVector& d, const ExponentVector& p) {
    const int o = orient3(a, b, c, d);
    if (o == 0) return false;
    const int s[4] = {orient3(p, b, c, d), orient3(a, p, c, d), orient3(a, b, p, d), orient3(a, b, c, p)};
    for (int v : s)
        if (v != 0 && v != o) return false;
    return true;
}

// Caratheodory: p is in the hull of S in R^3 iff it lies in a simplex spanned by at most 4 points.
bool in_hull3(std::span<const ExponentVector> s, const ExponentVector& p) {
    const std::size_t m = s.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (s[i] == p) return true;
        for (std::size_t j = i + 1; j < m; ++j) {
            if (on_segment3(s[i], s[j], p)) return true;
            for (std::size_t k = j + 1; k < m; ++k) {
                if (in_triangle3(s[i], s[j], s[k], p)) return true;
                for (std::size_t l = k + 1; l < m; ++l)
                    if (in_tetra3(s[i], s[j], s[k], s[l], p)) return true;
            }
        }
    }
    return false;
}

std::vector<ExponentVector> hull2_ccw(std::vector<ExponentVector> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 1) return pts;
    auto turn = [](const ExponentVector& o, const ExponentVector& a, const ExponentVector& b) {
        return detail::cross2(a[0] - o[0], a[1] - o[1], b[0] - o[0], b[1] - o[1]);
    };
    std::vector<ExponentVector> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && turn(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

bool in_polygon2(std::span<const ExponentVector> ccw, const ExponentVector& p) {
    if (ccw.size() == 1) return ccw[0] == p;
    if (ccw.size() == 2) {
        const auto& a = ccw[0];
        const auto& b = ccw[1];
        if (detail::cross2(b[0] - a[0], b[1] - a[1], p[0] - a[0], p[1] - a[1]) != 0) return false;
        return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
               std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
    }
    for (std::size_t i = 0; i < ccw.size(); ++i) {
        const auto& a = ccw[i];
        const auto& b = ccw[(i + 1) % ccw.size()];
        if (detail::cross2(b[0] - a[0], b[1] - a[1], p[0] - a[0], p[1] - a[1]) < 0) return false;
    }
    return true;
}

}  // namespace

int NewtonPolytope::affine_dimension() const {
    if (vertices.size() <= 1) return 0;
    if (dimension == 1 || vertices.size() == 2) return 1;
    if (dimension == 2) return 2;
    // dimension 3: check coplanarity of all vertices
    const auto& a = vertices[0];
    std::size_t j = 1;
    V3 u = diff3(vertices[j], a);
    V3 n{0, 0, 0};
    for (std::size_t k = 2; k < vertices.size() && is_zero(n); ++k) n = cross3(u, diff3(vertices[k], a));
    if (is_zero(n)) return 1;
    for (const auto& v : vertices)
        if (dot3(n, diff3(v, a)) != 0) return 3;
    return 2;
}

bool NewtonPolytope::contains(const ExponentVector& p) const {
    if (p.size() != dimension || vertices.empty()) return false;
    if (dimension == 1) return vertices.front()[0] <= p[0] && p[0] <= vertices.back()[0];
    if (dimension == 2) return in_polygon2(vertices, p);
    if (dimension == 3) return in_hull3(vertices, p);
    throw std::domain_error("hull membership implemented for dimension <= 3");
}

bool in_convex_hull(std::span<const ExponentVector> points, const ExponentVector& p) {
    if (points.empty()) return false;
    const std::size_t n = points.front().size();
    return convex_hull(n, points).contains(p);
}

NewtonPolytope convex_hull(std::size_t dimension, std::span<const ExponentVector> points) {
    if (points.empty()) throw std::invalid_argument("convex hull of an empty set");
    for (const auto& p : points)
        if (p.size() != dimension) throw std::invalid_argument("point dimension mismatch");
    NewtonPolytope out;
    out.dimension = dimension;
    std::vector<ExponentVector> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (dimension == 1) {
        out.vertices.push_back(pts.front());
        if (pts.size() > 1) out.vertices.push_back(pts.back());
    } else if (dimension == 2) {
        out.vertices = hull2_ccw(pts);
    } else if (dimension == 3) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            std::vector<ExponentVector> others;
            others.reserve(pts.size() - 1);
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (j != i) others.push_back(pts[j]);
            if (others.empty() || !in_hull3(others, pts[i])) out.vertices.push_back(pts[i]);
        }
    } else {
        throw std::domain_error("convex hull implemented for dimension <= 3");
    }
    out.lattice_points = lattice_points(out);
    return out;
}

NewtonPolytope newton_polytope(const LaurentPolynomial& f) {
    const auto s = f.support();
    return convex_hull(f.dimension(), s);
}

std::vector<ExponentVector> lattice_points(const NewtonPolytope& polytope) {
    const std::size_t n = polytope.dimension;
    if (n > 3) throw std::domain_error("lattice point enumeration implemented for dimension <= 3");
    if (polytope.vertices.empty()) return {};
    ExponentVector lo = polytope.vertices.front(), hi = polytope.vertices.front();
    for (const auto& v : polytope.vertices)
        for (std::size_t j = 0; j < n; ++j) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
    std::vector<ExponentVector> out;
    ExponentVector p = lo;
    // odometer over the bounding box; lexicographic order by construction
    while (true) {
        if (polytope.contains(p)) out.push_back(p);
        std::size_t j = n;
        while (j-- > 0) {
            if (p[j] < hi[j]) {
                ++p[j];
                break;
            }
            p[j] = lo[j];
            if (j == 0) return out;
        }
    }
}

bool is_maximally_sparse(const LaurentPolynomial& f) {
    const auto poly = newton_polytope(f);
    if (poly.vertices.size() != f.size()) return false;
    for (const auto& v : poly.vertices)
        if (!f.terms().contains(v)) return false;
    return true;
}

std::int64_t twice_area(std::span<const ExponentVector> ccw) {
    i128 s = 0;
    for (std::size_t i = 0; i < ccw.size(); ++i) {
        const auto& a = ccw[i];
        const auto& b = ccw[(i + 1) % ccw.size()];
        s += detail::cross2(a[0], a[1], b[0], b[1]);
    }
    return static_cast<std::int64_t>(s);
}

std::int64_t lattice_length(const ExponentVector& a, const ExponentVector& b) {
    std::int64_t g = 0;
    for (std::size_t j = 0; j < a.size(); ++j) g = std::gcd(g, b[j] > a[j] ? b[j] - a[j] : a[j] - b[j]);
    return g;
}

}  // namespace amoebakit
