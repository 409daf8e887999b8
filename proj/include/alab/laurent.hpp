#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "alab/common.hpp"
#include "alab/numeric.hpp"

namespace alab {

using Exponent = std::vector<int>;

/// Sparse integer Laurent polynomial in `dims` commuting variables u1..ud.
/// Terms map exponent vectors to nonzero arbitrary-precision coefficients;
/// the zero polynomial is the empty map. Values are immutable once built and
/// safe to share across threads.
class LaurentPoly {
public:
    using TermMap = std::map<Exponent, BigInt>;

    explicit LaurentPoly(int dims) : dims_(dims) {
        if (dims < 1) fail("domain", "LaurentPoly: dims must be >= 1");
    }

    static LaurentPoly parse(const std::string& text, int dims);

    int dims() const { return dims_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Adds c*u^m, dropping the term if the total cancels.
    void add_term(const Exponent& m, const BigInt& c) {
        if (static_cast<int>(m.size()) != dims_)
            fail("domain", "LaurentPoly: exponent arity mismatch");
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    BigInt coeff(const Exponent& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    /// f*(u) = f(u^{-1}): negates every exponent vector.
    LaurentPoly adjoint() const {
        LaurentPoly r(dims_);
        for (const auto& [m, c] : terms_) {
            Exponent n(m);
            for (int& e : n) e = -e;
            r.terms_.emplace(std::move(n), c);
        }
        return r;
    }

    /// d/du_j, mapping (m, c) to (m - e_j, c*m_j). `axis` is 1-based.
    LaurentPoly derivative(int axis) const {
        if (axis < 1 || axis > dims_) fail("domain", "derivative: axis out of range");
        LaurentPoly r(dims_);
        for (const auto& [m, c] : terms_) {
            if (m[axis - 1] == 0) continue;
            Exponent n(m);
            n[axis - 1] -= 1;
            r.add_term(n, c * m[axis - 1]);
        }
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_same_dims(b);
        LaurentPoly r(a);
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_same_dims(b);
        LaurentPoly r(a);
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_same_dims(b);
        LaurentPoly r(a.dims_);
        for (const auto& [m, cm] : a.terms_) {
            for (const auto& [n, cn] : b.terms_) {
                Exponent s(m);
                for (int j = 0; j < a.dims_; ++j) s[j] += n[j];
                r.add_term(s, cm * cn);
            }
        }
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.dims_ == b.dims_ && a.terms_ == b.terms_;
    }

    LaurentPoly pow(int k) const {
        if (k < 0) fail("domain", "pow: negative exponent");
        LaurentPoly r(dims_);
        r.add_term(Exponent(dims_, 0), 1);
        LaurentPoly base(*this);
        while (k > 0) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    /// f(e^{2pi i t}) by compensated summation in fixed term order.
    Complex eval_angles(const std::vector<double>& t) const {
        if (static_cast<int>(t.size()) != dims_) fail("domain", "eval_angles: arity mismatch");
        KahanSum re, im;
        for (const auto& [m, c] : terms_) {
            double phase = 0.0;
            for (int j = 0; j < dims_; ++j) phase += m[j] * t[j];
            const double cd = c.convert_to<double>();
            const double a = kTwoPi * phase;
            re.add(cd * std::cos(a));
            im.add(cd * std::sin(a));
        }
        return {re.value(), im.value()};
    }

    /// Sum of |coefficients| as a double (sup of |f| on the torus).
    double l1_norm() const {
        BigInt s = 0;
        for (const auto& [m, c] : terms_) s += abs(c);
        return s.convert_to<double>();
    }

    /// 2*pi*sum |f_m|*|m|_1, a Lipschitz constant for f on S^d under the
    /// chordal metric.
    double lipschitz() const {
        BigInt s = 0;
        for (const auto& [m, c] : terms_) {
            long long l1 = 0;
            for (int e : m) l1 += e < 0 ? -e : e;
            s += abs(c) * l1;
        }
        return kTwoPi * s.convert_to<double>();
    }

    Exponent support_min() const {
        require_nonzero("support_min");
        Exponent lo = terms_.begin()->first;
        for (const auto& [m, c] : terms_)
            for (int j = 0; j < dims_; ++j) lo[j] = std::min(lo[j], m[j]);
        return lo;
    }

    Exponent support_max() const {
        require_nonzero("support_max");
        Exponent hi = terms_.begin()->first;
        for (const auto& [m, c] : terms_)
            for (int j = 0; j < dims_; ++j) hi[j] = std::max(hi[j], m[j]);
        return hi;
    }

    /// True for the units +-u^m of the Laurent ring.
    bool is_unit() const {
        return terms_.size() == 1 &&
               (terms_.begin()->second == 1 || terms_.begin()->second == -1);
    }

    /// Same polynomial with one more variable appended (exponent 0 in it).
    LaurentPoly extended(int extra_dims = 1) const {
        LaurentPoly r(dims_ + extra_dims);
        for (const auto& [m, c] : terms_) {
            Exponent n(m);
            n.resize(dims_ + extra_dims, 0);
            r.terms_.emplace(std::move(n), c);
        }
        return r;
    }

    std::string str() const;

private:
    void check_same_dims(const LaurentPoly& o) const {
        if (dims_ != o.dims_) fail("domain", "polynomial dims mismatch");
    }
    void require_nonzero(const char* who) const {
        if (terms_.empty()) fail("domain", std::string(who) + ": zero polynomial");
    }

    int dims_;
    TermMap terms_;
};

/// Monomial helpers.
inline LaurentPoly laurent_constant(int dims, const BigInt& c) {
    LaurentPoly f(dims);
    f.add_term(Exponent(dims, 0), c);
    return f;
}

inline LaurentPoly laurent_monomial(int dims, int axis, int exp, const BigInt& c = 1) {
    LaurentPoly f(dims);
    Exponent m(dims, 0);
    m[axis - 1] = exp;
    f.add_term(m, c);
    return f;
}

enum class SymmetryKind { symmetric, skew, none };

struct SymmetryResult {
    SymmetryKind kind = SymmetryKind::none;
    Exponent shift;  // m with f*(u) = +-u^m f(u); empty when kind == none
};

/// Tests whether f*(u) = +-u^m f(u) for some m. The reflection of the support
/// through the origin forces m = -(min supp + max supp); the candidate is then
/// verified termwise.
inline SymmetryResult essential_symmetry(const LaurentPoly& f) {
    if (f.is_zero()) fail("domain", "essential_symmetry: zero polynomial");
    const Exponent lo = f.support_min();
    const Exponent hi = f.support_max();
    Exponent m(f.dims());
    for (int j = 0; j < f.dims(); ++j) m[j] = -(lo[j] + hi[j]);

    // f* = u^m f termwise means f_n = sign * f_{-n-m} for all n.
    int sign = 0;
    for (const auto& [n, c] : f.terms()) {
        Exponent r(f.dims());
        for (int j = 0; j < f.dims(); ++j) r[j] = -n[j] - m[j];
        const BigInt d = f.coeff(r);
        if (d == 0) return {};
        if (c == d) {
            if (sign == -1) return {};
            sign = 1;
        } else if (c == -d) {
            if (sign == 1) return {};
            sign = -1;
        } else {
            return {};
        }
    }
    return {sign >= 0 ? SymmetryKind::symmetric : SymmetryKind::skew, m};
}

// ---------------------------------------------------------------------------
// Text grammar: terms joined by + and -, a term being an optional integer
// coefficient, an optional '*', and factors uK^E with K a 1-based variable
// index and E a possibly negative integer; whitespace is ignored.
// ---------------------------------------------------------------------------

namespace detail {

class LaurentParser {
public:
    LaurentParser(const std::string& text, int dims) : text_(text), dims_(dims) {}

    LaurentPoly run() {
        LaurentPoly out(dims_);
        skip_ws();
        if (eof()) fail_at("empty polynomial expression", pos_);
        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1 : 1;
            ++pos_;
        }
        parse_term(out, sign);
        skip_ws();
        while (!eof()) {
            const char c = peek();
            if (c != '+' && c != '-') fail_at("expected '+' or '-'", pos_);
            ++pos_;
            parse_term(out, c == '-' ? -1 : 1);
            skip_ws();
        }
        return out;
    }

private:
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
        fail("parse", "syntax error at position " + std::to_string(at) + ": " + what);
    }

    BigInt parse_digits() {
        const std::size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start) fail_at("expected digits", start);
        return BigInt(text_.substr(start, pos_ - start));
    }

    long long parse_int() {
        long long sign = 1;
        if (!eof() && (peek() == '+' || peek() == '-')) {
            if (peek() == '-') sign = -1;
            ++pos_;
        }
        skip_ws();
        return sign * parse_digits().convert_to<long long>();
    }

    void parse_term(LaurentPoly& out, int sign) {
        skip_ws();
        if (eof()) fail_at("expected term", pos_);
        BigInt coef = sign;
        bool saw_anything = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coef *= parse_digits();
            saw_anything = true;
            skip_ws();
            if (!eof() && peek() == '*') {
                ++pos_;
                skip_ws();
            }
        }
        Exponent m(dims_, 0);
        while (!eof() && (peek() == 'u' || peek() == '*')) {
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                continue;
            }
            const std::size_t upos = pos_;
            ++pos_;  // 'u'
            const long long idx = parse_digits().convert_to<long long>();
            if (idx < 1 || idx > dims_)
                fail("parse", "variable u" + std::to_string(idx) + " at position " +
                                  std::to_string(upos) + " exceeds dims=" + std::to_string(dims_));
            long long exp = 1;
            skip_ws();
            if (!eof() && peek() == '^') {
                ++pos_;
                skip_ws();
                exp = parse_int();
            }
            m[idx - 1] += static_cast<int>(exp);
            saw_anything = true;
            skip_ws();
        }
        if (!saw_anything) fail_at("expected coefficient or variable factor", pos_);
        out.add_term(m, coef);
    }

    const std::string& text_;
    int dims_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline LaurentPoly LaurentPoly::parse(const std::string& text, int dims) {
    if (dims < 1) fail("domain", "parse_laurent: dims must be >= 1");
    return detail::LaurentParser(text, dims).run();
}

inline std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        BigInt a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        const bool has_vars = std::any_of(m.begin(), m.end(), [](int e) { return e != 0; });
        if (a != 1 || !has_vars) os << a.str();
        bool star = a != 1;
        for (int j = 0; j < dims_; ++j) {
            if (m[j] == 0) continue;
            if (star) os << "*";
            os << "u" << (j + 1);
            if (m[j] != 1) os << "^" << m[j];
            star = true;
        }
    }
    return os.str();
}

}  // namespace alab
