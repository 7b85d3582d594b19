// Copyright 2026 The fibreforms Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fibreforms/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "fibreforms/error.hpp"

namespace fibreforms {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("cannot convert non-finite value to a rational");
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("0", "empty number");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0) throw ParseError("0", "bad rational '" + s + "'");
        if (q.get_den() == 0) throw ParseError("0", "zero denominator");
        q.canonicalize();
        return q;
    }
    // decimal with optional exponent, converted exactly from its digits
    std::size_t pos = 0;
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
    mpz_class mant = 0;
    long scale = 0;
    bool digits = false, dot = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mant = mant * 10 + (c - '0');
            if (dot) --scale;
            digits = true;
        } else if (c == '.' && !dot) {
            dot = true;
        } else {
            break;
        }
    }
    if (!digits) throw ParseError("0", "bad number '" + s + "'");
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(s.substr(pos), &used);
        } catch (const std::exception&) {
            throw ParseError(std::to_string(pos), "bad exponent in '" + s + "'");
        }
        pos += used;
        scale += e;
    }
    if (pos != s.size()) throw ParseError(std::to_string(pos), "trailing characters in '" + s + "'");
    Rational q(mant);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
    if (scale >= 0) q *= p10; else q /= p10;
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Polynomial Polynomial::constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponents{}, c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw DimensionError("variable index out of range");
    Exponents e{};
    e[static_cast<std::size_t>(i)] = 1;
    return monomial(nvars, e, 1);
}

Polynomial Polynomial::monomial(int nvars, const Exponents& e, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(e, c);
    return p;
}

bool Polynomial::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
}

int Polynomial::total_degree() const noexcept {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (auto v : e) s += v;
        d = std::max(d, s);
    }
    return d;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (nvars_ != o.nvars_) throw DimensionError("polynomial variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (nvars_ != o.nvars_) throw DimensionError("polynomial variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw DimensionError("polynomial variable count mismatch");
    Polynomial r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e{};
            for (std::size_t i = 0; i < e.size(); ++i) {
                const int s = ea[i] + eb[i];
                if (s > 255) throw DomainError("polynomial exponent overflow");
                e[i] = static_cast<std::uint8_t>(s);
            }
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = constant(nvars_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return r;
}

Polynomial Polynomial::partial(int i) const {
    if (i < 0 || i >= nvars_) throw DimensionError("derivative index out of range");
    Polynomial r(nvars_);
    const auto k = static_cast<std::size_t>(i);
    for (const auto& [e, c] : terms_) {
        if (e[k] == 0) continue;
        Exponents d = e;
        d[k] = static_cast<std::uint8_t>(e[k] - 1);
        r.add_term(d, c * e[k]);
    }
    return r;
}

Polynomial Polynomial::compose(std::span<const Polynomial> subs) const {
    if (static_cast<int>(subs.size()) != nvars_) throw DimensionError("compose needs one substitution per variable");
    const int out_vars = subs.empty() ? 0 : subs[0].nvars();
    for (const auto& s : subs)
        if (s.nvars() != out_vars) throw DimensionError("substitutions disagree on variable count");
    // cache powers of each substitution
    std::vector<std::vector<Polynomial>> powers(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) powers[i].push_back(constant(out_vars, 1));
    auto power = [&](std::size_t i, int k) -> const Polynomial& {
        auto& pw = powers[i];
        while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * subs[i]);
        return pw[static_cast<std::size_t>(k)];
    };
    Polynomial r(out_vars);
    for (const auto& [e, c] : terms_) {
        Polynomial t = constant(out_vars, c);
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (e[i]) t = t * power(i, e[i]);
        r += t;
    }
    return r;
}

Polynomial Polynomial::translate(std::span<const Rational> shift) const {
    if (static_cast<int>(shift.size()) != nvars_) throw DimensionError("shift dimension mismatch");
    std::vector<Polynomial> subs;
    subs.reserve(shift.size());
    for (int i = 0; i < nvars_; ++i)
        subs.push_back(variable(nvars_, i) + constant(nvars_, shift[static_cast<std::size_t>(i)]));
    return compose(subs);
}

Polynomial Polynomial::radial_integral(int ell) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        int deg = 0;
        for (auto v : e) deg += v;
        r.add_term(e, c / Rational(ell + deg));
    }
    return r;
}

double Polynomial::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) < nvars_) throw DimensionError("evaluation point too short");
    double s = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c.get_d();
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) t *= x[static_cast<std::size_t>(i)];
        s += t;
    }
    return s;
}

Rational Polynomial::eval_exact(std::span<const Rational> x) const {
    if (static_cast<int>(x.size()) < nvars_) throw DimensionError("evaluation point too short");
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) t *= x[static_cast<std::size_t>(i)];
        s += t;
    }
    return s;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational a = abs(c);
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        bool unit = (a == 1);
        bool any = false;
        if (!unit) {
            os << a.get_str();
            any = true;
        }
        for (int i = 0; i < nvars_; ++i) {
            const int k = e[static_cast<std::size_t>(i)];
            if (!k) continue;
            if (any) os << '*';
            os << 'x' << (i + 1);
            if (k > 1) os << '^' << k;
            any = true;
        }
        if (!any) os << '1';
        first = false;
    }
    return os.str();
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, int nvars) : s_(text), nvars_(nvars) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("offset " + std::to_string(pos_), msg + " in polynomial '" + std::string(s_) + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial p = term();
        for (;;) {
            if (accept('+')) p += term();
            else if (accept('-')) p -= term();
            else return p;
        }
    }

    Polynomial term() {
        Polynomial p = unary();
        for (;;) {
            if (accept('*')) {
                p = p * unary();
            } else if (accept('/')) {
                Polynomial d = unary();
                if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
                p *= Rational(1) / d.terms().begin()->second;
            } else {
                return p;
            }
        }
    }

    Polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = primary();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        }
        return base;
    }

    Polynomial primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (c == 'x') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected variable number after 'x'");
            int v = std::stoi(std::string(s_.substr(start, pos_ - start)));
            if (v < 1 || v > nvars_) fail("variable x" + std::to_string(v) + " out of range");
            return Polynomial::variable(nvars_, v - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
                ++pos_;
                if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            }
            return Polynomial::constant(nvars_, parse_rational(s_.substr(start, pos_ - start)));
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    int nvars_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, int nvars) { return PolyParser(text, nvars).parse(); }

}  // namespace fibreforms
