#include "pqg/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <unordered_map>

namespace pqg {

std::string Symbol::str() const {
    switch (var) {
    case 's':
        return name;
    case 'n':
        return name + "(" + std::to_string(off) + ")";
    default: {
        std::string s = name + "(" + var;
        if (off > 0) s += "+" + std::to_string(off);
        if (off < 0) s += std::to_string(off);
        return s + ")";
    }
    }
}

namespace {

int cmp_rad(const mpz_class& a, const mpz_class& b) {
    int c = mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
    c = (c > 0) - (c < 0);
    if (c != 0) return c;
    return sgn(a) - sgn(b) < 0 ? -1 : (sgn(a) == sgn(b) ? 0 : 1);
}

int cmp_key(const Term& a, const Term& b) {
    if (a.mono != b.mono) return a.mono < b.mono ? -1 : 1;
    return cmp_rad(a.rad, b.rad);
}

// Product of sqrt(a)*sqrt(b) for signed square-free a, b; folds integer part into coef.
mpz_class mul_rad(const mpz_class& a, const mpz_class& b, mpq_class& coef) {
    if (a == 1) return b;
    if (b == 1) return a;
    mpz_class aa = abs(a), bb = abs(b), g;
    mpz_gcd(g.get_mpz_t(), aa.get_mpz_t(), bb.get_mpz_t());
    mpz_class key = (aa / g) * (bb / g);
    coef *= g;
    bool na = sgn(a) < 0, nb = sgn(b) < 0;
    if (na && nb) coef = -coef;
    if (na != nb) key = -key;
    return key;
}

Monomial mul_mono(const Monomial& a, const Monomial& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    Monomial out;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            int e = a[i].second + b[j].second;
            if (e != 0) out.emplace_back(a[i].first, e);
            ++i, ++j;
        }
    }
    return out;
}

Term mul_term(const Term& a, const Term& b) {
    Term t;
    t.coef = a.coef * b.coef;
    t.rad = mul_rad(a.rad, b.rad, t.coef);
    t.mono = mul_mono(a.mono, b.mono);
    return t;
}

std::mutex factor_mu;
std::unordered_map<std::string, std::vector<std::pair<mpz_class, int>>> factor_cache;

std::vector<std::pair<mpz_class, int>> factorize(const mpz_class& n0) {
    mpz_class n = abs(n0);
    std::string key = n.get_str(16);
    {
        std::lock_guard<std::mutex> lk(factor_mu);
        auto it = factor_cache.find(key);
        if (it != factor_cache.end()) return it->second;
    }
    std::vector<std::pair<mpz_class, int>> out;
    auto take = [&](const mpz_class& p) {
        int e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    take(2);
    take(3);
    for (unsigned long p = 5; p <= 2000000 && mpz_class(p) * p <= n; p += 6) {
        take(p);
        take(p + 2);
    }
    if (n > 1) {
        mpz_class r;
        if (mpz_perfect_square_p(n.get_mpz_t())) {
            mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
            if (mpz_probab_prime_p(r.get_mpz_t(), 40) == 0)
                throw Error("factor", "cannot factor " + n.get_str());
            out.emplace_back(r, 2);
        } else {
            if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
                throw Error("factor", "cannot factor " + n.get_str());
            out.emplace_back(n, 1);
        }
    }
    std::sort(out.begin(), out.end());
    std::lock_guard<std::mutex> lk(factor_mu);
    factor_cache.emplace(key, out);
    return out;
}

// n = u^2 * m with m square-free and carrying the sign of n.
void squarefree_split(const mpz_class& n, mpz_class& u, mpz_class& m) {
    u = 1;
    m = sgn(n) < 0 ? -1 : 1;
    for (auto& [p, e] : factorize(n)) {
        for (int i = 0; i < e / 2; ++i) u *= p;
        if (e % 2) m *= p;
    }
}

bool has_factor(const mpz_class& rad, const mpz_class& p) {
    if (p == -1) return sgn(rad) < 0;
    return mpz_divisible_p(rad.get_mpz_t(), p.get_mpz_t()) != 0;
}

Scalar conj_by(const Scalar& x, const mpz_class& p) {
    std::vector<Term> t = x.terms();
    for (auto& term : t)
        if (has_factor(term.rad, p)) term.coef = -term.coef;
    return Scalar::from_terms(std::move(t));
}

mpz_class pick_prime(const Scalar& x) {
    for (auto& t : x.terms()) {
        if (t.rad == 1) continue;
        if (sgn(t.rad) < 0) return -1;
        return factorize(t.rad).front().first;
    }
    return 1;
}

Scalar strip(const Scalar& x, Monomial& mono) {
    std::vector<Term> t = x.terms();
    mono = t.front().mono;
    for (auto& term : t) {
        if (term.mono != mono)
            throw Error("not-invertible", "symbolic scalar is not a monomial: " + x.str());
        term.mono.clear();
    }
    return Scalar::from_terms(std::move(t));
}

Scalar mono_scalar(const Monomial& m) {
    Term t;
    t.coef = 1;
    t.mono = m;
    return Scalar::from_terms({t});
}

Monomial mono_pow(const Monomial& m, int num, int den) {
    Monomial out;
    for (auto& [s, e] : m) {
        long v = static_cast<long>(e) * num;
        if (v % den) throw Error("nested-radical", "fractional exponent below 1/2");
        out.emplace_back(s, static_cast<int>(v / den));
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Scalar run() {
        Scalar v = expr();
        ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return v;
    }

private:
    std::string_view s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw Error("parse", "scalar literal '" + std::string(s_) + "': " + msg + " at " +
                                 std::to_string(pos_));
    }
    void ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') fail("decimal literals are not exact");
    }
    bool eat(char c) {
        ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool at_digit() {
        ws();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    mpz_class integer() {
        ws();
        size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected integer");
        if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
            fail("decimal literals are not exact");
        return mpz_class(std::string(s_.substr(b, pos_ - b)));
    }
    long small_int() {
        bool neg = eat('-');
        if (!neg) eat('+');
        mpz_class v = integer();
        if (!v.fits_slong_p()) fail("integer too large");
        return neg ? -v.get_si() : v.get_si();
    }
    std::string ident() {
        ws();
        size_t b = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return std::string(s_.substr(b, pos_ - b));
    }

    Scalar expr() {
        Scalar v;
        if (eat('-'))
            v = -term();
        else {
            eat('+');
            v = term();
        }
        while (true) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }
    Scalar term() {
        Scalar v = factor();
        while (true) {
            if (eat('*'))
                v *= factor();
            else if (eat('/')) {
                Scalar d = factor();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else
                return v;
        }
    }
    Scalar factor() {
        if (eat('-')) return -factor();
        ws();
        bool single_symbol = false;
        Scalar base = primary(single_symbol);
        if (!eat('^')) return base;
        long num, den = 1;
        if (eat('(')) {
            num = small_int();
            if (eat('/')) den = small_int();
            expect(')');
        } else {
            num = small_int();
        }
        if (den != 1 && den != 2) fail("only integer or half-integer exponents");
        if (single_symbol) {
            const Term& t = base.terms().front();
            Monomial m = mono_pow(t.mono, static_cast<int>(num), static_cast<int>(den));
            return mono_scalar(m);
        }
        if (den == 2) fail("half exponent of a non-symbol");
        return pow(base, num);
    }
    Scalar primary(bool& single_symbol) {
        ws();
        if (pos_ >= s_.size()) fail("unexpected end");
        if (eat('(')) {
            Scalar v = expr();
            expect(')');
            return v;
        }
        if (at_digit()) return Scalar(mpq_class(integer()));
        std::string id = ident();
        if (id.empty()) fail("unexpected character");
        if (id == "sqrt") {
            expect('(');
            Scalar v = expr();
            expect(')');
            return sqrt(v);
        }
        if (id == "i") return Scalar::imag();
        Symbol sym;
        sym.name = id;
        if (eat('(')) {
            ws();
            if (pos_ < s_.size() && (s_[pos_] == 'l' || s_[pos_] == 'r') &&
                (pos_ + 1 >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
                sym.var = s_[pos_++];
                if (eat('+'))
                    sym.off = small_int();
                else if (eat('-'))
                    sym.off = -small_int();
            } else {
                sym.var = 'n';
                sym.off = small_int();
            }
            expect(')');
        }
        single_symbol = true;
        return Scalar::symbol(sym);
    }
};

}  // namespace

Scalar::Scalar(long v) {
    if (v != 0) terms_.push_back(Term{mpq_class(v), 1, {}});
}

Scalar::Scalar(const mpq_class& q) {
    if (q != 0) terms_.push_back(Term{q, 1, {}});
}

Scalar::Scalar(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    if (q != 0) terms_.push_back(Term{q, 1, {}});
}

Scalar Scalar::imag() { return radical(-1); }

Scalar Scalar::radical(const mpz_class& squarefree) {
    Scalar s;
    if (squarefree != 0) s.terms_.push_back(Term{1, squarefree, {}});
    return s;
}

Scalar Scalar::symbol(const Symbol& s, int half_exp) {
    Scalar r;
    Term t{1, 1, {}};
    if (half_exp != 0) t.mono.emplace_back(s, half_exp);
    r.terms_.push_back(t);
    return r;
}

Scalar Scalar::parse(std::string_view text) { return Parser(text).run(); }

Scalar Scalar::from_terms(std::vector<Term> t) {
    Scalar s;
    s.terms_ = std::move(t);
    s.normalize();
    return s;
}

void Scalar::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return cmp_key(a, b) < 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && cmp_key(out.back(), t) == 0)
            out.back().coef += t.coef;
        else
            out.push_back(std::move(t));
        if (out.back().coef == 0) out.pop_back();
    }
    terms_ = std::move(out);
}

bool Scalar::is_one() const {
    return terms_.size() == 1 && terms_[0].rad == 1 && terms_[0].mono.empty() &&
           terms_[0].coef == 1;
}

bool Scalar::is_rational() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_[0].rad == 1 && terms_[0].mono.empty());
}

bool Scalar::has_symbols() const {
    for (auto& t : terms_)
        if (!t.mono.empty()) return true;
    return false;
}

bool Scalar::is_real() const {
    for (auto& t : terms_)
        if (sgn(t.rad) < 0) return false;
    return true;
}

mpq_class Scalar::rational() const {
    if (!is_rational()) throw Error("not-rational", "scalar is not rational: " + str());
    return terms_.empty() ? mpq_class(0) : terms_[0].coef;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        int c = i == terms_.size()     ? 1
                : j == o.terms_.size() ? -1
                                       : cmp_key(terms_[i], o.terms_[j]);
        if (c < 0)
            out.push_back(std::move(terms_[i++]));
        else if (c > 0)
            out.push_back(o.terms_[j++]);
        else {
            Term t = std::move(terms_[i++]);
            t.coef += o.terms_[j++].coef;
            if (t.coef != 0) out.push_back(std::move(t));
        }
    }
    terms_ = std::move(out);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.terms_.empty() || b.terms_.empty()) return Scalar();
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
        Scalar r;
        r.terms_.push_back(mul_term(a.terms_[0], b.terms_[0]));
        if (r.terms_[0].coef == 0) r.terms_.clear();
        return r;
    }
    std::vector<Term> t;
    t.reserve(a.terms_.size() * b.terms_.size());
    for (auto& x : a.terms_)
        for (auto& y : b.terms_) t.push_back(mul_term(x, y));
    return Scalar::from_terms(std::move(t));
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

bool Scalar::operator==(const Scalar& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coef != o.terms_[i].coef || terms_[i].rad != o.terms_[i].rad ||
            terms_[i].mono != o.terms_[i].mono)
            return false;
    }
    return true;
}

bool Scalar::operator<(const Scalar& o) const {
    size_t n = std::min(terms_.size(), o.terms_.size());
    for (size_t i = 0; i < n; ++i) {
        int c = cmp_key(terms_[i], o.terms_[i]);
        if (c) return c < 0;
        if (terms_[i].coef != o.terms_[i].coef) return terms_[i].coef < o.terms_[i].coef;
    }
    return terms_.size() < o.terms_.size();
}

Scalar Scalar::inv() const {
    if (terms_.empty()) throw Error("division-by-zero", "inverse of zero");
    if (is_rational()) return Scalar(mpq_class(1) / terms_[0].coef);
    Monomial m;
    Scalar den = strip(*this, m);
    Scalar num(1);
    while (!den.is_rational()) {
        Scalar c = conj_by(den, pick_prime(den));
        num *= c;
        den *= c;
    }
    num *= Scalar(mpq_class(1) / den.rational());
    if (!m.empty()) num *= mono_scalar(mono_pow(m, -1, 1));
    return num;
}

Scalar Scalar::conj() const {
    Scalar r = *this;
    for (auto& t : r.terms_)
        if (sgn(t.rad) < 0) t.coef = -t.coef;
    return r;
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& t : terms_) {
        mpq_class c = t.coef;
        if (!first) {
            out += sgn(c) < 0 ? " - " : " + ";
            c = abs(c);
        }
        first = false;
        std::vector<std::string> parts;
        if (t.rad == -1)
            parts.push_back("i");
        else if (sgn(t.rad) < 0)
            parts.push_back("i*sqrt(" + mpz_class(-t.rad).get_str() + ")");
        else if (t.rad != 1)
            parts.push_back("sqrt(" + t.rad.get_str() + ")");
        for (auto& [s, e] : t.mono) {
            std::string p = s.str();
            if (e == 2) {
            } else if (e % 2 == 0 && e > 0)
                p += "^" + std::to_string(e / 2);
            else if (e % 2 == 0)
                p += "^(" + std::to_string(e / 2) + ")";
            else
                p += "^(" + std::to_string(e) + "/2)";
            parts.push_back(p);
        }
        std::string body;
        for (size_t i = 0; i < parts.size(); ++i) body += (i ? "*" : "") + parts[i];
        if (parts.empty())
            out += c.get_str();
        else if (c == 1)
            out += body;
        else if (c == -1)
            out += "-" + body;
        else
            out += c.get_str() + "*" + body;
    }
    return out;
}

Scalar pow(const Scalar& x, long e) {
    if (e < 0) return pow(x.inv(), -e);
    Scalar r(1), b = x;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

std::optional<Scalar> try_sqrt(const Scalar& x) {
    if (x.is_zero()) return Scalar();
    if (x.has_symbols()) {
        Monomial m;
        Scalar r = strip(x, m);
        for (auto& [s, e] : m)
            if (e % 2) return std::nullopt;
        auto s = try_sqrt(r);
        if (!s) return std::nullopt;
        return *s * mono_scalar(mono_pow(m, 1, 2));
    }
    if (x.is_rational()) {
        mpq_class q = x.rational();
        mpz_class n = q.get_num() * q.get_den(), u, m;
        squarefree_split(n, u, m);
        mpq_class c(u, q.get_den());
        c.canonicalize();
        return Scalar(c) * Scalar::radical(m);
    }
    // x = a + b*sqrt(p) with a, b free of p; look for (c + d*sqrt(p))^2 = x.
    mpz_class p = pick_prime(x);
    std::vector<Term> at, bt;
    for (auto t : x.terms()) {
        if (has_factor(t.rad, p)) {
            // i*sqrt(n) / i = sqrt(n); sqrt(pn) / sqrt(p) = sqrt(n)
            if (p == -1)
                t.rad = -t.rad;
            else
                t.rad /= p;
            bt.push_back(t);
        } else {
            at.push_back(t);
        }
    }
    Scalar a = Scalar::from_terms(at);
    Scalar b = Scalar::from_terms(bt);
    Scalar rp = Scalar::radical(p);
    Scalar pp = rp * rp;
    auto check = [&](const Scalar& s) -> std::optional<Scalar> {
        if (s * s == x) return s;
        return std::nullopt;
    };
    auto n = try_sqrt(a * a - pp * b * b);
    // A root of the norm involving p again would not shrink the problem.
    if (n && std::any_of(n->terms().begin(), n->terms().end(),
                         [&](const Term& t) { return has_factor(t.rad, p); }))
        n.reset();
    if (n) {
        for (int sign : {1, -1}) {
            Scalar c2 = (a + Scalar(sign) * *n) * Scalar(1, 2);
            if (c2.is_zero()) continue;
            auto c = try_sqrt(c2);
            if (!c) continue;
            Scalar d = b / (Scalar(2) * *c);
            if (auto s = check(*c + d * rp)) return s;
        }
    }
    return std::nullopt;
}

Scalar sqrt(const Scalar& x) {
    auto s = try_sqrt(x);
    if (!s) throw Error("nested-radical", "no square root in the multiquadratic closure: " + x.str());
    return *s;
}

Scalar shift_vars(const Scalar& x, long dl, long dr) {
    std::vector<Term> t = x.terms();
    for (auto& term : t) {
        for (auto& [s, e] : term.mono) {
            if (s.var == 'l') s.off += dl;
            if (s.var == 'r') s.off += dr;
        }
        std::sort(term.mono.begin(), term.mono.end());
    }
    return Scalar::from_terms(std::move(t));
}

Scalar evaluate(const Scalar& x, const Valuation& val) {
    Scalar out;
    for (auto& t : x.terms()) {
        Term base = t;
        base.mono.clear();
        Scalar v = Scalar::from_terms({base});
        for (auto& [s, e] : t.mono) v *= val(s, e);
        out += v;
    }
    return out;
}

namespace {

// Returns value and an absolute error bound for a real symbol-free scalar.
std::pair<mpf_class, mpf_class> eval_mpf(const Scalar& x, unsigned bits) {
    mpf_class v(0, bits), err(0, bits);
    for (auto& t : x.terms()) {
        if (!t.mono.empty()) throw Error("symbolic", "cannot evaluate symbols numerically");
        if (sgn(t.rad) < 0) throw Error("not-real", "scalar is not real: " + x.str());
        mpf_class r(t.rad, bits), c(t.coef, bits);
        r = sqrt(r);
        mpf_class term = c * r;
        v += term;
        mpf_class mag = abs(term);
        err += mag;
    }
    mpf_class eps(1, bits);
    mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), bits - 16);
    err *= eps;
    return {v, err};
}

}  // namespace

int real_sign(const Scalar& x, bool* numeric) {
    if (numeric) *numeric = false;
    if (x.is_rational()) return sgn(x.rational());
    if (!x.is_real()) throw Error("not-real", "sign of a non-real scalar: " + x.str());
    if (numeric) *numeric = true;
    // A nonzero normal form is a nonzero real number, so raising precision terminates.
    for (unsigned bits = 256; bits <= (1u << 16); bits *= 2) {
        auto [v, err] = eval_mpf(x, bits);
        if (abs(v) > err) return sgn(v);
    }
    throw Error("precision", "sign undecided: " + x.str());
}

double to_double(const Scalar& x) {
    if (x.is_rational()) return x.rational().get_d();
    return eval_mpf(x, 128).first.get_d();
}

std::vector<mpz_class> prime_factors(const mpz_class& n) {
    std::vector<mpz_class> out;
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

namespace {

using PrimeSet = std::vector<mpz_class>;  // sorted, -1 stands for i

PrimeSet key_primes(const mpz_class& key) {
    PrimeSet s;
    if (sgn(key) < 0) s.push_back(-1);
    for (auto& p : prime_factors(key)) s.push_back(p);
    std::sort(s.begin(), s.end());
    return s;
}

PrimeSet sym_diff(const PrimeSet& a, const PrimeSet& b) {
    PrimeSet out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

bool FieldSpec::key_in_tower(const mpz_class& key) const {
    if (key == 1) return true;
    std::map<mpz_class, PrimeSet> basis;  // pivot = largest prime
    auto reduce = [&](PrimeSet v) {
        while (!v.empty()) {
            auto it = basis.find(v.back());
            if (it == basis.end()) break;
            v = sym_diff(v, it->second);
        }
        return v;
    };
    for (auto& g : generators) {
        PrimeSet v = reduce(key_primes(g));
        if (!v.empty()) basis[v.back()] = v;
    }
    return reduce(key_primes(key)).empty();
}

bool FieldSpec::contains(const Scalar& x) const {
    for (auto& t : x.terms()) {
        if (!key_in_tower(t.rad)) return false;
        for (auto& [s, e] : t.mono) {
            auto it = std::find_if(symbols.begin(), symbols.end(),
                                   [&](const SymbolDecl& d) { return d.name == s.name; });
            if (it == symbols.end()) return false;
        }
    }
    return true;
}

FieldSpec rational_field() { return FieldSpec{}; }

FieldSpec shift_field(std::vector<SymbolDecl> syms, std::map<std::string, long> colors,
                      std::map<std::string, std::string> bars) {
    FieldSpec f;
    f.kind = FieldSpec::Kind::shift_field;
    f.symbols = std::move(syms);
    f.colors = std::move(colors);
    f.color_bar = std::move(bars);
    for (auto& [c, step] : f.colors) {
        auto it = f.color_bar.find(c);
        if (it == f.color_bar.end() || !f.colors.count(it->second) ||
            f.colors.at(it->second) != -step)
            throw Error("color-group", "color " + c + " has no inverse color");
    }
    return f;
}

std::pair<FieldSpec, Scalar> adjoin_sqrt(const FieldSpec& f, const Scalar& x) {
    if (x.is_zero()) throw Error("degenerate-radicand", "cannot adjoin the square root of 0");
    Scalar s = sqrt(x);
    FieldSpec g = f;
    bool grew = false;
    for (auto& t : s.terms()) {
        if (!g.key_in_tower(t.rad)) {
            g.generators.push_back(t.rad);
            grew = true;
        }
    }
    if (!grew) return {f, s};
    g.radicands.push_back(x);
    if (g.kind == FieldSpec::Kind::rational) g.kind = FieldSpec::Kind::sqrt_tower;
    return {g, s};
}

Scalar shift(const FieldSpec& f, const Scalar& x, const std::string& color) {
    if (f.kind != FieldSpec::Kind::shift_field)
        throw Error("not-shift-field", "shift needs a shift-function field");
    auto it = f.colors.find(color);
    if (it == f.colors.end()) throw Error("unknown-color", "unknown color '" + color + "'");
    return shift_vars(x, it->second, it->second);
}

}  // namespace pqg
