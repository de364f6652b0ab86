#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqg/error.hpp"

namespace pqg {

// A function symbol such as F(l+1), F(r-2), F(3) or a bare name like x.
// var is 'l' or 'r' for lattice variables, 'n' for a numeric argument and
// 's' for a bare symbol without argument.
struct Symbol {
    std::string name;
    char var = 's';
    long off = 0;

    auto operator<=>(const Symbol&) const = default;
    bool operator==(const Symbol&) const = default;
    std::string str() const;
};

// Exponents are stored in halves so F^(1/2) is representable.
using Monomial = std::vector<std::pair<Symbol, int>>;

struct Term {
    mpq_class coef;
    mpz_class rad{1};  // signed square-free; negative means i*sqrt(|rad|)
    Monomial mono;
};

class Scalar {
public:
    Scalar() = default;
    Scalar(long v);
    Scalar(int v) : Scalar(static_cast<long>(v)) {}
    Scalar(const mpq_class& q);
    Scalar(long num, long den);

    static Scalar imag();
    static Scalar radical(const mpz_class& squarefree);
    static Scalar symbol(const Symbol& s, int half_exp = 2);
    static Scalar parse(std::string_view text);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_rational() const;
    bool has_symbols() const;
    bool is_real() const;
    mpq_class rational() const;
    const std::vector<Term>& terms() const { return terms_; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // Total order on normal forms, used only for containers.
    bool operator<(const Scalar& o) const;

    Scalar inv() const;
    Scalar conj() const;
    std::string str() const;

    static Scalar from_terms(std::vector<Term> t);

private:
    std::vector<Term> terms_;
    void normalize();
};

Scalar pow(const Scalar& x, long e);
// Square root inside the multiquadratic closure; throws when none exists there.
Scalar sqrt(const Scalar& x);
std::optional<Scalar> try_sqrt(const Scalar& x);
inline Scalar star(const Scalar& x) { return x.conj(); }

// Shift lattice arguments: every F(l+k) becomes F(l+k+dl), F(r+k) becomes F(r+k+dr).
Scalar shift_vars(const Scalar& x, long dl, long dr);

// Replace symbols using a valuation; the callback returns the value of
// symbol^(half_exp/2) for a single symbol.
using Valuation = std::function<Scalar(const Symbol&, int half_exp)>;
Scalar evaluate(const Scalar& x, const Valuation& val);

// Sign of a real, symbol-free scalar: -1, 0, 1. Sets *numeric when the answer
// needed a high-precision evaluation instead of an exact rational comparison.
int real_sign(const Scalar& x, bool* numeric = nullptr);
double to_double(const Scalar& x);

std::vector<mpz_class> prime_factors(const mpz_class& n);

// Field bookkeeping: which radicals and symbols a computation is allowed to use.
struct SymbolDecl {
    std::string name;
    bool invertible = true;
    bool positive = true;
};

struct FieldSpec {
    enum class Kind { rational, sqrt_tower, shift_field };
    Kind kind = Kind::rational;
    std::vector<Scalar> radicands;
    std::vector<mpz_class> generators;  // square-free keys spanning the tower
    std::vector<SymbolDecl> symbols;
    std::map<std::string, long> colors;  // color label -> lattice step
    std::map<std::string, std::string> color_bar;

    bool contains(const Scalar& x) const;
    bool key_in_tower(const mpz_class& key) const;
};

FieldSpec rational_field();
FieldSpec shift_field(std::vector<SymbolDecl> syms, std::map<std::string, long> colors,
                      std::map<std::string, std::string> bars);
std::pair<FieldSpec, Scalar> adjoin_sqrt(const FieldSpec& f, const Scalar& x);
Scalar shift(const FieldSpec& f, const Scalar& x, const std::string& color);

}  // namespace pqg
