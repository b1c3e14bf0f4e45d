#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mpqed/numeric.hpp"
#include "mpqed/symbol.hpp"

namespace mpqed {

// Power product of scalar symbols; exponents are strictly positive, entries
// sorted by symbol id.
struct Monomial {
    std::vector<std::pair<SymbolId, int>> powers;

    static Monomial one() { return {}; }
    static Monomial var(SymbolId id, int exp = 1);

    bool is_one() const { return powers.empty(); }
    int total_degree() const;
    int degree_in(SymbolId id) const;

    Monomial times(const Monomial& other) const;
    // exact division; nullopt when some exponent would go negative
    std::optional<Monomial> divided_by(const Monomial& other) const;
    Monomial pow(int n) const;
};

// Graded lexicographic order: higher total degree first, ties broken
// lexicographically by (symbol id, exponent). This is the deterministic
// monomial order used for all normal forms and serialized output.
int cmp(const Monomial& a, const Monomial& b);

struct MonomialDesc {
    bool operator()(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }
};

// Multivariate polynomial with exact integer coefficients, stored in
// descending graded-lex order. Zero is the empty term map.
class Poly {
  public:
    using Terms = std::map<Monomial, Int, MonomialDesc>;

    Poly() = default;
    explicit Poly(Int c) {
        if (c != 0) terms_[Monomial::one()] = std::move(c);
    }
    static Poly var(SymbolId id, int exp = 1) {
        Poly p;
        p.terms_[Monomial::var(id, exp)] = 1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_constant() const;
    // Constant value when is_constant(), otherwise throws.
    Int constant_value() const;
    bool is_monomial() const { return terms_.size() == 1; }

    const Terms& terms() const { return terms_; }
    const Monomial& leading_monomial() const;
    const Int& leading_coeff() const;
    int total_degree() const;
    int degree_in(SymbolId id) const;
    bool mentions(SymbolId id) const { return degree_in(id) > 0; }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly times_term(const Monomial& m, const Int& c) const;
    Poly pow(int n) const;

    bool operator==(const Poly& o) const { return cmp_poly(*this, o) == 0; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // gcd of all coefficients, carrying the sign of the leading coefficient;
    // 0 for the zero polynomial
    Int content() const;
    void divide_content(const Int& c);

    // exact multivariate division (nullopt if not divisible)
    std::optional<Poly> divided_by(const Poly& d) const;
    // exact polynomial square root (nullopt if not a perfect square)
    std::optional<Poly> sqrt() const;

    // split into coefficient polynomials of each power of `id`
    std::map<int, Poly> decompose_by(SymbolId id) const;

    Rat evaluate(const std::vector<Rat>& values) const;

    friend int cmp_poly(const Poly& a, const Poly& b);

    void add_term(const Monomial& m, const Int& c);

  private:
    Terms terms_;
};

int cmp_poly(const Poly& a, const Poly& b);

}  // namespace mpqed
