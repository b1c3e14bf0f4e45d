#pragma once

#include <map>
#include <vector>

#include "mpqed/poly.hpp"

namespace mpqed {

// Rational function of scalar symbols, value = content * num / prod(den_i^mult_i).
//
// Normal form: num is primitive with positive leading coefficient (num == 1
// for pure rationals); each denominator factor is primitive, non-constant,
// positive-leading and the factor list is sorted; content is a rational
// carrying the overall scale and sign. Zero is content == 0, num == 1,
// den empty. Denominator factors are kept as the factored multiset they were
// built from (symbols, cluster-mass sums); equality additionally falls back
// to exact cross-multiplication so differently factored but equal values
// still compare equal.
class RatFunc {
  public:
    RatFunc() : content_(0), num_(Int(1)) {}
    explicit RatFunc(Rat c) : content_(std::move(c)), num_(Int(1)) { normalize(); }
    explicit RatFunc(const Poly& p);
    static RatFunc var(SymbolId id, int exp = 1);

    bool is_zero() const { return content_ == 0; }
    bool is_rational() const { return num_.is_one() && den_.empty(); }
    const Rat& content() const { return content_; }
    Rat rational_value() const;
    const Poly& num() const { return num_; }
    const std::vector<std::pair<Poly, int>>& den() const { return den_; }

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const { return *this * o.inverse(); }
    RatFunc inverse() const;
    RatFunc pow(int n) const;

    bool equals(const RatFunc& o) const;
    bool operator==(const RatFunc& o) const { return equals(o); }
    bool operator!=(const RatFunc& o) const { return !equals(o); }

    bool mentions(SymbolId id) const;
    int num_degree_in(SymbolId id) const { return num_.degree_in(id); }
    bool den_mentions(SymbolId id) const;

    // split by powers of `id`; `id` must not occur in the denominator
    std::map<int, RatFunc> decompose_by(SymbolId id) const;

    // exact evaluation; values indexed by SymbolId
    Rat evaluate(const std::vector<Rat>& values) const;

    // exact square root under the documented dominant-symbol sign rule:
    // the root is chosen positive in the limit where `dominant` grows large
    // (nullopt when not a perfect square)
    std::optional<RatFunc> sqrt(SymbolId dominant) const;

    // structural order (used for deterministic serialization)
    friend int cmp_ratfunc(const RatFunc& a, const RatFunc& b);

  private:
    void normalize();
    Poly den_product() const;

    Rat content_;
    Poly num_;
    std::vector<std::pair<Poly, int>> den_;
};

int cmp_ratfunc(const RatFunc& a, const RatFunc& b);

}  // namespace mpqed
