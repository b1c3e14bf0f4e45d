#pragma once

#include <map>

#include "mpqed/ratfunc.hpp"

namespace mpqed {

// Scalar coefficient: a rational function of registered symbols per integer
// mu-grade. The grading exponent never mixes into the rational functions.
class ScalarExpr {
  public:
    ScalarExpr() = default;
    explicit ScalarExpr(Rat c) { set(0, RatFunc(std::move(c))); }
    explicit ScalarExpr(int c) { set(0, RatFunc(Rat(c))); }
    explicit ScalarExpr(RatFunc f) { set(0, std::move(f)); }
    static ScalarExpr var(SymbolId id, int exp = 1) { return ScalarExpr(RatFunc::var(id, exp)); }
    static ScalarExpr graded(int grade, RatFunc f) {
        ScalarExpr s;
        s.set(grade, std::move(f));
        return s;
    }

    bool is_zero() const { return parts_.empty(); }
    const std::map<int, RatFunc>& parts() const { return parts_; }
    // the single grade-g part (zero RatFunc when absent)
    RatFunc part(int grade) const;
    bool single_grade() const { return parts_.size() <= 1; }
    int min_grade() const;

    ScalarExpr operator-() const;
    ScalarExpr operator+(const ScalarExpr& o) const;
    ScalarExpr operator-(const ScalarExpr& o) const { return *this + (-o); }
    ScalarExpr operator*(const ScalarExpr& o) const;
    // divide by a grade-0 scalar
    ScalarExpr operator/(const ScalarExpr& o) const;

    ScalarExpr shifted(int grade_delta) const;

    bool equals(const ScalarExpr& o) const;
    bool operator==(const ScalarExpr& o) const { return equals(o); }
    bool operator!=(const ScalarExpr& o) const { return !equals(o); }

    bool mentions(SymbolId id) const;

    // integrate a polynomial dependence on `id` over [0,1]
    ScalarExpr integrate_unit(SymbolId id) const;

    // exact numeric value; requires a single grade-0 part (or zero)
    Rat evaluate(const std::vector<Rat>& values) const;

    // positive gcd of the rational contents across grades (0 when zero);
    // used for extracting numeric content out of vector combinations
    Rat content_gcd() const;
    // sign of the overall expression when every part is plain rational or
    // shares the leading sign; returns the sign of the lowest-grade content
    int lead_sign() const;

    friend int cmp_scalar(const ScalarExpr& a, const ScalarExpr& b);

    void set(int grade, RatFunc f);

  private:
    std::map<int, RatFunc> parts_;
};

int cmp_scalar(const ScalarExpr& a, const ScalarExpr& b);

}  // namespace mpqed
