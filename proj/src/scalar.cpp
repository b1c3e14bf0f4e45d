#include "mpqed/scalar.hpp"

#include "mpqed/error.hpp"

namespace mpqed {

void ScalarExpr::set(int grade, RatFunc f) {
    if (f.is_zero())
        parts_.erase(grade);
    else
        parts_[grade] = std::move(f);
}

RatFunc ScalarExpr::part(int grade) const {
    auto it = parts_.find(grade);
    return it == parts_.end() ? RatFunc() : it->second;
}

int ScalarExpr::min_grade() const {
    if (parts_.empty()) throw AlgebraError("zero scalar has no grade");
    return parts_.begin()->first;
}

ScalarExpr ScalarExpr::operator-() const {
    ScalarExpr out;
    for (auto& [g, f] : parts_) out.parts_[g] = -f;
    return out;
}

ScalarExpr ScalarExpr::operator+(const ScalarExpr& o) const {
    ScalarExpr out = *this;
    for (auto& [g, f] : o.parts_) {
        auto it = out.parts_.find(g);
        if (it == out.parts_.end()) {
            out.parts_[g] = f;
        } else {
            RatFunc s = it->second + f;
            if (s.is_zero())
                out.parts_.erase(it);
            else
                it->second = std::move(s);
        }
    }
    return out;
}

ScalarExpr ScalarExpr::operator*(const ScalarExpr& o) const {
    ScalarExpr out;
    for (auto& [ga, fa] : parts_)
        for (auto& [gb, fb] : o.parts_) {
            RatFunc p = fa * fb;
            if (p.is_zero()) continue;
            auto it = out.parts_.find(ga + gb);
            if (it == out.parts_.end()) {
                out.parts_[ga + gb] = std::move(p);
            } else {
                RatFunc s = it->second + p;
                if (s.is_zero())
                    out.parts_.erase(it);
                else
                    it->second = std::move(s);
            }
        }
    return out;
}

ScalarExpr ScalarExpr::operator/(const ScalarExpr& o) const {
    if (o.is_zero()) throw AlgebraError("division by zero scalar");
    if (!o.single_grade() || o.parts_.begin()->first != 0)
        throw AlgebraError("division is only defined by grade-0 scalars");
    ScalarExpr out;
    RatFunc inv = o.parts_.begin()->second.inverse();
    for (auto& [g, f] : parts_) out.parts_[g] = f * inv;
    return out;
}

ScalarExpr ScalarExpr::shifted(int grade_delta) const {
    ScalarExpr out;
    for (auto& [g, f] : parts_) out.parts_[g + grade_delta] = f;
    return out;
}

bool ScalarExpr::equals(const ScalarExpr& o) const {
    if (parts_.size() != o.parts_.size()) return false;
    auto a = parts_.begin();
    auto b = o.parts_.begin();
    for (; a != parts_.end(); ++a, ++b) {
        if (a->first != b->first) return false;
        if (!a->second.equals(b->second)) return false;
    }
    return true;
}

bool ScalarExpr::mentions(SymbolId id) const {
    for (auto& [g, f] : parts_)
        if (f.mentions(id)) return true;
    return false;
}

ScalarExpr ScalarExpr::integrate_unit(SymbolId id) const {
    ScalarExpr out;
    for (auto& [g, f] : parts_) {
        RatFunc acc;
        for (auto& [e, coeff] : f.decompose_by(id)) {
            // int_0^1 x^e dx = 1/(e+1)
            acc = acc + coeff * RatFunc(Rat(1, e + 1));
        }
        out.set(g, acc);
    }
    return out;
}

Rat ScalarExpr::evaluate(const std::vector<Rat>& values) const {
    if (parts_.empty()) return 0;
    if (!single_grade() || parts_.begin()->first != 0)
        throw AlgebraError("cannot numerically evaluate a mu-graded scalar");
    return parts_.begin()->second.evaluate(values);
}

Rat ScalarExpr::content_gcd() const {
    Rat g = 0;
    for (auto& [grade, f] : parts_) g = rat_gcd(g, f.content());
    return g;
}

int ScalarExpr::lead_sign() const {
    if (parts_.empty()) return 0;
    return rat_sign(parts_.begin()->second.content());
}

int cmp_scalar(const ScalarExpr& a, const ScalarExpr& b) {
    auto ia = a.parts_.begin(), ib = b.parts_.begin();
    while (ia != a.parts_.end() && ib != b.parts_.end()) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        int c = cmp_ratfunc(ia->second, ib->second);
        if (c != 0) return c;
        ++ia;
        ++ib;
    }
    if (ia != a.parts_.end()) return 1;
    if (ib != b.parts_.end()) return -1;
    return 0;
}

}  // namespace mpqed
