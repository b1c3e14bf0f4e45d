#include "mpqed/ratfunc.hpp"

#include <algorithm>

#include "mpqed/error.hpp"

namespace mpqed {

RatFunc::RatFunc(const Poly& p) : content_(1), num_(p) { normalize(); }

RatFunc RatFunc::var(SymbolId id, int exp) {
    RatFunc f;
    f.content_ = 1;
    if (exp >= 0) {
        f.num_ = Poly::var(id, exp);
    } else {
        f.num_ = Poly(Int(1));
        f.den_.push_back({Poly::var(id), -exp});
    }
    f.normalize();
    return f;
}

void RatFunc::normalize() {
    if (content_ == 0 || num_.is_zero()) {
        content_ = 0;
        num_ = Poly(Int(1));
        den_.clear();
        return;
    }
    // pull content out of the numerator
    Int c = num_.content();
    if (c != 1) {
        num_.divide_content(c);
        content_ *= Rat(c);
    }
    // normalize denominator factors
    std::vector<std::pair<Poly, int>> den;
    for (auto& [f, m] : den_) {
        if (m == 0) continue;
        Poly g = f;
        Int fc = g.content();
        if (fc == 0) throw AlgebraError("zero denominator factor");
        g.divide_content(fc);
        for (int i = 0; i < m; ++i) content_ /= Rat(fc);
        if (g.is_one()) continue;
        den.push_back({g, m});
    }
    std::sort(den.begin(), den.end(),
              [](const auto& a, const auto& b) { return cmp_poly(a.first, b.first) < 0; });
    // merge equal factors
    den_.clear();
    for (auto& e : den) {
        if (!den_.empty() && cmp_poly(den_.back().first, e.first) == 0)
            den_.back().second += e.second;
        else
            den_.push_back(e);
    }
    // cancel factors dividing the numerator
    for (auto& [f, m] : den_) {
        while (m > 0) {
            auto q = num_.divided_by(f);
            if (!q) break;
            num_ = *q;
            --m;
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](const auto& e) { return e.second == 0; }),
               den_.end());
    Int c2 = num_.content();
    if (c2 != 1) {
        num_.divide_content(c2);
        content_ *= Rat(c2);
    }
}

Poly RatFunc::den_product() const {
    Poly p(Int(1));
    for (auto& [f, m] : den_) p = p * f.pow(m);
    return p;
}

Rat RatFunc::rational_value() const {
    if (!is_rational()) throw AlgebraError("rational function is not a pure rational");
    return content_;
}

RatFunc RatFunc::operator-() const {
    RatFunc out = *this;
    out.content_ = -out.content_;
    return out;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    // common denominator = factor-wise max multiplicity
    std::vector<std::pair<Poly, int>> common;
    {
        auto a = den_.begin();
        auto b = o.den_.begin();
        while (a != den_.end() || b != o.den_.end()) {
            if (b == o.den_.end() || (a != den_.end() && cmp_poly(a->first, b->first) < 0)) {
                common.push_back(*a++);
            } else if (a == den_.end() || cmp_poly(b->first, a->first) < 0) {
                common.push_back(*b++);
            } else {
                common.push_back({a->first, std::max(a->second, b->second)});
                ++a;
                ++b;
            }
        }
    }
    auto cofactor = [&common](const std::vector<std::pair<Poly, int>>& den) {
        Poly p(Int(1));
        for (auto& [f, m] : common) {
            int have = 0;
            for (auto& [g, k] : den)
                if (cmp_poly(f, g) == 0) have = k;
            if (m - have > 0) p = p * f.pow(m - have);
        }
        return p;
    };
    // integer-scale the two contents so numerator stays over Int
    Int l = int_lcm(rat_den(content_), rat_den(o.content_));
    Rat scaled_a = content_ * l;
    Rat scaled_b = o.content_ * l;
    Poly n = num_.times_term(Monomial::one(), rat_num(scaled_a)) * cofactor(den_) +
             o.num_.times_term(Monomial::one(), rat_num(scaled_b)) * cofactor(o.den_);
    RatFunc out;
    out.content_ = Rat(1, l);
    out.num_ = n;
    out.den_ = common;
    out.normalize();
    return out;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    RatFunc out;
    out.content_ = content_ * o.content_;
    out.num_ = num_ * o.num_;
    out.den_ = den_;
    for (auto& e : o.den_) out.den_.push_back(e);
    out.normalize();
    return out;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw AlgebraError("division by zero scalar");
    RatFunc out;
    out.content_ = 1 / content_;
    out.num_ = den_product();
    if (num_.is_one()) {
        out.normalize();
        return out;
    }
    if (num_.is_monomial()) {
        // split a monomial numerator into symbol-power denominator factors
        auto& [m, c] = *num_.terms().begin();
        out.content_ /= Rat(c);
        for (auto& [id, e] : m.powers) out.den_.push_back({Poly::var(id), e});
    } else {
        out.den_.push_back({num_, 1});
    }
    out.normalize();
    return out;
}

RatFunc RatFunc::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    RatFunc out(Rat(1));
    for (int i = 0; i < n; ++i) out = out * *this;
    return out;
}

bool RatFunc::equals(const RatFunc& o) const {
    if (cmp_ratfunc(*this, o) == 0) return true;
    if (is_zero() || o.is_zero()) return false;
    // cross-multiplied comparison is complete even when the denominator
    // factorizations differ
    Int l = int_lcm(rat_den(content_), rat_den(o.content_));
    Poly lhs = num_.times_term(Monomial::one(), rat_num(content_ * l)) * o.den_product();
    Poly rhs = o.num_.times_term(Monomial::one(), rat_num(o.content_ * l)) * den_product();
    return lhs == rhs;
}

bool RatFunc::mentions(SymbolId id) const {
    if (num_.mentions(id)) return true;
    return den_mentions(id);
}

bool RatFunc::den_mentions(SymbolId id) const {
    for (auto& [f, m] : den_)
        if (f.mentions(id)) return true;
    return false;
}

std::map<int, RatFunc> RatFunc::decompose_by(SymbolId id) const {
    if (den_mentions(id)) throw AlgebraError("symbol occurs in a denominator; cannot decompose");
    std::map<int, RatFunc> out;
    for (auto& [e, p] : num_.decompose_by(id)) {
        RatFunc part;
        part.content_ = content_;
        part.num_ = p;
        part.den_ = den_;
        part.normalize();
        if (!part.is_zero()) out[e] = part;
    }
    return out;
}

Rat RatFunc::evaluate(const std::vector<Rat>& values) const {
    if (is_zero()) return 0;
    Rat v = content_ * num_.evaluate(values);
    for (auto& [f, m] : den_) {
        Rat fv = f.evaluate(values);
        if (fv == 0) throw AlgebraError("denominator vanishes at the evaluation point");
        for (int i = 0; i < m; ++i) v /= fv;
    }
    return v;
}

std::optional<RatFunc> RatFunc::sqrt(SymbolId dominant) const {
    if (is_zero()) return RatFunc(Rat(0));
    if (content_ < 0) return std::nullopt;
    Int cn = rat_num(content_), cd = rat_den(content_);
    Int rn = boost::multiprecision::sqrt(cn), rd = boost::multiprecision::sqrt(cd);
    if (rn * rn != cn || rd * rd != cd) return std::nullopt;
    auto nroot = num_.sqrt();
    if (!nroot) return std::nullopt;
    RatFunc out;
    out.content_ = Rat(rn, rd);
    out.num_ = *nroot;
    for (auto& [f, m] : den_) {
        if (m % 2 == 0) {
            out.den_.push_back({f, m / 2});
        } else {
            auto froot = f.sqrt();
            if (!froot) return std::nullopt;
            out.den_.push_back({*froot, m});  // f = froot^2, so f^m = froot^(2m): m halves to m
        }
    }
    out.normalize();
    // sign rule: positive as `dominant` grows large, i.e. the coefficient of
    // the highest power of `dominant` in the numerator must be positive
    auto parts = out.num_.decompose_by(dominant);
    const Poly& lead = parts.rbegin()->second;
    if (lead.leading_coeff() < 0) out.content_ = -out.content_;
    return out;
}

int cmp_ratfunc(const RatFunc& a, const RatFunc& b) {
    if (a.content_ != b.content_) return a.content_ < b.content_ ? -1 : 1;
    int c = cmp_poly(a.num_, b.num_);
    if (c != 0) return c;
    auto ia = a.den_.begin(), ib = b.den_.begin();
    while (ia != a.den_.end() && ib != b.den_.end()) {
        c = cmp_poly(ia->first, ib->first);
        if (c != 0) return c;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
        ++ia;
        ++ib;
    }
    if (ia != a.den_.end()) return 1;
    if (ib != b.den_.end()) return -1;
    return 0;
}

}  // namespace mpqed
