#include "mpqed/poly.hpp"

#include <algorithm>

#include "mpqed/error.hpp"

namespace mpqed {

Monomial Monomial::var(SymbolId id, int exp) {
    Monomial m;
    if (exp != 0) m.powers.push_back({id, exp});
    return m;
}

int Monomial::total_degree() const {
    int d = 0;
    for (auto& [id, e] : powers) d += e;
    return d;
}

int Monomial::degree_in(SymbolId id) const {
    for (auto& [sid, e] : powers)
        if (sid == id) return e;
    return 0;
}

Monomial Monomial::times(const Monomial& other) const {
    Monomial out;
    auto a = powers.begin(), b = other.powers.begin();
    while (a != powers.end() || b != other.powers.end()) {
        if (b == other.powers.end() || (a != powers.end() && a->first < b->first)) {
            out.powers.push_back(*a++);
        } else if (a == powers.end() || b->first < a->first) {
            out.powers.push_back(*b++);
        } else {
            int e = a->second + b->second;
            if (e != 0) out.powers.push_back({a->first, e});
            ++a;
            ++b;
        }
    }
    return out;
}

std::optional<Monomial> Monomial::divided_by(const Monomial& other) const {
    Monomial out;
    auto a = powers.begin();
    for (auto& [id, e] : other.powers) {
        while (a != powers.end() && a->first < id) out.powers.push_back(*a++);
        if (a == powers.end() || a->first != id || a->second < e) return std::nullopt;
        if (a->second > e) out.powers.push_back({id, a->second - e});
        ++a;
    }
    while (a != powers.end()) out.powers.push_back(*a++);
    return out;
}

Monomial Monomial::pow(int n) const {
    Monomial out;
    if (n == 0) return out;
    out = *this;
    for (auto& [id, e] : out.powers) e *= n;
    return out;
}

int cmp(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    // lexicographic: smaller symbol id ranks higher; larger exponent on the
    // shared leading symbol ranks higher
    auto ia = a.powers.begin(), ib = b.powers.begin();
    while (ia != a.powers.end() && ib != b.powers.end()) {
        if (ia->first != ib->first) return ia->first < ib->first ? 1 : -1;
        if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
        ++ia;
        ++ib;
    }
    if (ia != a.powers.end()) return 1;
    if (ib != b.powers.end()) return -1;
    return 0;
}

bool Poly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Int Poly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw AlgebraError("polynomial is not constant");
    return terms_.begin()->second;
}

const Monomial& Poly::leading_monomial() const {
    if (terms_.empty()) throw AlgebraError("zero polynomial has no leading monomial");
    return terms_.begin()->first;
}

const Int& Poly::leading_coeff() const {
    if (terms_.empty()) throw AlgebraError("zero polynomial has no leading coefficient");
    return terms_.begin()->second;
}

int Poly::total_degree() const {
    return terms_.empty() ? 0 : terms_.begin()->first.total_degree();
}

int Poly::degree_in(SymbolId id) const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree_in(id));
    return d;
}

void Poly::add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

Poly Poly::operator+(const Poly& o) const {
    Poly out = *this;
    for (auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    Poly out = *this;
    for (auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    Poly out;
    for (auto& [ma, ca] : terms_)
        for (auto& [mb, cb] : o.terms_) out.add_term(ma.times(mb), ca * cb);
    return out;
}

Poly Poly::times_term(const Monomial& m, const Int& c) const {
    Poly out;
    if (c == 0) return out;
    for (auto& [mt, ct] : terms_) out.terms_[mt.times(m)] = ct * c;
    return out;
}

Poly Poly::pow(int n) const {
    if (n < 0) throw AlgebraError("negative polynomial power");
    Poly out(Int(1));
    Poly base = *this;
    while (n > 0) {
        if (n & 1) out = out * base;
        base = base * base;
        n >>= 1;
    }
    return out;
}

Int Poly::content() const {
    if (terms_.empty()) return 0;
    Int g = 0;
    for (auto& [m, c] : terms_) g = int_gcd(g, c);
    if (leading_coeff() < 0) g = -g;
    return g;
}

void Poly::divide_content(const Int& c) {
    for (auto& [m, coeff] : terms_) coeff /= c;
}

std::optional<Poly> Poly::divided_by(const Poly& d) const {
    if (d.is_zero()) throw AlgebraError("polynomial division by zero");
    Poly rem = *this;
    Poly quot;
    while (!rem.is_zero()) {
        auto mq = rem.leading_monomial().divided_by(d.leading_monomial());
        if (!mq) return std::nullopt;
        Int cq = rem.leading_coeff() / d.leading_coeff();
        if (cq * d.leading_coeff() != rem.leading_coeff()) return std::nullopt;
        quot.add_term(*mq, cq);
        rem = rem - d.times_term(*mq, cq);
    }
    return quot;
}

std::optional<Poly> Poly::sqrt() const {
    if (is_zero()) return Poly();
    // leading term must be a perfect square
    const Monomial& lm = leading_monomial();
    for (auto& [id, e] : lm.powers)
        if (e % 2 != 0) return std::nullopt;
    Int lc = leading_coeff();
    if (lc < 0) return std::nullopt;
    Int lr = boost::multiprecision::sqrt(lc);
    if (lr * lr != lc) return std::nullopt;
    Monomial half = lm;
    for (auto& [id, e] : half.powers) e /= 2;
    Poly root;
    root.add_term(half, lr);
    // peel off one term at a time: next = lead(rem) / (2 * lead(root))
    Poly rem = *this - root * root;
    Monomial prev = lm;
    while (!rem.is_zero()) {
        if (cmp(rem.leading_monomial(), prev) >= 0) return std::nullopt;
        prev = rem.leading_monomial();
        auto mq = rem.leading_monomial().divided_by(half);
        if (!mq) return std::nullopt;
        Int cq = rem.leading_coeff() / (2 * lr);
        if (cq * 2 * lr != rem.leading_coeff()) return std::nullopt;
        Poly t;
        t.add_term(*mq, cq);
        root = root + t;
        rem = *this - root * root;
    }
    return root;
}

std::map<int, Poly> Poly::decompose_by(SymbolId id) const {
    std::map<int, Poly> out;
    for (auto& [m, c] : terms_) {
        int e = m.degree_in(id);
        Monomial rest = *m.divided_by(Monomial::var(id, e));
        out[e].add_term(rest, c);
    }
    return out;
}

Rat Poly::evaluate(const std::vector<Rat>& values) const {
    Rat out = 0;
    for (auto& [m, c] : terms_) {
        Rat t(c);
        for (auto& [id, e] : m.powers) {
            if (id >= values.size()) throw AlgebraError("evaluation point missing a symbol value");
            Rat base = values[id];
            for (int i = 0; i < e; ++i) t *= base;
        }
        out += t;
    }
    return out;
}

int cmp_poly(const Poly& a, const Poly& b) {
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() && ib != b.terms_.end()) {
        int c = cmp(ia->first, ib->first);
        if (c != 0) return c;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
        ++ia;
        ++ib;
    }
    if (ia != a.terms_.end()) return 1;
    if (ib != b.terms_.end()) return -1;
    return 0;
}

}  // namespace mpqed
