#include "mpqed/expr.hpp"

#include <algorithm>
#include <cassert>

#include "mpqed/error.hpp"

namespace mpqed {

namespace {

ScalarExpr scalar_pow(const ScalarExpr& s, int n) {
    ScalarExpr out(1);
    for (int i = 0; i < n; ++i) out = out * s;
    return out;
}

void check_same_registry(const OpExpr& a, const OpExpr& b) {
    if (a.reg && b.reg && a.reg != b.reg)
        throw AlgebraError("expressions built over different symbol registries");
}

RegistryPtr merged_registry(const OpExpr& a, const OpExpr& b) {
    return a.reg ? a.reg : b.reg;
}

}  // namespace

// ---------------------------------------------------------------- orders

int cmp_atom(const VecAtom& a, const VecAtom& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.kind == VecKind::Field) return cmp_field(*a.field, *b.field);
    if (a.frame != b.frame) return a.frame < b.frame ? -1 : 1;
    if (a.index != b.index) return a.index < b.index ? -1 : 1;
    return 0;
}

int cmp_vecterm(const VecTerm& a, const VecTerm& b) {
    bool ca = a.is_cross(), cb = b.is_cross();
    if (ca != cb) return ca < cb ? -1 : 1;
    if (!ca) return cmp_atom(a.atom, b.atom);
    int c = cmp_vecterm(*a.left, *b.left);
    if (c != 0) return c;
    return cmp_vecterm(*a.right, *b.right);
}

int cmp_vecexpr(const VecExpr& a, const VecExpr& b) {
    auto ia = a.terms.begin(), ib = b.terms.begin();
    while (ia != a.terms.end() && ib != b.terms.end()) {
        int c = cmp_vecterm(ia->second, ib->second);
        if (c != 0) return c;
        c = cmp_scalar(ia->first, ib->first);
        if (c != 0) return c;
        ++ia;
        ++ib;
    }
    if (ia != a.terms.end()) return 1;
    if (ib != b.terms.end()) return -1;
    return 0;
}

int cmp_field(const FieldAtom& a, const FieldAtom& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    int c = cmp_vecexpr(a.point, b.point);
    if (c != 0) return c;
    auto ia = a.dirs.begin(), ib = b.dirs.begin();
    while (ia != a.dirs.end() && ib != b.dirs.end()) {
        c = cmp_vecexpr(ia->dir, ib->dir);
        if (c != 0) return c;
        if (ia->mult != ib->mult) return ia->mult < ib->mult ? -1 : 1;
        ++ia;
        ++ib;
    }
    if (ia != a.dirs.end()) return 1;
    if (ib != b.dirs.end()) return -1;
    return 0;
}

int cmp_factor(const OpFactor& a, const OpFactor& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    switch (a.kind) {
        case FactorKind::Dot: {
            int c = cmp_vecterm(a.a, b.a);
            if (c != 0) return c;
            return cmp_vecterm(a.b, b.b);
        }
        case FactorKind::InverseNorm:
            return cmp_vecexpr(a.arg, b.arg);
        case FactorKind::Named:
            return a.name < b.name ? -1 : (a.name == b.name ? 0 : 1);
    }
    return 0;
}

int cmp_factors(const std::vector<OpFactor>& a, const std::vector<OpFactor>& b) {
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        int c = cmp_factor(*ia, *ib);
        if (c != 0) return c;
        ++ia;
        ++ib;
    }
    if (ia != a.end()) return 1;
    if (ib != b.end()) return -1;
    return 0;
}

int cmp_term_key(const OpTerm& a, const OpTerm& b) {
    int c = cmp_factors(a.factors, b.factors);
    if (c != 0) return c;
    if (a.hermitian != b.hermitian) return a.hermitian < b.hermitian ? -1 : 1;
    return 0;
}

// ---------------------------------------------------------- construction

VecExpr VecExpr::operator+(const VecExpr& o) const {
    VecExpr out = *this;
    out.terms.insert(out.terms.end(), o.terms.begin(), o.terms.end());
    return out;
}

VecExpr VecExpr::operator-() const {
    VecExpr out = *this;
    for (auto& [c, t] : out.terms) c = -c;
    return out;
}

VecExpr VecExpr::operator-(const VecExpr& o) const { return *this + (-o); }

VecExpr VecExpr::scaled(const ScalarExpr& s) const {
    VecExpr out;
    for (auto& [c, t] : terms) out.terms.push_back({c * s, t});
    return out;
}

VecExpr cross(const VecExpr& a, const VecExpr& b) {
    VecExpr out;
    for (auto& [ca, ta] : a.terms)
        for (auto& [cb, tb] : b.terms) out.terms.push_back({ca * cb, VecTerm(ta, tb)});
    return out;
}

OpExpr dot(const VecExpr& a, const VecExpr& b, RegistryPtr reg) {
    OpExpr out;
    out.reg = std::move(reg);
    for (auto& [ca, ta] : a.terms)
        for (auto& [cb, tb] : b.terms) {
            OpTerm t;
            t.coeff = ca * cb;
            t.factors.push_back(OpFactor::dot(ta, tb));
            out.terms.push_back(std::move(t));
        }
    return out;
}

OpExpr op_term(ScalarExpr coeff, std::vector<OpFactor> factors, bool hermitian, RegistryPtr reg) {
    OpExpr out;
    out.reg = std::move(reg);
    OpTerm t;
    t.coeff = std::move(coeff);
    t.factors = std::move(factors);
    t.hermitian = hermitian;
    out.terms.push_back(std::move(t));
    return out;
}

OpExpr op_scalar(ScalarExpr coeff, RegistryPtr reg) { return op_term(std::move(coeff), {}, false, std::move(reg)); }

OpExpr op_unit(RegistryPtr reg) { return op_scalar(ScalarExpr(1), std::move(reg)); }

// ------------------------------------------------------------ arithmetic

OpExpr add(const OpExpr& a, const OpExpr& b) {
    check_same_registry(a, b);
    OpExpr out;
    out.reg = merged_registry(a, b);
    out.terms = a.terms;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return canonicalize(out);
}

OpExpr sub(const OpExpr& a, const OpExpr& b) { return add(a, negate(b)); }

OpExpr negate(const OpExpr& a) {
    OpExpr out = a;
    for (auto& t : out.terms) t.coeff = -t.coeff;
    return out;
}

OpExpr scale(const OpExpr& a, const ScalarExpr& s) {
    OpExpr out = a;
    for (auto& t : out.terms) t.coeff = t.coeff * s;
    return out;
}

OpExpr multiply(const OpExpr& a, const OpExpr& b) {
    check_same_registry(a, b);
    OpExpr out;
    out.reg = merged_registry(a, b);
    for (auto& ta : a.terms)
        for (auto& tb : b.terms) {
            if ((ta.hermitian && !tb.factors.empty()) || (tb.hermitian && !ta.factors.empty()))
                throw AlgebraError("cannot multiply hermitian-marked terms by operator factors");
            OpTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.factors = ta.factors;
            t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
            t.hermitian = ta.hermitian || tb.hermitian;
            out.terms.push_back(std::move(t));
        }
    return out;
}

// ----------------------------------------------------------- commutation

namespace {

bool field_mentions_position(const FieldAtom& f, int index, Frame frame);

void collect_atoms_rec(const VecTerm& t, std::vector<VecAtom>& out) {
    if (t.is_cross()) {
        collect_atoms_rec(*t.left, out);
        collect_atoms_rec(*t.right, out);
    } else {
        out.push_back(t.atom);
    }
}

bool is_spin_like(const VecAtom& a) {
    return a.kind == VecKind::Spin || a.kind == VecKind::MagneticMoment;
}

bool atom_commutes(const VecAtom& x, const VecAtom& y) {
    if (is_spin_like(x) || is_spin_like(y)) {
        // spin with everything non-spin; spin pairs are not licensed
        return !(is_spin_like(x) && is_spin_like(y));
    }
    auto is_field = [](const VecAtom& a) { return a.kind == VecKind::Field; };
    if (is_field(x) && is_field(y)) return false;
    if (is_field(x) || is_field(y)) {
        const VecAtom& f = is_field(x) ? x : y;
        const VecAtom& p = is_field(x) ? y : x;
        if (p.kind == VecKind::Position) return true;
        return !field_mentions_position(*f.field, p.index, p.frame);
    }
    if (x.kind == y.kind) return true;  // both positions or both momenta
    // one position, one momentum
    if (x.frame != y.frame) return false;
    return x.index != y.index;
}

bool field_mentions_position(const FieldAtom& f, int index, Frame frame) {
    std::vector<VecAtom> atoms;
    for (auto& [c, t] : f.point.terms) collect_atoms_rec(t, atoms);
    for (auto& d : f.dirs)
        for (auto& [c, t] : d.dir.terms) collect_atoms_rec(t, atoms);
    for (auto& a : atoms) {
        if (a.kind == VecKind::Position && a.index == index && a.frame == frame) return true;
        if (a.kind == VecKind::Field && field_mentions_position(*a.field, index, frame)) return true;
    }
    return false;
}

// pseudo-atom classification of named atoms: Hf lives in the photon sector,
// Pself in the particle position sector
enum class NamedSector { Photon, ParticlePosition, Unknown };

NamedSector named_sector(const std::string& name) {
    if (name == "Hf") return NamedSector::Photon;
    if (name == "Pself") return NamedSector::ParticlePosition;
    return NamedSector::Unknown;
}

bool named_commutes_with_atom(const std::string& name, const VecAtom& a) {
    switch (named_sector(name)) {
        case NamedSector::Photon:
            return a.kind != VecKind::Field;
        case NamedSector::ParticlePosition:
            return a.kind != VecKind::Momentum;
        case NamedSector::Unknown:
            return false;
    }
    return false;
}

}  // namespace

void collect_atoms(const VecTerm& t, std::vector<VecAtom>& out) { collect_atoms_rec(t, out); }

void collect_atoms(const OpFactor& f, std::vector<VecAtom>& out) {
    switch (f.kind) {
        case FactorKind::Dot:
            collect_atoms_rec(f.a, out);
            collect_atoms_rec(f.b, out);
            break;
        case FactorKind::InverseNorm:
            for (auto& [c, t] : f.arg.terms) collect_atoms_rec(t, out);
            break;
        case FactorKind::Named:
            break;
    }
}

bool vec_commutes(const VecTerm& x, const VecTerm& y) {
    std::vector<VecAtom> ax, ay;
    collect_atoms_rec(x, ax);
    collect_atoms_rec(y, ay);
    for (auto& a : ax)
        for (auto& b : ay)
            if (!atom_commutes(a, b)) return false;
    return true;
}

bool commutes(const OpFactor& x, const OpFactor& y) {
    if (cmp_factor(x, y) == 0) return true;  // identical factors always commute
    if (x.kind == FactorKind::Named || y.kind == FactorKind::Named) {
        if (x.kind == FactorKind::Named && y.kind == FactorKind::Named) {
            if (x.name == y.name) return true;
            NamedSector sx = named_sector(x.name), sy = named_sector(y.name);
            return sx != NamedSector::Unknown && sy != NamedSector::Unknown && sx != sy;
        }
        const OpFactor& named = x.kind == FactorKind::Named ? x : y;
        const OpFactor& other = x.kind == FactorKind::Named ? y : x;
        std::vector<VecAtom> atoms;
        collect_atoms(other, atoms);
        for (auto& a : atoms)
            if (!named_commutes_with_atom(named.name, a)) return false;
        return true;
    }
    std::vector<VecAtom> ax, ay;
    collect_atoms(x, ax);
    collect_atoms(y, ay);
    for (auto& a : ax)
        for (auto& b : ay)
            if (!atom_commutes(a, b)) return false;
    return true;
}

// -------------------------------------------------------- canonical form

namespace {

struct WeightedTerm {
    ScalarExpr coeff;
    VecTerm term;
};

std::vector<WeightedTerm> canonicalize_vecterm(const VecTerm& t);

void require_position_only(const VecExpr& v, const char* where) {
    for (auto& [c, t] : v.terms) {
        std::vector<VecAtom> atoms;
        collect_atoms_rec(t, atoms);
        for (auto& a : atoms)
            if (a.kind != VecKind::Position)
                throw AlgebraError(std::string("only position atoms may appear in ") + where);
    }
}

VecExpr merge_vec_terms(std::vector<WeightedTerm> parts) {
    std::sort(parts.begin(), parts.end(),
              [](const WeightedTerm& a, const WeightedTerm& b) { return cmp_vecterm(a.term, b.term) < 0; });
    VecExpr out;
    for (auto& p : parts) {
        if (p.coeff.is_zero()) continue;
        if (!out.terms.empty() && cmp_vecterm(out.terms.back().second, p.term) == 0) {
            out.terms.back().first = out.terms.back().first + p.coeff;
            if (out.terms.back().first.is_zero()) out.terms.pop_back();
        } else {
            out.terms.push_back({p.coeff, p.term});
        }
    }
    return out;
}

// expand one (direction, multiplicity) pair over a canonical direction sum:
// (sum_i c_i t_i . grad)^n  ->  multinomial terms with atomic directions
struct DirExpansion {
    ScalarExpr coeff;
    std::vector<std::pair<VecTerm, int>> dirs;
};

void expand_dir_rec(const VecExpr& d, int i, int remaining, const ScalarExpr& acc,
                    std::vector<std::pair<VecTerm, int>>& picked, const Rat& multinomial_num,
                    std::vector<DirExpansion>& out) {
    int k = static_cast<int>(d.terms.size());
    if (i == k - 1) {
        // last slot takes the remainder
        ScalarExpr c = acc * scalar_pow(d.terms[i].first, remaining);
        Rat w = multinomial_num / rat_factorial(remaining);
        c = c * ScalarExpr(w);
        auto dirs = picked;
        if (remaining > 0) dirs.push_back({d.terms[i].second, remaining});
        out.push_back({std::move(c), std::move(dirs)});
        return;
    }
    for (int n = 0; n <= remaining; ++n) {
        ScalarExpr c = acc * scalar_pow(d.terms[i].first, n);
        Rat w = multinomial_num / rat_factorial(n);
        if (n > 0) picked.push_back({d.terms[i].second, n});
        expand_dir_rec(d, i + 1, remaining - n, c, picked, w, out);
        if (n > 0) picked.pop_back();
    }
}

std::vector<DirExpansion> expand_dir(const VecExpr& d, int mult) {
    std::vector<DirExpansion> out;
    if (d.terms.empty()) return out;  // zero direction annihilates the term
    std::vector<std::pair<VecTerm, int>> picked;
    expand_dir_rec(d, 0, mult, ScalarExpr(1), picked, rat_factorial(mult), out);
    return out;
}

std::vector<WeightedTerm> canonicalize_field(const FieldAtom& f) {
    VecExpr point = canonicalize(f.point);
    require_position_only(point, "field evaluation points");

    ScalarExpr base(1);
    FieldKind kind = f.kind;
    if (kind == FieldKind::Pi) {
        // Pi = -eps0 E
        kind = FieldKind::E;
        base = base * ScalarExpr(Rat(-1)) * ScalarExpr::var(sym::eps0);
    }

    std::vector<DirExpansion> combos{{base, {}}};
    for (auto& d : f.dirs) {
        if (d.mult == 0) continue;
        if (d.mult < 0) throw AlgebraError("negative derivative multiplicity");
        VecExpr dir = canonicalize(d.dir);
        require_position_only(dir, "directional derivatives");
        auto parts = expand_dir(dir, d.mult);
        std::vector<DirExpansion> next;
        for (auto& c : combos)
            for (auto& p : parts) {
                DirExpansion e;
                e.coeff = c.coeff * p.coeff;
                e.dirs = c.dirs;
                e.dirs.insert(e.dirs.end(), p.dirs.begin(), p.dirs.end());
                next.push_back(std::move(e));
            }
        combos = std::move(next);
    }

    std::vector<WeightedTerm> out;
    for (auto& c : combos) {
        // merge equal directions, sort
        std::sort(c.dirs.begin(), c.dirs.end(),
                  [](const auto& a, const auto& b) { return cmp_vecterm(a.first, b.first) < 0; });
        std::vector<FieldAtom::Dir> dirs;
        for (auto& [term, mult] : c.dirs) {
            if (!dirs.empty() && cmp_vecexpr(dirs.back().dir, VecExpr(term)) == 0)
                dirs.back().mult += mult;
            else
                dirs.push_back({VecExpr(term), mult});
        }
        auto atom = std::make_shared<FieldAtom>();
        atom->kind = kind;
        atom->point = point;
        atom->dirs = std::move(dirs);
        out.push_back({c.coeff, VecTerm(VecAtom::of_field(std::move(atom)))});
    }
    return out;
}

std::vector<WeightedTerm> canonicalize_vecterm(const VecTerm& t) {
    if (!t.is_cross()) {
        if (t.atom.kind == VecKind::Field) return canonicalize_field(*t.atom.field);
        return {{ScalarExpr(1), t}};
    }
    auto ls = canonicalize_vecterm(*t.left);
    auto rs = canonicalize_vecterm(*t.right);
    std::vector<WeightedTerm> out;
    for (auto& l : ls)
        for (auto& r : rs) {
            int c = cmp_vecterm(l.term, r.term);
            if (c == 0) continue;  // antisymmetry: X ^ X = 0
            ScalarExpr coeff = l.coeff * r.coeff;
            if (c > 0) {
                coeff = -coeff;
                out.push_back({std::move(coeff), VecTerm(r.term, l.term)});
            } else {
                out.push_back({std::move(coeff), VecTerm(l.term, r.term)});
            }
        }
    return out;
}

struct FactorAlt {
    ScalarExpr coeff;
    OpFactor factor;
};

std::vector<FactorAlt> expand_factor(const OpFactor& f) {
    std::vector<FactorAlt> out;
    switch (f.kind) {
        case FactorKind::Dot: {
            auto as = canonicalize_vecterm(f.a);
            auto bs = canonicalize_vecterm(f.b);
            for (auto& a : as)
                for (auto& b : bs) {
                    OpFactor d;
                    if (vec_commutes(a.term, b.term) && cmp_vecterm(b.term, a.term) < 0)
                        d = OpFactor::dot(b.term, a.term);
                    else
                        d = OpFactor::dot(a.term, b.term);
                    out.push_back({a.coeff * b.coeff, std::move(d)});
                }
            break;
        }
        case FactorKind::InverseNorm: {
            VecExpr arg = canonicalize(f.arg);
            if (arg.is_zero()) throw AlgebraError("inverse norm of the zero vector");
            // |q v| = q |v| for positive rational content q; |-v| = |v|
            Rat q = 0;
            for (auto& [c, t] : arg.terms) q = rat_gcd(q, c.content_gcd());
            ScalarExpr outer(1);
            if (q != 0 && q != 1) {
                ScalarExpr inv_q(Rat(1) / q);
                for (auto& [c, t] : arg.terms) c = c * inv_q;
                outer = inv_q;
            }
            if (!arg.terms.empty() && arg.terms.front().first.lead_sign() < 0)
                for (auto& [c, t] : arg.terms) c = -c;
            out.push_back({outer, OpFactor::inverse_norm(std::move(arg))});
            break;
        }
        case FactorKind::Named:
            out.push_back({ScalarExpr(1), f});
            break;
    }
    return out;
}

// lexicographically minimal representative of the trace equivalence class:
// repeatedly take the smallest factor that commutes past everything before it
std::vector<OpFactor> trace_normal_form(std::vector<OpFactor> fs) {
    std::vector<OpFactor> out;
    out.reserve(fs.size());
    while (!fs.empty()) {
        std::size_t best = 0;
        bool have = false;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            bool movable = true;
            for (std::size_t j = 0; j < i && movable; ++j)
                if (!commutes(fs[j], fs[i])) movable = false;
            if (!movable) continue;
            if (!have || cmp_factor(fs[i], fs[best]) < 0) {
                best = i;
                have = true;
            }
        }
        out.push_back(fs[best]);
        fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return out;
}

}  // namespace

VecExpr canonicalize(const VecExpr& v) {
    std::vector<WeightedTerm> parts;
    for (auto& [c, t] : v.terms)
        for (auto& w : canonicalize_vecterm(t)) parts.push_back({c * w.coeff, w.term});
    return merge_vec_terms(std::move(parts));
}

OpExpr canonicalize(const OpExpr& e) {
    std::vector<OpTerm> expanded;
    for (auto& term : e.terms) {
        if (term.coeff.is_zero()) continue;
        if (term.hermitian && term.factors.empty())
            throw AlgebraError("hermitian marker on a pure scalar term");
        std::vector<std::pair<ScalarExpr, std::vector<OpFactor>>> partials{{term.coeff, {}}};
        for (auto& f : term.factors) {
            auto alts = expand_factor(f);
            std::vector<std::pair<ScalarExpr, std::vector<OpFactor>>> next;
            for (auto& p : partials)
                for (auto& a : alts) {
                    auto fs = p.second;
                    fs.push_back(a.factor);
                    next.push_back({p.first * a.coeff, std::move(fs)});
                }
            partials = std::move(next);
        }
        for (auto& p : partials) {
            if (p.first.is_zero()) continue;
            OpTerm t;
            t.coeff = std::move(p.first);
            t.factors = trace_normal_form(std::move(p.second));
            t.hermitian = term.hermitian;
            expanded.push_back(std::move(t));
        }
    }
    std::sort(expanded.begin(), expanded.end(),
              [](const OpTerm& a, const OpTerm& b) { return cmp_term_key(a, b) < 0; });
    OpExpr out;
    out.reg = e.reg;
    for (auto& t : expanded) {
        if (!out.terms.empty() && cmp_term_key(out.terms.back(), t) == 0) {
            out.terms.back().coeff = out.terms.back().coeff + t.coeff;
            if (out.terms.back().coeff.is_zero()) out.terms.pop_back();
        } else {
            out.terms.push_back(std::move(t));
        }
    }
    return out;
}

bool equals(const OpExpr& a, const OpExpr& b) {
    check_same_registry(a, b);
    OpExpr ca = canonicalize(a);
    OpExpr cb = canonicalize(b);
    if (ca.terms.size() != cb.terms.size()) return false;
    for (std::size_t i = 0; i < ca.terms.size(); ++i) {
        if (cmp_term_key(ca.terms[i], cb.terms[i]) != 0) return false;
        if (!ca.terms[i].coeff.equals(cb.terms[i].coeff)) return false;
    }
    return true;
}

// ----------------------------------------------------------- substitution

const VecExpr* Substitution::find(const VecAtom& a) const {
    for (auto& [key, img] : map) {
        if (key.kind == a.kind && key.index == a.index && key.frame == a.frame) return &img;
    }
    return nullptr;
}

namespace {

VecExpr subst_vecterm(const VecTerm& t, const Substitution& s) {
    if (t.is_cross()) return cross(subst_vecterm(*t.left, s), subst_vecterm(*t.right, s));
    const VecAtom& a = t.atom;
    if (a.kind == VecKind::Field) {
        auto atom = std::make_shared<FieldAtom>();
        atom->kind = a.field->kind;
        atom->point = substitute(a.field->point, s);
        for (auto& d : a.field->dirs) atom->dirs.push_back({substitute(d.dir, s), d.mult});
        return VecExpr(VecAtom::of_field(std::move(atom)));
    }
    if (const VecExpr* img = s.find(a)) return *img;
    return VecExpr(t);
}

bool scalar_symbols_below(const ScalarExpr& s, std::size_t n) {
    for (auto& [g, f] : s.parts()) {
        auto check = [&](const Poly& p) {
            for (auto& [m, c] : p.terms())
                for (auto& [id, e] : m.powers)
                    if (id >= n) return false;
            return true;
        };
        if (!check(f.num())) return false;
        for (auto& [d, m] : f.den())
            if (!check(d)) return false;
    }
    return true;
}

void validate_images(const Substitution& s, const RegistryPtr& reg) {
    if (!reg) return;
    for (auto& [key, img] : s.map) {
        if (key.kind == VecKind::Field)
            throw AlgebraError("field atoms cannot be substitution keys");
        for (auto& [c, t] : img.terms)
            if (!scalar_symbols_below(c, reg->size()))
                throw AlgebraError("substitution image mentions an unregistered symbol");
    }
}

}  // namespace

VecExpr substitute(const VecExpr& v, const Substitution& s) {
    VecExpr out;
    for (auto& [c, t] : v.terms) {
        VecExpr img = subst_vecterm(t, s);
        for (auto& [ci, ti] : img.terms) out.terms.push_back({c * ci, ti});
    }
    return out;
}

OpExpr substitute(const OpExpr& e, const Substitution& s) {
    validate_images(s, e.reg);
    OpExpr out;
    out.reg = e.reg;
    for (auto& term : e.terms) {
        std::vector<std::pair<ScalarExpr, std::vector<OpFactor>>> partials{{term.coeff, {}}};
        for (auto& f : term.factors) {
            std::vector<FactorAlt> alts;
            switch (f.kind) {
                case FactorKind::Dot: {
                    VecExpr a = subst_vecterm(f.a, s);
                    VecExpr b = subst_vecterm(f.b, s);
                    for (auto& [ca, ta] : a.terms)
                        for (auto& [cb, tb] : b.terms)
                            alts.push_back({ca * cb, OpFactor::dot(ta, tb)});
                    break;
                }
                case FactorKind::InverseNorm:
                    alts.push_back({ScalarExpr(1), OpFactor::inverse_norm(substitute(f.arg, s))});
                    break;
                case FactorKind::Named:
                    alts.push_back({ScalarExpr(1), f});
                    break;
            }
            std::vector<std::pair<ScalarExpr, std::vector<OpFactor>>> next;
            for (auto& p : partials)
                for (auto& a : alts) {
                    auto fs = p.second;
                    fs.push_back(a.factor);
                    next.push_back({p.first * a.coeff, std::move(fs)});
                }
            partials = std::move(next);
        }
        for (auto& p : partials) {
            OpTerm t;
            t.coeff = std::move(p.first);
            t.factors = std::move(p.second);
            t.hermitian = term.hermitian;
            out.terms.push_back(std::move(t));
        }
    }
    return canonicalize(out);
}

// -------------------------------------------------------------- utilities

static bool field_mentions_frame(const FieldAtom& f, Frame fr);

static bool atoms_mention_frame(const std::vector<VecAtom>& atoms, Frame fr) {
    for (auto& a : atoms) {
        if ((a.kind == VecKind::Position || a.kind == VecKind::Momentum) && a.frame == fr)
            return true;
        if (a.kind == VecKind::Field && field_mentions_frame(*a.field, fr)) return true;
    }
    return false;
}

static bool field_mentions_frame(const FieldAtom& f, Frame fr) {
    std::vector<VecAtom> atoms;
    for (auto& [c, t] : f.point.terms) collect_atoms(t, atoms);
    for (auto& d : f.dirs)
        for (auto& [c, t] : d.dir.terms) collect_atoms(t, atoms);
    return atoms_mention_frame(atoms, fr);
}

bool mentions_frame(const OpExpr& e, Frame f) {
    for (auto& term : e.terms)
        for (auto& factor : term.factors) {
            std::vector<VecAtom> atoms;
            collect_atoms(factor, atoms);
            if (atoms_mention_frame(atoms, f)) return true;
        }
    return false;
}

std::map<int, OpExpr> split_by_grade(const OpExpr& e) {
    std::map<int, OpExpr> out;
    for (auto& term : e.terms) {
        for (auto& [g, f] : term.coeff.parts()) {
            OpTerm t;
            t.coeff = ScalarExpr::graded(g, f);
            t.factors = term.factors;
            t.hermitian = term.hermitian;
            auto it = out.find(g);
            if (it == out.end()) {
                OpExpr block;
                block.reg = e.reg;
                block.terms.push_back(std::move(t));
                out.emplace(g, std::move(block));
            } else {
                it->second.terms.push_back(std::move(t));
            }
        }
    }
    for (auto& [g, block] : out) block = canonicalize(block);
    return out;
}

OpExpr grade_shifted(const OpExpr& e, int delta) {
    OpExpr out = e;
    for (auto& t : out.terms) t.coeff = t.coeff.shifted(delta);
    return out;
}

}  // namespace mpqed
