#include "mpqed/fields.hpp"

#include "mpqed/error.hpp"
#include "mpqed/serialize.hpp"

namespace mpqed {

namespace {

int field_grade(const ScalingAxioms& ax, FieldKind k) {
    switch (k) {
        case FieldKind::E: return ax.field_e;
        case FieldKind::B: return ax.field_b;
        case FieldKind::A: return ax.field_a;
        case FieldKind::Pi: return ax.field_pi;
    }
    return 0;
}

// returns the dilated term and accumulates the picked-up grade
VecTerm dilate_vecterm(const VecTerm& t, const ScalingAxioms& ax, int& grade) {
    if (t.is_cross()) {
        VecTerm l = dilate_vecterm(*t.left, ax, grade);
        VecTerm r = dilate_vecterm(*t.right, ax, grade);
        return VecTerm(l, r);
    }
    const VecAtom& a = t.atom;
    switch (a.kind) {
        case VecKind::Position:
            grade += ax.position;
            return t;
        case VecKind::Momentum:
            grade += ax.momentum;
            return t;
        case VecKind::Spin:
        case VecKind::MagneticMoment:
            return t;
        case VecKind::Field: {
            grade += field_grade(ax, a.field->kind);
            auto atom = std::make_shared<FieldAtom>();
            atom->kind = a.field->kind;
            atom->point = a.field->point.scaled(ax.mu_point);
            atom->dirs = a.field->dirs;  // (X.grad)^n picks up no net grade
            return VecTerm(VecAtom::of_field(std::move(atom)));
        }
    }
    return t;
}

}  // namespace

OpExpr apply_dilation(const OpExpr& e, const ScalingAxioms& ax) {
    OpExpr out;
    out.reg = e.reg;
    for (auto& term : e.terms) {
        OpTerm t;
        t.hermitian = term.hermitian;
        int grade = 0;
        for (auto& f : term.factors) {
            switch (f.kind) {
                case FactorKind::Dot: {
                    OpFactor d;
                    d.kind = FactorKind::Dot;
                    d.a = dilate_vecterm(f.a, ax, grade);
                    d.b = dilate_vecterm(f.b, ax, grade);
                    t.factors.push_back(std::move(d));
                    break;
                }
                case FactorKind::InverseNorm:
                    grade += ax.inverse_norm;
                    t.factors.push_back(f);
                    break;
                case FactorKind::Named: {
                    auto it = ax.named.find(f.name);
                    if (it == ax.named.end())
                        throw AlgebraError("no dilation rule for atom '" + f.name + "'");
                    grade += it->second;
                    t.factors.push_back(f);
                    break;
                }
            }
        }
        t.coeff = term.coeff.shifted(grade);
        out.terms.push_back(std::move(t));
    }
    return out;
}

std::vector<TaylorTerm> taylor_expand(const FieldAtom& f, const VecExpr& center,
                                      const ScalarExpr& mu_point, int max_order) {
    if (max_order < 0) throw AlgebraError("negative expansion order");
    if (mu_point.is_zero()) throw AlgebraError("mu value must be nonzero");
    // X = point/mu - center; must be free of field atoms (checked by the
    // position-only canonical invariant of points)
    VecExpr x = canonicalize(f.point.scaled(ScalarExpr(1) / mu_point) - center);
    VecExpr at = canonicalize(center.scaled(mu_point));

    std::vector<TaylorTerm> out;
    int top = x.is_zero() ? 0 : max_order;
    for (int n = 0; n <= top; ++n) {
        auto atom = std::make_shared<FieldAtom>();
        atom->kind = f.kind;
        atom->point = at;
        atom->dirs = f.dirs;
        if (n > 0) atom->dirs.push_back({x, n});
        TaylorTerm t;
        t.order = n;
        t.coeff = ScalarExpr::graded(n, RatFunc(Rat(1) / rat_factorial(n)));
        t.atom = std::move(atom);
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

struct Alt {
    ScalarExpr coeff;
    VecTerm term;
};

// Taylor alternatives of one vector term (fields replaced by their series)
std::vector<Alt> expand_term_fields(const VecTerm& t, const VecExpr& center,
                                    const ScalarExpr& mu_point, int budget) {
    if (t.is_cross()) {
        auto ls = expand_term_fields(*t.left, center, mu_point, budget);
        std::vector<Alt> out;
        for (auto& l : ls) {
            int used = l.coeff.is_zero() ? 0 : l.coeff.min_grade();
            auto rs = expand_term_fields(*t.right, center, mu_point, budget - used);
            for (auto& r : rs) out.push_back({l.coeff * r.coeff, VecTerm(l.term, r.term)});
        }
        return out;
    }
    if (t.atom.kind != VecKind::Field) return {{ScalarExpr(1), t}};
    std::vector<Alt> out;
    for (auto& tt : taylor_expand(*t.atom.field, center, mu_point, budget)) {
        out.push_back({tt.coeff, VecTerm(VecAtom::of_field(tt.atom))});
    }
    return out;
}

}  // namespace

OpExpr taylor_expand_fields(const OpExpr& e, const VecExpr& center, const ScalarExpr& mu_point,
                            int max_grade) {
    OpExpr out;
    out.reg = e.reg;
    for (auto& term : e.terms) {
        if (term.coeff.is_zero()) continue;
        if (!term.coeff.single_grade())
            throw AlgebraError("expansion needs single-grade term coefficients");
        int base = term.coeff.min_grade();
        std::vector<std::pair<ScalarExpr, std::vector<OpFactor>>> partials{{term.coeff, {}}};
        for (auto& f : term.factors) {
            std::vector<std::pair<ScalarExpr, OpFactor>> alts;
            switch (f.kind) {
                case FactorKind::Dot: {
                    auto as = expand_term_fields(f.a, center, mu_point, max_grade - base);
                    for (auto& a : as) {
                        int used = a.coeff.is_zero() ? 0 : a.coeff.min_grade();
                        auto bs = expand_term_fields(f.b, center, mu_point, max_grade - base - used);
                        for (auto& b : bs)
                            alts.push_back({a.coeff * b.coeff, OpFactor::dot(a.term, b.term)});
                    }
                    break;
                }
                default:
                    alts.push_back({ScalarExpr(1), f});
                    break;
            }
            std::vector<std::pair<ScalarExpr, std::vector<OpFactor>>> next;
            for (auto& p : partials)
                for (auto& a : alts) {
                    ScalarExpr c = p.first * a.first;
                    if (c.is_zero()) continue;
                    if (c.min_grade() > max_grade) continue;
                    auto fs = p.second;
                    fs.push_back(a.second);
                    next.push_back({std::move(c), std::move(fs)});
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

}  // namespace mpqed
