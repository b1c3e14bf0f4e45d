#include "mpqed/multipole.hpp"

#include "mpqed/error.hpp"
#include "mpqed/fields.hpp"

namespace mpqed {

const char* family_name(Family f) {
    switch (f) {
        case Family::E: return "E";
        case Family::S: return "S";
        case Family::M: return "M";
        case Family::MM: return "MM";
        case Family::A: return "A";
        case Family::AA: return "AA";
    }
    return "?";
}

int family_offset(Family f) {
    switch (f) {
        case Family::E:
        case Family::A: return 1;
        case Family::S:
        case Family::M:
        case Family::AA: return 2;
        case Family::MM: return 4;
    }
    return 0;
}

int family_sign(Family f) {
    switch (f) {
        case Family::S:
        case Family::A: return -1;
        default: return 1;
    }
}

ScalarExpr lambda_integrate(const ScalarExpr& p) {
    return p.integrate_unit(sym::lambda1).integrate_unit(sym::lambda2);
}

OpExpr lambda_integrate(const OpExpr& e) {
    OpExpr out = e;
    for (auto& t : out.terms) t.coeff = lambda_integrate(t.coeff);
    return canonicalize(out);
}

namespace {

ScalarExpr mu_point_of(const ParticleSystem& s) {
    return ScalarExpr(Rat(s.z)) * ScalarExpr::var(sym::alpha);
}

// shared family pipeline: dilate the positive coupling form, divide mu^2,
// Taylor-expand about the center of mass, integrate the line variable, and
// strip the family grade offsets
GradedFamily family_from_coupling(const ParticleSystem& s, const OpExpr& coupling, Family tag,
                                  int nmax) {
    GradedFamily fam;
    fam.tag = tag;
    if (nmax < 0 || coupling.is_zero()) return fam;
    int offset = family_offset(tag);
    ScalarExpr mu = mu_point_of(s);
    ScalingAxioms ax = ScalingAxioms::standard(mu);
    OpExpr scaled = grade_shifted(apply_dilation(coupling, ax), -2);
    OpExpr expanded = taylor_expand_fields(scaled, center_of_mass(s), mu, offset + nmax);
    OpExpr integrated = lambda_integrate(expanded);
    for (auto& [grade, block] : split_by_grade(integrated)) {
        int n = grade - offset;
        if (n < 0 || n > nmax)
            throw AlgebraError("family term outside its grade window");
        fam.entries[n] = grade_shifted(block, -grade);
    }
    return fam;
}

OpExpr paramagnetic_coupling(const ParticleSystem& s, const RegistryPtr& reg) {
    LambdaInteraction li = interaction_lambda_terms(s, reg);
    OpExpr out;
    out.reg = reg;
    for (int a = 1; a <= s.n; ++a) {
        const VecExpr& theta = li.theta_wedge_b[static_cast<std::size_t>(a - 1)];
        if (theta.is_zero()) continue;
        VecExpr p{VecAtom::momentum(a, Frame::Lab)};
        OpExpr term = dot(p, theta, reg);
        for (auto& t : term.terms) t.hermitian = true;
        out = add(out, scale(term, ScalarExpr(Rat(1, 2)) / ScalarExpr::var(s.mass(a))));
    }
    return out;
}

OpExpr spin_coupling(const ParticleSystem& s, const RegistryPtr& reg) {
    OpExpr out;
    out.reg = reg;
    for (int a = 1; a <= s.n; ++a) {
        if (!s.has_moment(a) || s.charge(a) == 0) continue;
        VecExpr m{VecAtom::moment(a)};
        VecExpr b = make_field(FieldKind::B, VecExpr(VecAtom::position(a, Frame::Lab)));
        out = add(out, dot(m, b, reg));
    }
    return out;
}

}  // namespace

GradedFamily electric_family(const ParticleSystem& s, const RegistryPtr& reg, int nmax) {
    LambdaInteraction li = interaction_lambda_terms(s, reg);
    return family_from_coupling(s, li.electric, Family::E, nmax);
}

GradedFamily spin_family(const ParticleSystem& s, const RegistryPtr& reg, int nmax) {
    return family_from_coupling(s, spin_coupling(s, reg), Family::S, nmax);
}

GradedFamily magnetic_family(const ParticleSystem& s, const RegistryPtr& reg, int nmax) {
    return family_from_coupling(s, paramagnetic_coupling(s, reg), Family::M, nmax);
}

GradedFamily diamagnetic_family(const ParticleSystem& s, const RegistryPtr& reg, int nmax) {
    Hamiltonian h = build_multipolar(s, reg);
    const OpExpr* dia = h.group(Group::Diamagnetic);
    if (!dia) return GradedFamily{Family::MM, {}};
    return family_from_coupling(s, *dia, Family::MM, nmax);
}

GradedFamily pa_family(const ParticleSystem& s, const RegistryPtr& reg, int nmax) {
    Hamiltonian h = build_minimal_coupling(s, reg);
    const OpExpr* pa = h.group(Group::PA);
    if (!pa) return GradedFamily{Family::A, {}};
    return family_from_coupling(s, negate(*pa), Family::A, nmax);
}

GradedFamily aa_family(const ParticleSystem& s, const RegistryPtr& reg, int nmax) {
    Hamiltonian h = build_minimal_coupling(s, reg);
    const OpExpr* aa = h.group(Group::AA);
    if (!aa) return GradedFamily{Family::AA, {}};
    return family_from_coupling(s, *aa, Family::AA, nmax);
}

OpExpr Hierarchy::block(int n) const {
    auto it = blocks.find(n);
    if (it != blocks.end()) return it->second;
    OpExpr empty;
    empty.reg = scaled.reg;
    return empty;
}

Hierarchy assemble_hierarchy(const ParticleSystem& s, const RegistryPtr& reg, Scheme scheme,
                             int order, bool include_self_energy) {
    if (order < 1) throw ConfigError("expansion order must be at least 1");
    Hierarchy out;
    out.scheme = scheme;
    out.order = order;
    out.include_self_energy = include_self_energy;

    Hamiltonian h = scheme == Scheme::Multipolar ? build_multipolar(s, reg)
                                                 : build_minimal_coupling(s, reg);
    out.scaled = scale_hamiltonian(h, s, include_self_energy);

    ScalarExpr mu = mu_point_of(s);
    VecExpr com = center_of_mass(s);
    static const Group interaction[] = {Group::Electric, Group::Paramagnetic, Group::Spin,
                                        Group::Diamagnetic, Group::PA, Group::AA,
                                        Group::SelfEnergy};
    for (Group g : interaction) {
        const OpExpr* expr = out.scaled.group(g);
        if (!expr || expr->is_zero()) continue;
        OpExpr expanded = taylor_expand_fields(*expr, com, mu, order);
        OpExpr integrated = lambda_integrate(expanded);
        for (auto& [grade, block] : split_by_grade(integrated)) {
            if (grade > order) continue;
            if (grade < 1 && g != Group::SelfEnergy)
                throw AlgebraError("interaction term below grade 1");
            auto it = out.blocks.find(grade);
            if (it == out.blocks.end())
                out.blocks[grade] = block;
            else
                it->second = add(it->second, block);
        }
    }
    return out;
}

}  // namespace mpqed
