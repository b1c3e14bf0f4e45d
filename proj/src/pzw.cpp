#include "mpqed/pzw.hpp"

#include "mpqed/error.hpp"

namespace mpqed {

bool ParticleSystem::neutral() const {
    int q = 0;
    for (int c : charges) q += c;
    return q == 0;
}

void ParticleSystem::validate() const {
    if (n < 1) throw ConfigError("system needs at least one particle");
    if (charges.size() != static_cast<std::size_t>(n) || masses.size() != static_cast<std::size_t>(n) ||
        lande.size() != static_cast<std::size_t>(n))
        throw ConfigError("charges, masses and lande lists must each have one entry per particle");
    if (nucleus < 1 || nucleus > n) throw ConfigError("nucleus index out of range");
    int zn = charges[static_cast<std::size_t>(nucleus - 1)];
    if (z != (zn < 0 ? -zn : zn))
        throw ConfigError("Z must equal the magnitude of the nucleus charge");
}

const char* group_name(Group g) {
    switch (g) {
        case Group::Kinetic: return "kinetic";
        case Group::CoulombNucleus: return "coulomb-nucleus";
        case Group::CoulombElectron: return "coulomb-electron";
        case Group::FreeField: return "free-field";
        case Group::Electric: return "electric";
        case Group::Paramagnetic: return "paramagnetic";
        case Group::Spin: return "spin";
        case Group::Diamagnetic: return "diamagnetic";
        case Group::SelfEnergy: return "self-energy";
        case Group::PA: return "p.A";
        case Group::AA: return "A^2";
    }
    return "?";
}

const OpExpr* Hamiltonian::group(Group g) const {
    auto it = groups.find(g);
    return it == groups.end() ? nullptr : &it->second;
}

OpExpr Hamiltonian::total() const {
    OpExpr out;
    out.reg = reg;
    for (auto& [g, e] : groups) out = add(out, e);
    return out;
}

ScalarExpr total_mass(const ParticleSystem& s) {
    ScalarExpr m(0);
    for (int a = 1; a <= s.n; ++a) m = m + ScalarExpr::var(s.mass(a));
    return m;
}

VecExpr center_of_mass(const ParticleSystem& s) {
    ScalarExpr M = total_mass(s);
    VecExpr out;
    for (int a = 1; a <= s.n; ++a) {
        ScalarExpr w = ScalarExpr::var(s.mass(a)) / M;
        out = out + VecExpr(VecAtom::position(a, Frame::Lab)).scaled(w);
    }
    return out;
}

VecExpr relative_position(const ParticleSystem& s, int a) {
    return VecExpr(VecAtom::position(a, Frame::Lab)) - center_of_mass(s);
}

namespace {

ScalarExpr coulomb_coeff(int za, int zb) {
    // z_a z_b e^2 / (4 pi eps0)
    ScalarExpr q(Rat(za * zb, 4));
    return q * ScalarExpr::var(sym::e, 2) / (ScalarExpr::var(sym::pi) * ScalarExpr::var(sym::eps0));
}

OpExpr kinetic_group(const ParticleSystem& s, const RegistryPtr& reg) {
    OpExpr out;
    out.reg = reg;
    for (int a = 1; a <= s.n; ++a) {
        VecExpr p{VecAtom::momentum(a, Frame::Lab)};
        ScalarExpr w = ScalarExpr(Rat(1, 2)) / ScalarExpr::var(s.mass(a));
        out = add(out, scale(dot(p, p, reg), w));
    }
    return out;
}

OpExpr coulomb_group(const ParticleSystem& s, const RegistryPtr& reg, bool nucleus_pairs) {
    OpExpr out;
    out.reg = reg;
    for (int a = 1; a <= s.n; ++a)
        for (int b = a + 1; b <= s.n; ++b) {
            bool with_nucleus = (a == s.nucleus || b == s.nucleus);
            if (with_nucleus != nucleus_pairs) continue;
            if (s.charge(a) * s.charge(b) == 0) continue;
            VecExpr diff = VecExpr(VecAtom::position(a, Frame::Lab)) -
                           VecExpr(VecAtom::position(b, Frame::Lab));
            out = add(out, op_term(coulomb_coeff(s.charge(a), s.charge(b)),
                                   {OpFactor::inverse_norm(diff)}, false, reg));
        }
    return out;
}

OpExpr free_field_group(const RegistryPtr& reg) {
    return op_term(ScalarExpr(1), {OpFactor::named("Hf")}, false, reg);
}

OpExpr spin_group(const ParticleSystem& s, const RegistryPtr& reg) {
    OpExpr out;
    out.reg = reg;
    for (int a = 1; a <= s.n; ++a) {
        if (!s.has_moment(a) || s.charge(a) == 0) continue;
        VecExpr m{VecAtom::moment(a)};
        VecExpr b = make_field(FieldKind::B, VecExpr(VecAtom::position(a, Frame::Lab)));
        out = add(out, negate(dot(m, b, reg)));
    }
    return out;
}

}  // namespace

LambdaInteraction interaction_lambda_terms(const ParticleSystem& s, const RegistryPtr& reg,
                                           SymbolId which_lambda) {
    if (!s.neutral())
        throw ConfigError("the multipolar coupling scheme requires a neutral system");
    LambdaInteraction out;
    out.electric.reg = reg;
    ScalarExpr lam = ScalarExpr::var(which_lambda);
    ScalarExpr M = total_mass(s);
    VecExpr com = center_of_mass(s);

    // electric: sum_a e_a (r_a - R) . Pi(R + lambda (r_a - R)) / eps0
    for (int a = 1; a <= s.n; ++a) {
        if (s.charge(a) == 0) continue;
        VecExpr x = relative_position(s, a);
        VecExpr point = com + x.scaled(lam);
        VecExpr pi = make_field(FieldKind::Pi, point);
        ScalarExpr w = ScalarExpr(Rat(s.charge(a))) * ScalarExpr::var(sym::e) / ScalarExpr::var(sym::eps0);
        out.electric = add(out.electric, scale(dot(x, pi, reg), w));
    }

    // magnetization integrands: int Theta_a ^ B
    //   sum_b (lambda delta_ab - (m_a/M)(lambda - 1)) e_b (r_b - R) ^ B(R + lambda (r_b - R))
    for (int a = 1; a <= s.n; ++a) {
        VecExpr acc;
        for (int b = 1; b <= s.n; ++b) {
            if (s.charge(b) == 0) continue;
            VecExpr xb = relative_position(s, b);
            VecExpr point = com + xb.scaled(lam);
            VecExpr bfield = make_field(FieldKind::B, point);
            ScalarExpr weight = (ScalarExpr::var(s.mass(a)) / M) * (ScalarExpr(1) - lam);
            if (a == b) weight = weight + lam;
            ScalarExpr w = weight * ScalarExpr(Rat(s.charge(b))) * ScalarExpr::var(sym::e);
            acc = acc + cross(xb, bfield).scaled(w);
        }
        out.theta_wedge_b.push_back(std::move(acc));
    }
    return out;
}

OpExpr build_zero_order(const ParticleSystem& s, const RegistryPtr& reg) {
    s.validate();
    OpExpr out = kinetic_group(s, reg);
    out = add(out, coulomb_group(s, reg, /*nucleus_pairs=*/true));
    out = add(out, free_field_group(reg));
    return out;
}

Hamiltonian build_multipolar(const ParticleSystem& s, const RegistryPtr& reg) {
    s.validate();
    if (!s.neutral()) throw ConfigError("the multipolar Hamiltonian requires a neutral system");
    Hamiltonian h;
    h.reg = reg;
    h.groups[Group::Kinetic] = kinetic_group(s, reg);
    h.groups[Group::CoulombNucleus] = coulomb_group(s, reg, true);
    h.groups[Group::CoulombElectron] = coulomb_group(s, reg, false);
    h.groups[Group::FreeField] = free_field_group(reg);

    LambdaInteraction li = interaction_lambda_terms(s, reg);
    h.groups[Group::Electric] = li.electric;

    // paramagnetic: (1/2m_a)[p_a . (int Theta_a ^ B) + h.c.]
    OpExpr para;
    para.reg = reg;
    for (int a = 1; a <= s.n; ++a) {
        if (li.theta_wedge_b[static_cast<std::size_t>(a - 1)].is_zero()) continue;
        VecExpr p{VecAtom::momentum(a, Frame::Lab)};
        OpExpr cross_term = dot(p, li.theta_wedge_b[static_cast<std::size_t>(a - 1)], reg);
        for (auto& t : cross_term.terms) t.hermitian = true;
        ScalarExpr w = ScalarExpr(Rat(1, 2)) / ScalarExpr::var(s.mass(a));
        para = add(para, scale(cross_term, w));
    }
    h.groups[Group::Paramagnetic] = std::move(para);

    h.groups[Group::Spin] = spin_group(s, reg);

    // diamagnetic: (1/2m_a)(int Theta_a ^ B)^2 with independent lambda copies
    LambdaInteraction li2 = interaction_lambda_terms(s, reg, sym::lambda2);
    OpExpr dia;
    dia.reg = reg;
    for (int a = 1; a <= s.n; ++a) {
        const VecExpr& t1 = li.theta_wedge_b[static_cast<std::size_t>(a - 1)];
        const VecExpr& t2 = li2.theta_wedge_b[static_cast<std::size_t>(a - 1)];
        if (t1.is_zero()) continue;
        ScalarExpr w = ScalarExpr(Rat(1, 2)) / ScalarExpr::var(s.mass(a));
        dia = add(dia, scale(dot(t1, t2, reg), w));
    }
    h.groups[Group::Diamagnetic] = std::move(dia);

    // electrostatic self-energy, kept as an opaque flagged atom
    h.groups[Group::SelfEnergy] = op_term(ScalarExpr(1), {OpFactor::named("Pself")}, false, reg);
    return h;
}

Hamiltonian build_minimal_coupling(const ParticleSystem& s, const RegistryPtr& reg) {
    s.validate();
    Hamiltonian h;
    h.reg = reg;
    h.groups[Group::Kinetic] = kinetic_group(s, reg);
    h.groups[Group::CoulombNucleus] = coulomb_group(s, reg, true);
    h.groups[Group::CoulombElectron] = coulomb_group(s, reg, false);
    h.groups[Group::FreeField] = free_field_group(reg);
    h.groups[Group::Spin] = spin_group(s, reg);

    // (p - eA)^2 / 2m: cross terms -(e_a/2m_a)[p_a.A(r_a) + h.c.], plus A^2
    OpExpr pa, aa;
    pa.reg = aa.reg = reg;
    for (int a = 1; a <= s.n; ++a) {
        if (s.charge(a) == 0) continue;
        VecExpr p{VecAtom::momentum(a, Frame::Lab)};
        VecExpr avec = make_field(FieldKind::A, VecExpr(VecAtom::position(a, Frame::Lab)));
        OpExpr cross_term = dot(p, avec, reg);
        for (auto& t : cross_term.terms) t.hermitian = true;
        ScalarExpr ma = ScalarExpr::var(s.mass(a));
        ScalarExpr e_over = ScalarExpr(Rat(-s.charge(a), 2)) * ScalarExpr::var(sym::e) / ma;
        pa = add(pa, scale(cross_term, e_over));
        ScalarExpr e2_over = ScalarExpr(Rat(s.charge(a) * s.charge(a), 2)) *
                             ScalarExpr::var(sym::e, 2) / ma;
        aa = add(aa, scale(dot(avec, avec, reg), e2_over));
    }
    h.groups[Group::PA] = std::move(pa);
    h.groups[Group::AA] = std::move(aa);
    return h;
}

}  // namespace mpqed
