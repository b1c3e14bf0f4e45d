#include "mpqed/scaling.hpp"

#include <array>
#include "mpqed/error.hpp"
#include "mpqed/fields.hpp"

namespace mpqed {

ScalingSolution solve_scaling(const ScalingConstraint& c) {
    // unknowns x = mu exponent, y = eta exponent; rows a x + b y = rhs
    std::vector<std::array<Rat, 3>> rows;
    for (auto& [l, r] : c.equations) {
        Rat a = l.mu - r.mu;
        Rat b = l.eta - r.eta;
        Rat rhs = r.zalpha - l.zalpha;
        if (a == 0 && b == 0 && rhs != 0)
            throw ConfigError("scaling constraints are inconsistent (0 = nonzero exponent)");
        if (a != 0 || b != 0) rows.push_back({a, b, rhs});
    }
    // Gaussian elimination on the 2-unknown system
    int rank = 0;
    for (int col = 0; col < 2 && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int i = rank; i < static_cast<int>(rows.size()); ++i)
            if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        auto& pr = rows[static_cast<std::size_t>(rank)];
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == rank) continue;
            auto& ri = rows[static_cast<std::size_t>(i)];
            if (ri[static_cast<std::size_t>(col)] == 0) continue;
            Rat f = ri[static_cast<std::size_t>(col)] / pr[static_cast<std::size_t>(col)];
            for (int j = 0; j < 3; ++j)
                ri[static_cast<std::size_t>(j)] -= f * pr[static_cast<std::size_t>(j)];
        }
        ++rank;
    }
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
        if (rows[static_cast<std::size_t>(i)][2] != 0)
            throw ConfigError("scaling constraints are inconsistent (rank " + std::to_string(rank) +
                              ", contradictory row)");
    if (rank < 2)
        throw ConfigError("scaling constraints are underdetermined (rank " + std::to_string(rank) +
                          " of 2 unknowns)");
    // back-substitute (rows are reduced)
    Rat x, y;
    for (int i = 0; i < rank; ++i) {
        auto& r = rows[static_cast<std::size_t>(i)];
        if (r[0] != 0 && r[1] == 0)
            x = r[2] / r[0];
        else if (r[0] == 0 && r[1] != 0)
            y = r[2] / r[1];
        else if (r[0] != 0 && r[1] != 0)
            throw ConfigError("scaling constraints did not reduce to diagonal form");
    }
    if (rat_den(x) != 1 || rat_den(y) != 1)
        throw ConfigError("scaling exponents are not integers");
    ScalingSolution sol;
    sol.mu_power = static_cast<int>(rat_num(x).convert_to<long>());
    sol.eta_power = static_cast<int>(rat_num(y).convert_to<long>());
    return sol;
}

const OpExpr* ScaledHamiltonian::group(Group g) const {
    auto it = groups.find(g);
    return it == groups.end() ? nullptr : &it->second;
}

OpExpr ScaledHamiltonian::total() const {
    OpExpr out;
    out.reg = reg;
    for (auto& [g, e] : groups) out = add(out, e);
    return out;
}

OpExpr ScaledHamiltonian::zero_order() const {
    OpExpr out;
    out.reg = reg;
    for (Group g : {Group::Kinetic, Group::CoulombNucleus, Group::CoulombElectron, Group::FreeField})
        if (const OpExpr* e = group(g)) out = add(out, *e);
    return out;
}

namespace {

// rewrite pure Coulomb coefficients: e^2 -> 4 pi eps0 hbar c (Z alpha)/Z, and
// the solved mu = Z alpha turns the alpha into one grade unit
OpExpr coulomb_alpha_rewrite(const OpExpr& e, int z) {
    if (z == 0) {
        if (!e.is_zero()) throw AlgebraError("Coulomb terms with Z = 0");
        return e;
    }
    ScalarExpr factor = ScalarExpr(Rat(4, z)) * ScalarExpr::var(sym::pi) * ScalarExpr::var(sym::eps0) *
                        ScalarExpr::var(sym::hbar) * ScalarExpr::var(sym::c) /
                        ScalarExpr::var(sym::e, 2);
    OpExpr out = scale(e, factor.shifted(1));
    for (auto& t : out.terms)
        for (auto& [g, f] : t.coeff.parts())
            if (f.mentions(sym::e) || f.mentions(sym::alpha))
                throw AlgebraError("Coulomb coefficient did not reduce to hbar c over Z");
    return out;
}

}  // namespace

ScaledHamiltonian scale_hamiltonian(const Hamiltonian& h, const ParticleSystem& s,
                                    bool include_self_energy) {
    ScalingSolution sol = solve_scaling(ScalingConstraint::standard());
    ScaledHamiltonian out;
    out.reg = h.reg;
    out.solution = sol;

    ScalarExpr mu_point = ScalarExpr(Rat(s.z)) * ScalarExpr::var(sym::alpha);
    ScalingAxioms ax = ScalingAxioms::standard(mu_point);

    for (auto& [g, expr] : h.groups) {
        if (g == Group::SelfEnergy && !include_self_energy) {
            out.excluded.push_back(
                "electrostatic self-energy (Pself): flagged atom, excluded from the hierarchy by default");
            continue;
        }
        OpExpr scaled = apply_dilation(expr, ax);
        if (g == Group::CoulombNucleus || g == Group::CoulombElectron)
            scaled = coulomb_alpha_rewrite(scaled, s.z);
        out.groups[g] = canonicalize(grade_shifted(scaled, -2));
    }
    out.excluded.push_back("vacuum polarization constant: scales as mu^-2, dropped");

    // the defining constraint: the zero-order groups all sit at grade 0
    for (Group g : {Group::Kinetic, Group::CoulombNucleus, Group::CoulombElectron, Group::FreeField}) {
        const OpExpr* e = out.group(g);
        if (!e) continue;
        for (auto& t : e->terms)
            for (auto& [grade, f] : t.coeff.parts())
                if (grade != 0)
                    throw AlgebraError(std::string("zero-order group '") + group_name(g) +
                                       "' not at grade 0 after scaling");
    }
    return out;
}

}  // namespace mpqed
