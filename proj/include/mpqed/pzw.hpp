#pragma once

#include <map>
#include <string>
#include <vector>

#include "mpqed/expr.hpp"

namespace mpqed {

// Declared N-particle system: integer charge multiples of e, mass symbols
// (shared symbols encode equality constraints), magnetic moments present per
// particle, and the designated nucleus.
struct ParticleSystem {
    std::string name;
    int n = 0;
    std::vector<int> charges;          // units of e
    std::vector<SymbolId> masses;
    std::vector<bool> lande;
    int nucleus = 1;                   // 1-based
    int z = 0;                         // nucleus charge magnitude

    bool neutral() const;
    int charge(int a) const { return charges.at(static_cast<std::size_t>(a - 1)); }
    SymbolId mass(int a) const { return masses.at(static_cast<std::size_t>(a - 1)); }
    bool has_moment(int a) const { return lande.at(static_cast<std::size_t>(a - 1)); }
    void validate() const;             // throws ConfigError
};

enum class Group {
    Kinetic,
    CoulombNucleus,
    CoulombElectron,
    FreeField,
    Electric,      // Pi.P coupling, lambda-parameterized
    Paramagnetic,  // p.(Theta ^ B), hermitian-marked
    Spin,
    Diamagnetic,   // (int Theta ^ B)^2
    SelfEnergy,    // int P^2 / 2 eps0, opaque flagged atom
    PA,            // p.A cross terms, hermitian-marked
    AA,            // A^2 terms
};

const char* group_name(Group g);

struct Hamiltonian {
    std::map<Group, OpExpr> groups;
    RegistryPtr reg;

    const OpExpr* group(Group g) const;
    OpExpr total() const;
};

// mass helpers
ScalarExpr total_mass(const ParticleSystem& s);
// center of mass as a lab-frame combination
VecExpr center_of_mass(const ParticleSystem& s);
// r_a - R
VecExpr relative_position(const ParticleSystem& s, int a);

// Lambda-parameterized interaction data: the electric coupling and the
// per-particle magnetization integrands int Theta_a ^ B, before any scaling
// or lambda integration.
struct LambdaInteraction {
    OpExpr electric;                    // sum over particles
    std::vector<VecExpr> theta_wedge_b; // per particle, lambda-form
};
// `which_lambda` picks the integration variable (the squared coupling needs
// two independent copies)
LambdaInteraction interaction_lambda_terms(const ParticleSystem& s, const RegistryPtr& reg,
                                           SymbolId which_lambda = sym::lambda1);

OpExpr build_zero_order(const ParticleSystem& s, const RegistryPtr& reg);
Hamiltonian build_multipolar(const ParticleSystem& s, const RegistryPtr& reg);
Hamiltonian build_minimal_coupling(const ParticleSystem& s, const RegistryPtr& reg);

}  // namespace mpqed
