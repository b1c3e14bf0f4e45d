#pragma once

#include <string>
#include <vector>

#include "mpqed/pzw.hpp"

namespace mpqed {

// Monomial constraints among mu, eta and the coupling Z*alpha, e.g.
// mu^2 = (Z alpha) mu = eta. Solved for integer exponent assignments
// mu = (Z alpha)^p, eta = (Z alpha)^q.
struct ScalingConstraint {
    struct Mono {
        int mu = 0;
        int eta = 0;
        int zalpha = 0;
    };
    std::vector<std::pair<Mono, Mono>> equations;

    static ScalingConstraint standard() {
        // mu^2 = (Z alpha) mu ; (Z alpha) mu = eta
        ScalingConstraint c;
        c.equations.push_back({{2, 0, 0}, {1, 0, 1}});
        c.equations.push_back({{1, 0, 1}, {0, 1, 0}});
        return c;
    }
};

struct ScalingSolution {
    int mu_power = 0;   // mu = (Z alpha)^mu_power
    int eta_power = 0;  // eta = (Z alpha)^eta_power
};

// Exact integer linear solve; throws ConfigError with a rank report when the
// system is inconsistent or underdetermined.
ScalingSolution solve_scaling(const ScalingConstraint& c);

struct ScaledHamiltonian {
    std::map<Group, OpExpr> groups;    // grades relative to the factored-out mu^2
    RegistryPtr reg;
    ScalingSolution solution;
    std::vector<std::string> excluded; // dropped-term ledger

    const OpExpr* group(Group g) const;
    OpExpr total() const;
    // kinetic + all Coulomb + free field (the grade-0 part)
    OpExpr zero_order() const;
};

// Applies the dilation with mu materialized as Z*alpha, expresses pure
// Coulomb coefficients through the coupling (which places the three
// zero-order groups at grade 0; asserted), divides out the global mu^2 and
// drops the excluded terms.
ScaledHamiltonian scale_hamiltonian(const Hamiltonian& h, const ParticleSystem& s,
                                    bool include_self_energy = false);

}  // namespace mpqed
