#pragma once

#include "mpqed/scaling.hpp"

namespace mpqed {

enum class Family { E, S, M, MM, A, AA };

const char* family_name(Family f);
// grade at which T_X^n enters the hierarchy: n + offset
int family_offset(Family f);
// sign carried by the family inside the scaled interaction Hamiltonian
int family_sign(Family f);

// Graded coupling family: entry n holds T_X^n with the mu-grade stripped
// (field evaluation points keep their explicit Z*alpha dependence).
struct GradedFamily {
    Family tag = Family::E;
    std::map<int, OpExpr> entries;

    const OpExpr* entry(int n) const {
        auto it = entries.find(n);
        return it == entries.end() ? nullptr : &it->second;
    }
};

// Exact integration of the line-integral variables over [0,1], termwise by
// the power rule.
ScalarExpr lambda_integrate(const ScalarExpr& p);
OpExpr lambda_integrate(const OpExpr& e);

GradedFamily electric_family(const ParticleSystem& s, const RegistryPtr& reg, int nmax);
GradedFamily spin_family(const ParticleSystem& s, const RegistryPtr& reg, int nmax);
GradedFamily magnetic_family(const ParticleSystem& s, const RegistryPtr& reg, int nmax);
GradedFamily diamagnetic_family(const ParticleSystem& s, const RegistryPtr& reg, int nmax);
GradedFamily pa_family(const ParticleSystem& s, const RegistryPtr& reg, int nmax);
GradedFamily aa_family(const ParticleSystem& s, const RegistryPtr& reg, int nmax);

enum class Scheme { Multipolar, Minimal };

// Graded interaction hierarchy: block n collects the grade-n terms of the
// scaled interaction Hamiltonian (signs as they appear there). Blocks are in
// the lab frame; callers transform to Jacobi coordinates for display.
struct Hierarchy {
    Scheme scheme = Scheme::Multipolar;
    int order = 1;
    bool include_self_energy = false;
    ScaledHamiltonian scaled;
    std::map<int, OpExpr> blocks;

    OpExpr block(int n) const;
};

Hierarchy assemble_hierarchy(const ParticleSystem& s, const RegistryPtr& reg, Scheme scheme,
                             int order, bool include_self_energy = false);

}  // namespace mpqed
