#pragma once

#include <map>

#include "mpqed/expr.hpp"

namespace mpqed {

// Rewrite table for the joint particle/photon dilation after the scaling
// constraint is solved. Grades are mu powers picked up by each atom class;
// field evaluation points are multiplied by `mu_point` (the materialized
// value of mu, e.g. Z*alpha).
struct ScalingAxioms {
    int field_e = 4;
    int field_b = 4;
    int field_pi = 4;
    int field_a = 2;
    int momentum = 1;
    int position = -1;      // per linear position occurrence
    int inverse_norm = 1;   // 1/|r/mu| = mu/|r|
    std::map<std::string, int> named = {{"Hf", 2}, {"Pself", 1}};
    ScalarExpr mu_point;

    static ScalingAxioms standard(ScalarExpr mu_point_value) {
        ScalingAxioms ax;
        ax.mu_point = std::move(mu_point_value);
        return ax;
    }
};

// Rewrites every factor of e per the axiom table: momenta pick up mu,
// position-linear vectors mu^-1, Coulomb factors mu, field atoms their
// prefactor grade with the evaluation point dilated, named atoms their
// table grade. Fails on named atoms missing from the table.
OpExpr apply_dilation(const OpExpr& e, const ScalingAxioms& ax);

// One Taylor step for a single field atom F evaluated at mu*(center + X):
// term n carries coefficient mu^n/n! and the atom at mu*center with dirs
// extended by (X, n). Signs come from the literal argument.
struct TaylorTerm {
    int order;
    ScalarExpr coeff;   // grade n, value 1/n!
    FieldPtr atom;
};
std::vector<TaylorTerm> taylor_expand(const FieldAtom& f, const VecExpr& center,
                                      const ScalarExpr& mu_point, int max_order);

// Expands every field atom in e about mu*center, dropping terms whose total
// mu-grade exceeds max_grade. Result is canonical.
OpExpr taylor_expand_fields(const OpExpr& e, const VecExpr& center, const ScalarExpr& mu_point,
                            int max_grade);

}  // namespace mpqed
