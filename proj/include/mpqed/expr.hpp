#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mpqed/scalar.hpp"

namespace mpqed {

enum class Frame : std::uint8_t { Lab, Jacobi };
enum class VecKind : std::uint8_t { Position, Momentum, Spin, MagneticMoment, Field };
enum class FieldKind : std::uint8_t { E, B, A, Pi };

struct FieldAtom;
using FieldPtr = std::shared_ptr<const FieldAtom>;

// Vector-valued atom: particle position/momentum (lab or Jacobi frame),
// spin, magnetic moment, or a field operator atom.
struct VecAtom {
    VecKind kind = VecKind::Position;
    int index = 0;
    Frame frame = Frame::Lab;
    FieldPtr field;

    static VecAtom position(int i, Frame f) { return {VecKind::Position, i, f, nullptr}; }
    static VecAtom momentum(int i, Frame f) { return {VecKind::Momentum, i, f, nullptr}; }
    static VecAtom spin(int i) { return {VecKind::Spin, i, Frame::Lab, nullptr}; }
    static VecAtom moment(int i) { return {VecKind::MagneticMoment, i, Frame::Lab, nullptr}; }
    static VecAtom of_field(FieldPtr f) { return {VecKind::Field, 0, Frame::Lab, std::move(f)}; }
};

// Binary cross-product tree over atoms. Cross is non-associative and
// canonically antisymmetric: arguments are ordered, swaps track a -1 sign.
struct VecTerm {
    VecAtom atom;  // leaf payload when both children are null
    std::shared_ptr<const VecTerm> left, right;

    VecTerm() = default;
    explicit VecTerm(VecAtom a) : atom(std::move(a)) {}
    VecTerm(const VecTerm& a, const VecTerm& b)
        : left(std::make_shared<VecTerm>(a)), right(std::make_shared<VecTerm>(b)) {}
    bool is_cross() const { return left != nullptr; }
};

// Linear combination of VecTerms with scalar coefficients.
struct VecExpr {
    std::vector<std::pair<ScalarExpr, VecTerm>> terms;

    VecExpr() = default;
    explicit VecExpr(VecTerm t) { terms.push_back({ScalarExpr(1), std::move(t)}); }
    explicit VecExpr(VecAtom a) : VecExpr(VecTerm(std::move(a))) {}
    bool is_zero() const { return terms.empty(); }

    VecExpr operator+(const VecExpr& o) const;
    VecExpr operator-(const VecExpr& o) const;
    VecExpr operator-() const;
    VecExpr scaled(const ScalarExpr& s) const;
};

// Field operator atom: kind, evaluation point, and applied directional
// derivatives (X.grad)^n. The 1/n! weights live in the owning term
// coefficient. Pi atoms normalize to E with a factor -eps0.
struct FieldAtom {
    FieldKind kind = FieldKind::E;
    VecExpr point;
    struct Dir {
        VecExpr dir;
        int mult = 1;
    };
    std::vector<Dir> dirs;

    int dirs_order() const {
        int n = 0;
        for (auto& d : dirs) n += d.mult;
        return n;
    }
};

inline VecExpr make_field(FieldKind kind, VecExpr point, std::vector<FieldAtom::Dir> dirs = {}) {
    auto f = std::make_shared<FieldAtom>();
    f->kind = kind;
    f->point = std::move(point);
    f->dirs = std::move(dirs);
    return VecExpr(VecAtom::of_field(std::move(f)));
}

enum class FactorKind : std::uint8_t { Dot, InverseNorm, Named };

// Scalar-valued operator factor: a dot contraction, an inverse-norm Coulomb
// factor 1/|v|, or a named opaque atom (Hf, Pself).
struct OpFactor {
    FactorKind kind = FactorKind::Named;
    VecTerm a, b;      // Dot
    VecExpr arg;       // InverseNorm
    std::string name;  // Named

    static OpFactor dot(VecTerm x, VecTerm y) {
        OpFactor f;
        f.kind = FactorKind::Dot;
        f.a = std::move(x);
        f.b = std::move(y);
        return f;
    }
    static OpFactor inverse_norm(VecExpr v) {
        OpFactor f;
        f.kind = FactorKind::InverseNorm;
        f.arg = std::move(v);
        return f;
    }
    static OpFactor named(std::string n) {
        OpFactor f;
        f.kind = FactorKind::Named;
        f.name = std::move(n);
        return f;
    }
};

// Ordered product of factors with a scalar coefficient. A hermitian-marked
// term stands for "term plus its formal adjoint" and is never expanded.
struct OpTerm {
    ScalarExpr coeff;
    std::vector<OpFactor> factors;
    bool hermitian = false;
};

// Sum of OpTerms. Canonical form: fully expanded, factors in trace normal
// order, terms merged by (factors, marker) and sorted.
struct OpExpr {
    std::vector<OpTerm> terms;
    RegistryPtr reg;

    bool is_zero() const { return terms.empty(); }
};

// ---- total orders (deterministic, documented canonicalization keys) ----
int cmp_atom(const VecAtom& a, const VecAtom& b);
int cmp_vecterm(const VecTerm& a, const VecTerm& b);
int cmp_vecexpr(const VecExpr& a, const VecExpr& b);
int cmp_field(const FieldAtom& a, const FieldAtom& b);
int cmp_factor(const OpFactor& a, const OpFactor& b);
int cmp_factors(const std::vector<OpFactor>& a, const std::vector<OpFactor>& b);
int cmp_term_key(const OpTerm& a, const OpTerm& b);  // factors + marker, not coefficient

// ---- construction helpers (expansion happens at canonicalization) ----
VecExpr cross(const VecExpr& a, const VecExpr& b);
OpExpr dot(const VecExpr& a, const VecExpr& b, RegistryPtr reg = nullptr);
OpExpr op_term(ScalarExpr coeff, std::vector<OpFactor> factors, bool hermitian = false,
               RegistryPtr reg = nullptr);
OpExpr op_scalar(ScalarExpr coeff, RegistryPtr reg = nullptr);
OpExpr op_unit(RegistryPtr reg = nullptr);

// ---- kernel operations ----
OpExpr add(const OpExpr& a, const OpExpr& b);
OpExpr sub(const OpExpr& a, const OpExpr& b);
OpExpr multiply(const OpExpr& a, const OpExpr& b);
OpExpr scale(const OpExpr& a, const ScalarExpr& s);
OpExpr negate(const OpExpr& a);

// Conservative commutation predicate: true only for provably commuting
// factor pairs (see atom rules in the implementation).
bool commutes(const OpFactor& x, const OpFactor& y);
bool vec_commutes(const VecTerm& x, const VecTerm& y);

VecExpr canonicalize(const VecExpr& v);
OpExpr canonicalize(const OpExpr& e);
bool equals(const OpExpr& a, const OpExpr& b);

// Linear substitution of particle atoms by vector combinations; applied
// inside cross trees, dot arguments, inverse norms, field points and
// directional derivatives. Field atoms cannot be mapped.
struct Substitution {
    std::vector<std::pair<VecAtom, VecExpr>> map;
    const VecExpr* find(const VecAtom& a) const;
};
OpExpr substitute(const OpExpr& e, const Substitution& s);
VecExpr substitute(const VecExpr& v, const Substitution& s);

// atoms mentioned anywhere in a factor/term (recursing into field points)
void collect_atoms(const VecTerm& t, std::vector<VecAtom>& out);
void collect_atoms(const OpFactor& f, std::vector<VecAtom>& out);
bool mentions_frame(const OpExpr& e, Frame f);

// split a (canonical) expression into its single-grade slices
std::map<int, OpExpr> split_by_grade(const OpExpr& e);
// shift every term's grade
OpExpr grade_shifted(const OpExpr& e, int delta);

}  // namespace mpqed
