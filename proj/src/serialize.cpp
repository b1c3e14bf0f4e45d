#include "mpqed/serialize.hpp"

#include <sstream>

#include "mpqed/error.hpp"

namespace mpqed {

namespace {

std::string int_text(const Int& v) { return v.str(); }

std::string rat_text(const Rat& v) {
    if (rat_den(v) == 1) return int_text(rat_num(v));
    return int_text(rat_num(v)) + "/" + int_text(rat_den(v));
}

std::string monomial_text(const Monomial& m, const SymbolRegistry& reg) {
    std::string out;
    for (auto& [id, e] : m.powers) {
        if (!out.empty()) out += "*";
        out += reg.name(id);
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::string poly_text(const Poly& p, const SymbolRegistry& reg) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [m, c] : p.terms()) {
        Int a = c;
        if (first) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        if (m.is_one()) {
            out += int_text(a);
        } else {
            if (a != 1) out += int_text(a) + "*";
            out += monomial_text(m, reg);
        }
        first = false;
    }
    return out;
}

// positive-magnitude rendering of a rational function; caller handles sign
std::string ratfunc_text(const RatFunc& f, const SymbolRegistry& reg) {
    Rat c = f.content();
    if (c < 0) c = -c;
    std::vector<std::string> parts;
    if (c != 1 || (f.num().is_one() && f.den().empty())) parts.push_back(rat_text(c));
    if (!f.num().is_one()) {
        if (f.num().is_monomial() && f.num().leading_coeff() == 1)
            parts.push_back(monomial_text(f.num().leading_monomial(), reg));
        else
            parts.push_back("(" + poly_text(f.num(), reg) + ")");
    }
    std::string out;
    for (auto& p : parts) {
        if (!out.empty()) out += " * ";
        out += p;
    }
    for (auto& [d, mult] : f.den()) {
        out += " / (" + poly_text(d, reg) + ")";
        if (mult != 1) out += "^" + std::to_string(mult);
    }
    return out;
}

// one graded part with sign split off
struct SignedText {
    bool negative;
    std::string text;
};

SignedText graded_part_text(int grade, const RatFunc& f, const SymbolRegistry& reg, bool with_one) {
    SignedText st;
    st.negative = f.content() < 0;
    std::string s;
    if (grade != 0) s += "mu^" + std::to_string(grade);
    std::string body = ratfunc_text(f, reg);
    bool body_is_one = body == "1";
    if (!body_is_one || (s.empty() && with_one)) {
        if (!s.empty()) s += " * ";
        s += body;
    }
    st.text = s;
    return st;
}

std::string vecterm_text(const VecTerm& t, const SymbolRegistry& reg);

std::string vecexpr_text(const VecExpr& v, const SymbolRegistry& reg) {
    if (v.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [c, t] : v.terms) {
        if (!c.single_grade()) throw AlgebraError("vector coefficient spans several grades");
        bool neg = false;
        std::string coeff;
        if (!c.is_zero()) {
            auto& [g, f] = *c.parts().begin();
            auto st = graded_part_text(g, f, reg, false);
            neg = st.negative;
            coeff = st.text;
        }
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (!coeff.empty()) out += coeff + " * ";
        out += vecterm_text(t, reg);
        first = false;
    }
    return out;
}

std::string field_text(const FieldAtom& f, const SymbolRegistry& reg) {
    static const char* names[] = {"E", "B", "A", "Pi"};
    std::string out = names[static_cast<int>(f.kind)];
    out += "(" + vecexpr_text(f.point, reg);
    if (!f.dirs.empty()) {
        out += "; ";
        bool first = true;
        for (auto& d : f.dirs) {
            if (!first) out += ", ";
            out += vecexpr_text(d.dir, reg);
            if (d.mult != 1) out += "^" + std::to_string(d.mult);
            first = false;
        }
    }
    out += ")";
    return out;
}

std::string atom_text(const VecAtom& a, const SymbolRegistry& reg) {
    switch (a.kind) {
        case VecKind::Position:
            return (a.frame == Frame::Lab ? "r" : "R") + std::to_string(a.index);
        case VecKind::Momentum:
            return (a.frame == Frame::Lab ? "p" : "P") + std::to_string(a.index);
        case VecKind::Spin:
            return "S" + std::to_string(a.index);
        case VecKind::MagneticMoment:
            return "Mag" + std::to_string(a.index);
        case VecKind::Field:
            return field_text(*a.field, reg);
    }
    return "?";
}

std::string vecterm_text(const VecTerm& t, const SymbolRegistry& reg) {
    if (!t.is_cross()) return atom_text(t.atom, reg);
    return "cross(" + vecterm_text(*t.left, reg) + ", " + vecterm_text(*t.right, reg) + ")";
}

std::string factor_text(const OpFactor& f, const SymbolRegistry& reg) {
    switch (f.kind) {
        case FactorKind::Dot:
            return "dot(" + vecterm_text(f.a, reg) + ", " + vecterm_text(f.b, reg) + ")";
        case FactorKind::InverseNorm:
            return "invnorm(" + vecexpr_text(f.arg, reg) + ")";
        case FactorKind::Named:
            return f.name;
    }
    return "?";
}

// one (grade, ratfunc) slice of a term
std::string term_slice_text(const OpTerm& t, int grade, const RatFunc& f, const SymbolRegistry& reg,
                            bool& negative) {
    auto st = graded_part_text(grade, f, reg, t.factors.empty());
    negative = st.negative;
    std::string out = st.text;
    if (!t.factors.empty()) {
        std::string fs;
        for (auto& factor : t.factors) {
            if (!fs.empty()) fs += " * ";
            fs += factor_text(factor, reg);
        }
        if (t.hermitian) fs = "hc(" + fs + ")";
        if (!out.empty()) out += " * ";
        out += fs;
    }
    return out;
}

}  // namespace

std::string serialize(const ScalarExpr& s, const SymbolRegistry& reg) {
    if (s.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [g, f] : s.parts()) {
        auto st = graded_part_text(g, f, reg, true);
        if (first) {
            if (st.negative) out += "-";
        } else {
            out += st.negative ? " - " : " + ";
        }
        out += st.text;
        first = false;
    }
    return out;
}

std::string serialize(const VecExpr& v, const SymbolRegistry& reg) { return vecexpr_text(v, reg); }

std::string serialize_term(const OpTerm& t, const SymbolRegistry& reg) {
    if (t.coeff.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [g, f] : t.coeff.parts()) {
        bool neg = false;
        std::string s = term_slice_text(t, g, f, reg, neg);
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        out += s;
        first = false;
    }
    return out;
}

std::string serialize(const OpExpr& e) {
    if (!e.reg) throw AlgebraError("expression has no registry; cannot serialize");
    const SymbolRegistry& reg = *e.reg;
    if (e.terms.empty()) return "0\n";
    std::string out;
    for (auto& t : e.terms) {
        for (auto& [g, f] : t.coeff.parts()) {
            bool neg = false;
            std::string s = term_slice_text(t, g, f, reg, neg);
            out += neg ? "  - " : "  + ";
            out += s;
            out += "\n";
        }
    }
    return out;
}

}  // namespace mpqed
