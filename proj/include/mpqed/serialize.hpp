#pragma once

#include <string>

#include "mpqed/expr.hpp"

namespace mpqed {

// Canonical structured-text rendering. Equal canonical expressions always
// produce byte-identical text; parse() inverts serialize() exactly.
std::string serialize(const ScalarExpr& s, const SymbolRegistry& reg);
std::string serialize(const VecExpr& v, const SymbolRegistry& reg);
std::string serialize(const OpExpr& e);  // uses e.reg; multi-line, one term per line

// single-term rendering used by reports
std::string serialize_term(const OpTerm& t, const SymbolRegistry& reg);

}  // namespace mpqed
