#pragma once

#include <map>
#include <optional>
#include <string>

#include "mpqed/expr.hpp"

namespace mpqed {

// Context for the canonical expression grammar: the session registry, named
// derived scalars (cluster and effective masses), and the dominant mass
// symbol fixing the sign of symbolic square roots.
struct ParserContext {
    RegistryPtr reg;
    std::map<std::string, ScalarExpr> defs;
    std::optional<SymbolId> dominant;
};

ScalarExpr parse_scalar(const std::string& text, const ParserContext& ctx, int first_line = 1);
VecExpr parse_vec(const std::string& text, const ParserContext& ctx, int first_line = 1);
// returns the canonical form of the parsed expression
OpExpr parse_op(const std::string& text, const ParserContext& ctx, int first_line = 1);

}  // namespace mpqed
