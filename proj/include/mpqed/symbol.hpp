#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mpqed/error.hpp"

namespace mpqed {

enum class SymbolKind : std::uint8_t {
    Mass,
    ChargeUnit,
    FundamentalConstant,
    Coupling,       // alpha
    Lande,
    Integration,    // lambda variables, integrated out before output
};

using SymbolId = std::uint32_t;

struct SymbolInfo {
    std::string name;
    SymbolKind kind;
    std::string dimension;  // free-form documentation tag
};

// Append-only table of commuting scalar symbols. The grading symbol mu is
// deliberately not a symbol: mu exponents are stored as a per-term integer
// grade (see ScalarExpr), so mu can never leak into rational functions.
class SymbolRegistry {
  public:
    SymbolId intern(const std::string& name, SymbolKind kind, const std::string& dimension = "") {
        for (SymbolId i = 0; i < symbols_.size(); ++i) {
            if (symbols_[i].name == name) {
                if (symbols_[i].kind != kind)
                    throw AlgebraError("symbol '" + name + "' re-registered with a different kind");
                return i;
            }
        }
        if (name == "mu")
            throw AlgebraError("'mu' is the grading symbol and cannot be registered");
        symbols_.push_back({name, kind, dimension});
        return static_cast<SymbolId>(symbols_.size() - 1);
    }

    std::optional<SymbolId> lookup(const std::string& name) const {
        for (SymbolId i = 0; i < symbols_.size(); ++i)
            if (symbols_[i].name == name) return i;
        return std::nullopt;
    }

    const SymbolInfo& info(SymbolId id) const { return symbols_.at(id); }
    const std::string& name(SymbolId id) const { return symbols_.at(id).name; }
    SymbolKind kind(SymbolId id) const { return symbols_.at(id).kind; }
    std::size_t size() const { return symbols_.size(); }

  private:
    std::vector<SymbolInfo> symbols_;
};

using RegistryPtr = std::shared_ptr<SymbolRegistry>;

// Fundamental symbols present in every session registry, at fixed ids.
namespace sym {
constexpr SymbolId e = 0;       // charge unit
constexpr SymbolId hbar = 1;
constexpr SymbolId c = 2;
constexpr SymbolId eps0 = 3;
constexpr SymbolId pi = 4;
constexpr SymbolId alpha = 5;   // fine structure constant
constexpr SymbolId lambda1 = 6; // line-integral variable
constexpr SymbolId lambda2 = 7; // second integration variable (squared couplings)
constexpr SymbolId first_free = 8;
}  // namespace sym

inline RegistryPtr make_standard_registry() {
    auto reg = std::make_shared<SymbolRegistry>();
    reg->intern("e", SymbolKind::ChargeUnit, "charge");
    reg->intern("hbar", SymbolKind::FundamentalConstant, "action");
    reg->intern("c", SymbolKind::FundamentalConstant, "velocity");
    reg->intern("eps0", SymbolKind::FundamentalConstant, "permittivity");
    reg->intern("pi", SymbolKind::FundamentalConstant, "number");
    reg->intern("alpha", SymbolKind::Coupling, "number");
    reg->intern("lam", SymbolKind::Integration, "number");
    reg->intern("lamb", SymbolKind::Integration, "number");
    return reg;
}

}  // namespace mpqed
