#pragma once

#include <string>

#include <json.hpp>

#include "convpow/carne.hpp"
#include "convpow/llt.hpp"
#include "convpow/stability.hpp"
#include "convpow/symbol.hpp"

namespace convpow {

/// Parse a function from JSON {"offset": int, "coeffs": [[re, im], ...]} or
/// from plain text lines "x re im" (any order, duplicate x is an error).
/// The format is sniffed from the first non-space character.
LatticeFunction parse_lattice_function(const std::string& text);
LatticeFunction load_lattice_function(const std::string& path);

nlohmann::json to_json(const LatticeFunction& f);
nlohmann::json to_json(const MaxPoint& p);
nlohmann::json to_json(const SymbolAnalysis& a);
nlohmann::json to_json(const StabilityVerdict& v);
nlohmann::json to_json(const CarneBoundReport& r);
nlohmann::json to_json(const DiagLowerReport& r);

std::string kind_name(PointKind k);
std::string case_name(StabilityCase c);

/// Locale-independent decimal formatting with 17 significant digits.
std::string format_double(double v);

}  // namespace convpow
