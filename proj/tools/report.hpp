#pragma once

#include <string>

#include "json.hpp"
#include "kovan/analysis.hpp"

namespace kovan::report {

inline constexpr int kSchemaVersion = 1;

/// Rationals are written as "num/den" strings, always with a denominator.
std::string rational_string(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

/// {"text", "variables", "monomials": {"e1,e2,...": "num/den"}} over the
/// variables that actually occur.
nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AnalysisReport& rep);

/// Two-space indented JSON with a trailing newline.
std::string json_text(const AnalysisReport& rep);

/// Plain-text summary for the terminal.
std::string text_summary(const AnalysisReport& rep);

}  // namespace kovan::report
