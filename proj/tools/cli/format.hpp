#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cli/eval.hpp"
#include "json.hpp"

namespace nabla::cli {

using Json = nlohmann::ordered_json;

enum class Format { text, json, latex };
std::optional<Format> format_from_name(std::string_view name);

std::string poly_latex(const Poly& p);
std::string rational_latex(const RationalFunction& c);
/// Schur atoms print as S_{..}, other bases with their own letter.
std::string symfunc_latex(const SymFunc& f);

std::string value_text(const Value& v);
std::string value_latex(const Value& v);
Json value_json(const Value& v);

Json report_json(const VerdictReport& r);
/// One summary line, then indented witness and variant lines.
std::string report_text(const VerdictReport& r);
/// A tabular with one row per report.
std::string reports_latex(const std::vector<VerdictReport>& reports);

}  // namespace nabla::cli
