#include "cli/format.hpp"

#include <cstdio>
#include <sstream>

namespace nabla::cli {

std::optional<Format> format_from_name(std::string_view name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json;
  if (name == "latex") return Format::latex;
  return std::nullopt;
}

namespace {

std::string var_latex(std::string_view name, int e) {
  if (e == 0) return "";
  const std::string v = name == "xi" ? "\\xi" : std::string(name);
  return e == 1 ? v : v + "^{" + std::to_string(e) + "}";
}

std::string subscript(const Partition& la) {
  bool wide = false;
  for (int a : la.parts()) wide = wide || a >= 10;
  std::string out;
  for (std::size_t i = 0; i < la.parts().size(); ++i) {
    if (wide && i) out += ",";
    out += std::to_string(la.parts()[i]);
  }
  return out;
}

Json partition_json(const Partition& la) { return Json(la.parts()); }

Json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return Json{{"input", w->input}, {"lhs", w->lhs}, {"rhs", w->rhs}};
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f ms", ms);
  return buf;
}

std::string latex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '_': out += "\\_"; break;
      case '^': out += "\\^{}"; break;
      case '&': out += "\\&"; break;
      case '%': out += "\\%"; break;
      case '#': out += "\\#"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string poly_latex(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& term : p.terms()) {
    Integer c = term.coeff;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (neg) out += "-";
    else if (!first) out += "+";
    first = false;
    const std::string vars = var_latex("q", term.mono.q) + var_latex("t", term.mono.t) +
                             var_latex(aux_name(p.aux()), term.mono.a);
    if (vars.empty()) out += c.get_str();
    else out += (c == 1 ? "" : c.get_str()) + vars;
  }
  return out;
}

std::string rational_latex(const RationalFunction& c) {
  if (c.den().is_one()) return poly_latex(c.num());
  const bool neg = c.num().size() == 1 && c.num().leading_coeff() < 0;
  const Poly num = neg ? -c.num() : c.num();
  return std::string(neg ? "-" : "") + "\\frac{" + poly_latex(num) + "}{" + poly_latex(c.den()) + "}";
}

std::string symfunc_latex(const SymFunc& f) {
  if (f.is_zero()) return "0";
  const std::string letter = f.basis() == Basis::s ? "S" : std::string(basis_name(f.basis()));
  std::string out;
  for (const auto& [la, c] : f.terms()) {
    std::string term;
    if (la.empty()) {
      term = rational_latex(c);
    } else {
      const std::string atom = letter + "_{" + subscript(la) + "}";
      if (c.is_one()) {
        term = atom;
      } else if (c == RationalFunction(-1)) {
        term = "-" + atom;
      } else {
        std::string cs = rational_latex(c);
        const bool simple = c.den().is_one() && c.num().is_monomial();
        term = (simple ? cs : "\\left(" + cs + "\\right)") + atom;
      }
    }
    if (!out.empty() && term.front() != '-') out += "+";
    out += term;
  }
  return out;
}

std::string value_text(const Value& v) {
  if (const auto* c = std::get_if<RationalFunction>(&v)) return c->to_string();
  if (const auto* f = std::get_if<SymFunc>(&v)) return f->to_string();
  std::string s = std::get<NablaMatrix>(v).to_text();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string value_latex(const Value& v) {
  if (const auto* c = std::get_if<RationalFunction>(&v)) return rational_latex(*c);
  if (const auto* f = std::get_if<SymFunc>(&v)) return symfunc_latex(*f);
  std::string s = std::get<NablaMatrix>(v).to_latex();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

Json value_json(const Value& v) {
  if (const auto* c = std::get_if<RationalFunction>(&v)) {
    return Json{{"type", "scalar"},
                {"text", c->to_string()},
                {"numerator", c->num().to_string()},
                {"denominator", c->den().to_string()}};
  }
  if (const auto* f = std::get_if<SymFunc>(&v)) {
    Json terms = Json::array();
    for (const auto& [la, c] : f->terms())
      terms.push_back(Json{{"partition", partition_json(la)}, {"coefficient", c.to_string()}});
    return Json{{"type", "symfunc"}, {"basis", basis_name(f->basis())}, {"text", f->to_string()}, {"terms", terms}};
  }
  const NablaMatrix& m = std::get<NablaMatrix>(v);
  Json order = Json::array();
  for (const Partition& la : m.order) order.push_back(partition_json(la));
  Json entries = Json::array();
  Json values = Json::array();
  for (std::size_t i = 0; i < m.order.size(); ++i) {
    Json row = Json::array();
    Json vrow = Json::array();
    for (std::size_t j = 0; j < m.order.size(); ++j) {
      row.push_back(m.entries[i][j].to_string());
      vrow.push_back(m.values[i][j].to_string());
    }
    entries.push_back(row);
    values.push_back(vrow);
  }
  return Json{{"type", "matrix"}, {"n", m.n}, {"order", order}, {"entries", entries}, {"values", values}};
}

Json report_json(const VerdictReport& r) {
  Json variants = Json::array();
  for (const Variant& v : r.variants)
    variants.push_back(Json{{"name", v.name}, {"holds", v.holds}, {"witness", witness_json(v.witness)}});
  return Json{{"id", r.id},
              {"title", r.title},
              {"range", r.range},
              {"status", status_name(r.status)},
              {"ms", r.ms},
              {"witness", witness_json(r.witness)},
              {"notes", r.notes},
              {"variants", variants}};
}

std::string report_text(const VerdictReport& r) {
  std::ostringstream os;
  os << r.id << "  " << status_name(r.status) << "  " << r.range << "  " << format_ms(r.ms) << "  " << r.title
     << "\n";
  if (r.witness) {
    os << "    input: " << r.witness->input << "\n";
    os << "    lhs:   " << r.witness->lhs << "\n";
    os << "    rhs:   " << r.witness->rhs << "\n";
  }
  for (const std::string& note : r.notes) os << "    note: " << note << "\n";
  for (const Variant& v : r.variants) {
    os << "    variant " << (v.holds ? "holds" : "fails") << ": " << v.name << "\n";
    if (v.witness) os << "      at " << v.witness->input << ": " << v.witness->lhs << " vs " << v.witness->rhs << "\n";
  }
  return os.str();
}

std::string reports_latex(const std::vector<VerdictReport>& reports) {
  std::ostringstream os;
  os << "\\begin{tabular}{llll}\n";
  os << "id & status & range & title \\\\\n\\hline\n";
  for (const VerdictReport& r : reports)
    os << latex_escape(r.id) << " & " << status_name(r.status) << " & $" << r.range << "$ & "
       << latex_escape(r.title) << " \\\\\n";
  os << "\\end{tabular}\n";
  return os.str();
}

}  // namespace nabla::cli
