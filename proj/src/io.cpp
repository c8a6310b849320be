#include "kzmc/io.hpp"

#include <sstream>

namespace kzmc {

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void schema_error(const std::string& message, std::string_view text, const std::string& key) {
  std::size_t offset = 0;
  if (!key.empty()) {
    const auto at = text.find("\"" + key + "\"");
    if (at != std::string_view::npos) offset = at;
  }
  const auto [line, column] = line_column(text, offset);
  throw parse_error(message, line, column);
}

std::string tex_rational(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  const std::string sign = num < 0 ? "-" : "";
  return sign + "\\frac{" + BigInt(abs(num)).str() + "}{" + den.str() + "}";
}

std::string tex_tuple(const std::vector<Rational>& values) {
  std::string out = "[";
  for (std::size_t k = 0; k < values.size(); ++k) out += (k ? ":" : "") + tex_rational(values[k]);
  return out + "]";
}

std::string tex_set(LabelSet set) {
  std::string out;
  for (unsigned v : set.elements()) out += std::to_string(v);
  return out;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = line_column(text, offset);
    std::string what = e.what();
    const auto colon = what.find("syntax error");
    throw parse_error("invalid JSON: " + (colon == std::string::npos ? what : what.substr(colon)), line, column);
  }
}

Json to_json(const Rational& value) { return to_string(value); }

Json to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RationalMatrix matrix_from_json(const Json& j, Index rows, Index cols, const std::string& where) {
  auto fail = [&](const std::string& why) { throw parse_error(where + ": " + why, 1, 1); };
  if (!j.is_array() || static_cast<Index>(j.size()) != rows) fail("expected " + std::to_string(rows) + " rows");
  RationalMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      fail("row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number_integer()) {
        m(r, c) = Rational(e.dump());
      } else if (e.is_string()) {
        try {
          m(r, c) = parse_rational(e.get<std::string>());
        } catch (const parse_error& pe) {
          fail("entry (" + std::to_string(r) + "," + std::to_string(c) + ") " + pe.what());
        }
      } else {
        fail("entry (" + std::to_string(r) + "," + std::to_string(c) + ") must be a rational string");
      }
    }
  }
  return m;
}

Json to_json(const KzSystem& system) {
  Json out;
  out["n"] = system.n();
  out["rank"] = system.rank();
  Json residues = Json::object();
  for (unsigned i = 0; i < system.n(); ++i)
    for (unsigned j = i + 1; j < system.n(); ++j)
      if (!is_zero(system.residue(i, j)))
        residues[std::to_string(i) + "," + std::to_string(j)] = to_json(system.residue(i, j));
  out["residues"] = std::move(residues);
  return out;
}

KzSystem system_from_json(const Json& input, std::string_view text, Validation validation) {
  const Json* j = &input;
  if (j->is_object() && j->contains("system")) j = &(*j)["system"];
  if (!j->is_object()) schema_error("system: expected a JSON object", text, "");
  for (const char* key : {"n", "rank", "residues"})
    if (!j->contains(key)) schema_error(std::string("system: missing \"") + key + "\"", text, "");
  const Json& jn = (*j)["n"];
  const Json& jrank = (*j)["rank"];
  if (!jn.is_number_unsigned() || jn.get<unsigned>() < 2 || jn.get<unsigned>() > max_labels)
    schema_error("system: \"n\" must be an integer in 2..64", text, "n");
  if (!jrank.is_number_unsigned() || jrank.get<unsigned>() < 1)
    schema_error("system: \"rank\" must be a positive integer", text, "rank");
  const unsigned n = jn.get<unsigned>();
  const Index rank = jrank.get<Index>();
  const Json& jres = (*j)["residues"];
  if (!jres.is_object()) schema_error("system: \"residues\" must be an object", text, "residues");

  ResidueMap residues;
  for (const auto& [key, value] : jres.items()) {
    unsigned a = 0;
    unsigned b = 0;
    char comma = 0;
    std::istringstream s(key);
    if (!(s >> a >> comma >> b) || comma != ',' || !s.eof() || a >= b || b >= n)
      schema_error("system: residue key \"" + key + "\" must be \"i,j\" with 0 <= i < j < n", text, key);
    if (residues.count({a, b})) schema_error("system: duplicate residue key \"" + key + "\"", text, key);
    try {
      residues[{a, b}] = matrix_from_json(value, rank, rank, "residue " + key);
    } catch (const parse_error& e) {
      std::string message = e.what();
      message.erase(message.rfind(" (line "));
      schema_error(message, text, key);
    }
  }
  return KzSystem(n, rank, residues, validation);
}

KzSystem parse_system(std::string_view text, Validation validation) {
  return system_from_json(parse_json(text), text, validation);
}

Json to_json(const RationalSpectrum& spectrum) {
  Json out = Json::array();
  for (const auto& e : spectrum.entries()) {
    Json values = Json::array();
    for (const auto& v : e.values) values.push_back(to_string(v));
    out.push_back(Json{{"values", std::move(values)}, {"mult", e.multiplicity}});
  }
  return out;
}

Json to_json(const SpectraReport& report) {
  Json out = Json::array();
  for (const auto& entry : report.entries) {
    Json members = Json::array();
    for (LabelSet m : entry.members) members.push_back(to_string(m));
    out.push_back(Json{{"family", serialize(entry.family)},
                       {"members", std::move(members)},
                       {"spectrum", to_json(entry.spectrum)}});
  }
  return out;
}

Json to_json(const std::vector<FamilyVerification>& report) {
  Json out = Json::array();
  for (const auto& row : report)
    out.push_back(Json{{"family", serialize(row.family)},
                       {"status", row.ok ? "ok" : "violation"},
                       {"details", row.details}});
  return out;
}

std::string residue_name(LabelSet set) {
  std::string out = "A_{";
  bool first = true;
  for (unsigned v : set.elements()) {
    out += (first ? "" : ",") + std::to_string(v);
    first = false;
  }
  return out + "}";
}

Json to_json(const BlowupChart& chart, const KzSystem* system) {
  Json out;
  out["family"] = serialize(chart.losers.family());
  out["orientation"] = chart.orientation == Orientation::loser_first ? "loser-first" : "descending";
  Json variables = Json::object();
  for (std::size_t v = 0; v < chart.variables.size(); ++v)
    variables["X" + std::to_string(v + 1)] = to_string(chart.variables[v]);
  out["variables"] = std::move(variables);
  Json pairs = Json::array();
  for (const auto& p : chart.pairs)
    pairs.push_back(Json{{"i", p.i}, {"j", p.j}, {"monomial", p.monomial}, {"poly", to_string(p.poly)}});
  out["pairs"] = std::move(pairs);
  Json residues = Json::object();
  for (std::size_t v = 0; v < chart.variables.size(); ++v)
    residues["X" + std::to_string(v + 1)] = residue_name(chart.variables[v]);
  out["residues"] = std::move(residues);
  if (system) {
    Json matrices = Json::object();
    for (const auto& r : local_residues(*system, chart))
      matrices["X" + std::to_string(r.variable)] = to_json(r.residue);
    out["residue_matrices"] = std::move(matrices);
  }
  return out;
}

Json to_json(const std::vector<IntegrabilityViolation>& violations) {
  Json out = Json::array();
  for (const auto& v : violations) out.push_back(Json{{"relation", v.relation}, {"labels", v.labels}});
  return out;
}

std::string spectra_text(const SpectraReport& report) {
  std::string out;
  for (const auto& entry : report.entries) {
    std::string members;
    for (LabelSet m : entry.members) members += (members.empty() ? "" : ":") + to_string(m);
    out += serialize(entry.family) + "  [" + members + "]  " + to_string(entry.spectrum) + "\n";
  }
  return out;
}

std::string spectra_tex(const SpectraReport& report) {
  std::ostringstream s;
  s << "\\begin{tabular}{ll}\n\\hline\nfamily & spectrum\\\\\n\\hline\n";
  for (const auto& entry : report.entries) {
    std::string members;
    for (LabelSet m : entry.members) members += (members.empty() ? "" : ":") + std::string("A_{") + tex_set(m) + "}";
    s << "$[" << members << "]$ & $\\{";
    bool first = true;
    for (const auto& e : entry.spectrum.entries()) {
      s << (first ? "" : ",") << tex_tuple(e.values) << "_{" << e.multiplicity << "}";
      first = false;
    }
    s << "\\}$\\\\\n";
  }
  s << "\\hline\n\\end{tabular}\n";
  return s.str();
}

std::string blowup_tex(const BlowupChart& chart) {
  std::ostringstream s;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < chart.variables.size(); ++v) names.push_back("X_{" + std::to_string(v + 1) + "}");
  s << "\\begin{tabular}{lll}\n\\hline\npair & monomial & $f_{i,j}$\\\\\n\\hline\n";
  for (const auto& p : chart.pairs) {
    std::string mono;
    for (unsigned v : p.monomial) mono += names[v - 1];
    if (mono.empty()) mono = "1";
    std::string poly = to_string(p.poly, names);
    std::string tex;
    for (char c : poly)
      if (c != '*') tex += c;
    s << "$x_{" << p.i << "}-x_{" << p.j << "}$ & $" << mono << "$ & $" << tex << "$\\\\\n";
  }
  s << "\\hline\n";
  for (std::size_t v = 0; v < chart.variables.size(); ++v)
    s << "$" << names[v] << "$ & $A_{" << tex_set(chart.variables[v]) << "}$ & \\\\\n";
  s << "\\hline\n\\end{tabular}\n";
  return s.str();
}

std::string system_tex(const KzSystem& system) {
  std::ostringstream s;
  s << "\\begin{align*}\n";
  bool first = true;
  for (unsigned i = 0; i < system.n(); ++i)
    for (unsigned j = i + 1; j < system.n(); ++j) {
      const RationalMatrix& m = system.residue(i, j);
      s << (first ? "" : "\\\\\n") << "A_{" << i << j << "}&=\\begin{pmatrix}";
      for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) s << (c ? "&" : "") << tex_rational(m(r, c));
        if (r + 1 < m.rows()) s << "\\\\";
      }
      s << "\\end{pmatrix}";
      first = false;
    }
  s << "\n\\end{align*}\n";
  return s.str();
}

}  // namespace kzmc
