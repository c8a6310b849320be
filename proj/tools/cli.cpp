#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "kzmc/blowup.hpp"
#include "kzmc/generate.hpp"
#include "kzmc/io.hpp"
#include "kzmc/kz_system.hpp"
#include "kzmc/midconv.hpp"
#include "kzmc/render.hpp"
#include "kzmc/tournament.hpp"

namespace kzmc::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string mu = "";
  unsigned var = 0;
  std::string family;
  std::string format;
  bool shortened = false;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  unsigned n = 0;
  unsigned n_max = 9;
  std::vector<std::string> contains;
  std::optional<unsigned> winner;
  std::string orientation = "loser-first";
  std::string kind = "rank1";
  unsigned steps = 1;
};

std::string read_input(const std::string& input) {
  if (input.empty()) throw UsageError("--input is required");
  if (input.front() == '{') return input;
  if (input == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream file(input);
  if (!file) throw UsageError("cannot read input file '" + input + "'");
  return std::string(std::istreambuf_iterator<char>(file), {});
}

Rational require_mu(const Options& o) {
  if (o.mu.empty()) throw UsageError("--mu is required");
  return parse_rational(o.mu);
}

std::string format_or(const Options& o, const std::string& fallback) { return o.format.empty() ? fallback : o.format; }

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int cmd_counts(const Options& o, std::ostream& out) {
  if (o.n_max < 2 || o.n_max > 40) throw UsageError("--n-max must lie in 2..40");
  const auto rows = count_sequences(o.n_max);
  const std::string format = format_or(o, "ascii");
  if (format == "json") {
    Json j = Json::array();
    for (const auto& r : rows)
      j.push_back(Json{{"n", r.n},
                       {"patterns", r.patterns.str()},
                       {"win_types", r.win_types.str()},
                       {"types", r.types.str()},
                       {"tournaments", r.tournaments.str()}});
    write_json(out, j);
    return exit_ok;
  }
  const std::vector<std::pair<std::string, BigInt TournamentCounts::*>> lines = {
      {"patterns", &TournamentCounts::patterns},
      {"win types", &TournamentCounts::win_types},
      {"types", &TournamentCounts::types},
      {"tournaments", &TournamentCounts::tournaments}};
  if (format == "tex") {
    out << "\\begin{tabular}{|c|" << std::string(rows.size(), 'r') << "|}\n\\hline\nteams";
    for (const auto& r : rows) out << "&" << r.n;
    out << "\\\\\\hline\\hline\n";
    for (const auto& [name, field] : lines) {
      out << name;
      for (const auto& r : rows) out << "&" << (r.*field).str();
      out << "\\\\\\hline\n";
    }
    out << "\\end{tabular}\n";
    return exit_ok;
  }
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.tournaments.str().size());
  auto cell = [&](const std::string& s) { return std::string(width + 1 - s.size(), ' ') + s; };
  out << "teams      ";
  for (const auto& r : rows) out << cell(std::to_string(r.n));
  out << '\n';
  for (const auto& [name, field] : lines) {
    out << name << std::string(11 - name.size(), ' ');
    for (const auto& r : rows) out << cell((r.*field).str());
    out << '\n';
  }
  return exit_ok;
}

std::string tex_braces(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '{' || c == '}') out += '\\';
    out += c;
  }
  return out;
}

int cmd_families(const Options& o, std::ostream& out) {
  if (o.n < 2 || o.n > 12) throw UsageError("--n must lie in 2..12");
  std::vector<LabelSet> required;
  for (const auto& text : o.contains) required.push_back(parse_label_set(text));
  std::vector<MaximalCommutingFamily> selected;
  for (auto& f : enumerate_families(LabelSet::range(o.n))) {
    bool keep = true;
    for (LabelSet r : required) keep = keep && f.contains(r);
    if (keep) selected.push_back(std::move(f));
  }
  const std::string format = format_or(o, "ascii");
  if (format == "json") {
    Json j = Json::array();
    for (const auto& f : selected) j.push_back(serialize(f, o.shortened));
    write_json(out, j);
  } else if (format == "tex") {
    out << "\\begin{tabular}{rl}\n";
    for (std::size_t k = 0; k < selected.size(); ++k)
      out << k + 1 << " & $" << tex_braces(serialize(selected[k], o.shortened)) << "$\\\\\n";
    out << "\\end{tabular}\n";
  } else {
    for (const auto& f : selected) out << serialize(f, o.shortened) << '\n';
  }
  return exit_ok;
}

int cmd_check(const Options& o, std::ostream& out) {
  const KzSystem system = parse_system(read_input(o.input), Validation::unchecked);
  const auto violations = check_integrability(system);
  Json j;
  j["n"] = system.n();
  j["rank"] = system.rank();
  j["integrable"] = violations.empty();
  j["violations"] = to_json(violations);
  const auto k = kappa(system);
  j["kappa"] = k ? Json(to_string(*k)) : Json(nullptr);
  const auto infinity = pseudo_singular_infinity(system);
  if (infinity) {
    Json mus = Json::array();
    for (const auto& m : *infinity) mus.push_back(to_string(m));
    j["pseudo_infinity"] = std::move(mus);
  } else {
    j["pseudo_infinity"] = nullptr;
  }
  write_json(out, j);
  return violations.empty() ? exit_ok : exit_contract;
}

void write_report(const Options& o, const SpectraReport& report, std::ostream& out) {
  const std::string format = format_or(o, "json");
  if (format == "ascii")
    out << spectra_text(report);
  else if (format == "tex")
    out << spectra_tex(report);
  else
    write_json(out, to_json(report));
}

int cmd_spectra(const Options& o, std::ostream& out) {
  const KzSystem system = parse_system(read_input(o.input));
  write_report(o, spectra(system, o.shortened, o.jobs), out);
  return exit_ok;
}

int cmd_predict(const Options& o, std::ostream& out) {
  const KzSystem system = parse_system(read_input(o.input));
  write_report(o, predicted_mc_spectra(system, require_mu(o), o.jobs), out);
  return exit_ok;
}

int cmd_mc(const Options& o, std::ostream& out) {
  const KzSystem system = parse_system(read_input(o.input));
  const KzSystem result = middle_convolution(system, require_mu(o), o.var);
  if (format_or(o, "json") == "tex")
    out << system_tex(result);
  else
    write_json(out, to_json(result));
  return exit_ok;
}

int cmd_verify_mc(const Options& o, std::ostream& out) {
  const KzSystem system = parse_system(read_input(o.input));
  const auto report = verify_mc(system, require_mu(o), o.jobs);
  write_json(out, to_json(report));
  for (const auto& row : report)
    if (!row.ok) return exit_theorem;
  return exit_ok;
}

MaximalCommutingFamily family_option(const Options& o, std::optional<unsigned> n) {
  if (o.family.empty()) throw UsageError("--family is required");
  return parse_family(o.family, n);
}

int cmd_blowup(const Options& o, std::ostream& out) {
  std::optional<KzSystem> system;
  std::optional<unsigned> n;
  if (!o.input.empty()) {
    system = parse_system(read_input(o.input));
    n = system->n();
  } else if (o.n != 0) {
    n = o.n;
  }
  const MaximalCommutingFamily family = family_option(o, n);
  if (!family.labels().contains(0)) throw UsageError("blowup needs label 0");
  Orientation orientation;
  if (o.orientation == "loser-first")
    orientation = Orientation::loser_first;
  else if (o.orientation == "descending")
    orientation = Orientation::descending;
  else
    throw UsageError("--orientation must be loser-first or descending");
  const LoserMap losers = LoserMap::canonical(family, o.winner.value_or(0));
  const BlowupChart chart = blowup_chart(losers, orientation);
  if (format_or(o, "json") == "tex")
    out << blowup_tex(chart);
  else
    write_json(out, to_json(chart, system ? &*system : nullptr));
  return exit_ok;
}

int cmd_render(const Options& o, std::ostream& out) {
  const MaximalCommutingFamily family = family_option(o, o.n ? std::optional<unsigned>(o.n) : std::nullopt);
  const std::string format = format_or(o, "ascii");
  if (format != "ascii" && format != "tex") throw UsageError("render supports ascii and tex");
  out << render_family(family, o.winner, format == "tex" ? RenderFormat::tex : RenderFormat::ascii);
  return exit_ok;
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (o.n < 2 || o.n > 8) throw UsageError("--n must lie in 2..8");
  GeneratedSystem g = [&] {
    if (o.kind == "rank1") return generate_rank_one(o.n, o.seed);
    if (o.kind == "mc-tower") return generate_tower(o.n, o.steps, o.seed);
    throw UsageError("--kind must be rank1 or mc-tower");
  }();
  Json j;
  j["generator"] = generator_version;
  j["kind"] = o.kind;
  j["n"] = o.n;
  j["seed"] = o.seed;
  if (o.kind == "mc-tower") j["steps"] = o.steps;
  j["history"] = g.history;
  j["system"] = to_json(g.system);
  write_json(out, j);
  return exit_ok;
}

const char* exit_code_help =
    "Exit codes:\n"
    "  0  success\n"
    "  1  usage error or invalid argument\n"
    "  2  parse error (message gives line and column)\n"
    "  3  contract violation (non-integrable input, non-commuting matrices, irrational spectrum, ...)\n"
    "  4  theorem violation (a computed result contradicts the prediction)\n";

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for KZ-type equations, tournaments and middle convolution", "kzmc"};
  app.footer(exit_code_help);
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* c) {
    c->add_option("--input", o.input, "system JSON: a file, '-' for stdin, or inline text starting with '{'");
  };
  auto format = [&](CLI::App* c, const std::vector<std::string>& allowed) {
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember(allowed));
  };
  auto jobs = [&](CLI::App* c) { c->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1U, 256U)); };

  auto* counts = app.add_subcommand("counts", "tournament count table");
  counts->add_option("--n-max", o.n_max, "largest number of teams");
  format(counts, {"ascii", "json", "tex"});

  auto* families = app.add_subcommand("families", "enumerate maximal commuting families of {0..n-1}");
  families->add_option("--n", o.n, "number of labels")->required();
  families->add_option("--contains", o.contains, "keep families having this member, e.g. {0,1}");
  families->add_flag("--shortened", o.shortened, "omit the full set");
  format(families, {"ascii", "json", "tex"});

  auto* check = app.add_subcommand("check", "integrability, kappa and infinity of a system");
  input(check);

  auto* sp = app.add_subcommand("spectra", "joint spectra over all families");
  input(sp);
  sp->add_flag("--shortened", o.shortened, "drop A_{L_n}");
  format(sp, {"json", "ascii", "tex"});
  jobs(sp);

  auto* predict = app.add_subcommand("predict", "spectra of the middle convolution predicted from the input");
  input(predict);
  predict->add_option("--mu", o.mu, "convolution parameter p/q");
  format(predict, {"json", "ascii", "tex"});
  jobs(predict);

  auto* mc = app.add_subcommand("mc", "middle convolution");
  input(mc);
  mc->add_option("--mu", o.mu, "convolution parameter p/q");
  mc->add_option("--var", o.var, "convolution variable");
  format(mc, {"json", "tex"});

  auto* verify = app.add_subcommand("verify-mc", "check the spectral predictions family by family");
  input(verify);
  verify->add_option("--mu", o.mu, "convolution parameter p/q");
  jobs(verify);

  auto* blowup = app.add_subcommand("blowup", "local chart resolving the singular point of a family");
  input(blowup);
  blowup->add_option("--n", o.n, "number of labels when no system is given");
  blowup->add_option("--family", o.family, "family, e.g. \"{0,1};{0,1,2}\"");
  blowup->add_option("--winner", o.winner, "final winner for the loser map (default 0)");
  blowup->add_option("--orientation", o.orientation, "loser-first or descending");
  format(blowup, {"json", "tex"});

  auto* render = app.add_subcommand("render", "draw a tournament chart");
  render->add_option("--family", o.family, "family, e.g. \"{0,1};{0,1,2}\"");
  render->add_option("--n", o.n, "complete a shortened family with {0..n-1}");
  render->add_option("--winner", o.winner, "mark losing sides for this winner");
  format(render, {"ascii", "tex"});

  auto* gen = app.add_subcommand("gen", "seeded random system");
  gen->add_option("--kind", o.kind, "rank1 or mc-tower");
  gen->add_option("--n", o.n, "number of labels")->required();
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_option("--steps", o.steps, "middle convolutions in a tower");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (counts->parsed()) return cmd_counts(o, out);
    if (families->parsed()) return cmd_families(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (sp->parsed()) return cmd_spectra(o, out);
    if (predict->parsed()) return cmd_predict(o, out);
    if (mc->parsed()) return cmd_mc(o, out);
    if (verify->parsed()) return cmd_verify_mc(o, out);
    if (blowup->parsed()) return cmd_blowup(o, out);
    if (render->parsed()) return cmd_render(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_parse;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const contract_error& e) {
    err << "contract violation: " << e.what() << '\n';
    return exit_contract;
  } catch (const theorem_violation& e) {
    err << "theorem violation: " << e.what() << '\n';
    return exit_theorem;
  }
  return exit_usage;
}

}  // namespace kzmc::cli
