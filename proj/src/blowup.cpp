#include "kzmc/blowup.hpp"

#include <algorithm>
#include <numeric>

namespace kzmc {

bool IntPolynomial::GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = std::accumulate(a.begin(), a.end(), 0U);
  const unsigned db = std::accumulate(b.begin(), b.end(), 0U);
  if (da != db) return da < db;
  // Within a degree, X1 sorts before X2.
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

IntPolynomial IntPolynomial::constant(unsigned variables, const BigInt& c) {
  return monomial(variables, Exponents(variables, 0), c);
}

IntPolynomial IntPolynomial::variable(unsigned variables, unsigned v) {
  if (v == 0 || v > variables) throw domain_error("polynomial: variable index out of range");
  Exponents e(variables, 0);
  e[v - 1] = 1;
  return monomial(variables, e);
}

IntPolynomial IntPolynomial::monomial(unsigned variables, const Exponents& exponents, const BigInt& c) {
  if (exponents.size() != variables) throw domain_error("polynomial: exponent vector has wrong length");
  IntPolynomial p(variables);
  p.add_term(exponents, c);
  return p;
}

void IntPolynomial::add_term(const Exponents& e, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void IntPolynomial::check_compatible(const IntPolynomial& other) const {
  if (other.variables_ != variables_) throw domain_error("polynomial: variable counts differ");
}

BigInt IntPolynomial::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? BigInt(0) : it->second;
}

std::vector<unsigned> IntPolynomial::support() const {
  std::vector<unsigned> out;
  for (unsigned v = 0; v < variables_; ++v)
    for (const auto& [e, c] : terms_)
      if (e[v] != 0) {
        out.push_back(v + 1);
        break;
      }
  return out;
}

unsigned IntPolynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0U));
  return d;
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const IntPolynomial& other) {
  check_compatible(other);
  IntPolynomial out(variables_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : other.terms_) {
      Exponents e(variables_);
      for (unsigned v = 0; v < variables_; ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  return *this = std::move(out);
}

IntPolynomial IntPolynomial::divide_by_monomial(const Exponents& exponents) const {
  if (exponents.size() != variables_) throw domain_error("polynomial: exponent vector has wrong length");
  IntPolynomial out(variables_);
  for (const auto& [e, c] : terms_) {
    Exponents q(variables_);
    for (unsigned v = 0; v < variables_; ++v) {
      if (e[v] < exponents[v]) throw contract_error("polynomial: term is not divisible by the monomial");
      q[v] = e[v] - exponents[v];
    }
    out.add_term(q, c);
  }
  return out;
}

BigInt IntPolynomial::evaluate(const std::vector<BigInt>& point) const {
  if (point.size() != variables_) throw domain_error("polynomial: point has wrong dimension");
  BigInt sum = 0;
  for (const auto& [e, c] : terms_) {
    BigInt t = c;
    for (unsigned v = 0; v < variables_; ++v)
      for (unsigned k = 0; k < e[v]; ++k) t *= point[v];
    sum += t;
  }
  return sum;
}

IntPolynomial IntPolynomial::substitute(const std::vector<IntPolynomial>& images) const {
  if (images.size() != variables_) throw domain_error("polynomial: wrong number of images");
  const unsigned target = images.empty() ? 0 : images.front().variables();
  for (const auto& p : images)
    if (p.variables() != target) throw domain_error("polynomial: images have different variable counts");
  IntPolynomial out(target);
  for (const auto& [e, c] : terms_) {
    IntPolynomial t = constant(target, c);
    for (unsigned v = 0; v < variables_; ++v)
      for (unsigned k = 0; k < e[v]; ++k) t *= images[v];
    out += t;
  }
  return out;
}

std::string to_string(const IntPolynomial& p, const std::vector<std::string>& names) {
  if (!names.empty() && names.size() != p.variables()) throw domain_error("polynomial: wrong number of names");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    std::string mono;
    for (unsigned v = 0; v < p.variables(); ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.empty() ? "X" + std::to_string(v + 1) : names[v];
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    const BigInt mag = abs(c);
    if (c < 0)
      out += "-";
    else if (!first)
      out += "+";
    if (mono.empty())
      out += mag.str();
    else if (mag == 1)
      out += mono;
    else
      out += mag.str() + "*" + mono;
    first = false;
  }
  return out;
}

std::pair<unsigned, unsigned> oriented_players(const LoserMap& losers, LabelSet member, Orientation orientation) {
  const auto [n, n_prime] = player_pair(losers, member);
  if (orientation == Orientation::loser_first) return {n, n_prime};
  return {std::max(n, n_prime), std::min(n, n_prime)};
}

namespace {

using Coefficients = std::map<LabelSet, BigInt, LabelSetKeyLess>;

void accumulate(Coefficients& out, const LoserMap& losers, unsigned i, unsigned j, const BigInt& sign,
                Orientation orientation) {
  if (i == j) return;
  const MaximalCommutingFamily& family = losers.family();
  const LabelSet top = family.smallest_member_containing(LabelSet{i, j});
  const auto [p, q] = oriented_players(losers, top, orientation);
  const auto [left, right] = family.children(top);
  const LabelSet p_side = left.contains(p) ? left : right;
  if (!p_side.contains(i)) {
    accumulate(out, losers, j, i, -sign, orientation);
    return;
  }
  // x_i - x_j = (x_p - x_q) + (x_i - x_p) - (x_j - x_q)
  out[top] += sign;
  accumulate(out, losers, i, p, sign, orientation);
  accumulate(out, losers, j, q, -sign, orientation);
}

}  // namespace

std::map<LabelSet, BigInt, LabelSetKeyLess> epsilon_coefficients(const LoserMap& losers, unsigned i, unsigned j,
                                                                 Orientation orientation) {
  const LabelSet labels = losers.family().labels();
  if (i == j || !labels.contains(i) || !labels.contains(j))
    throw domain_error("epsilon_coefficients: need two distinct labels of the family");
  Coefficients out;
  accumulate(out, losers, i, j, 1, orientation);
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::vector<LabelSet> default_chart_order(const MaximalCommutingFamily& family) {
  std::vector<LabelSet> out;
  for (LabelSet m : family.members())
    if (m != family.labels()) out.push_back(m);
  std::sort(out.begin(), out.end(), [](LabelSet a, LabelSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return canonical_less(a, b);
  });
  return out;
}

BlowupChart blowup_chart(const LoserMap& losers, Orientation orientation, std::vector<LabelSet> order) {
  const MaximalCommutingFamily& family = losers.family();
  if (order.empty()) order = default_chart_order(family);
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  auto expected = default_chart_order(family);
  std::sort(expected.begin(), expected.end(), canonical_less);
  if (sorted != expected) throw domain_error("blowup_chart: order must list every member except the full set once");

  const unsigned k = static_cast<unsigned>(order.size());
  BlowupChart chart{losers, orientation, order, {}};
  const auto labels = family.labels().elements();
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b) {
      const unsigned i = labels[a];
      const unsigned j = labels[b];
      const IntPolynomial x = chart.difference(i, j);
      const LabelSet top = family.smallest_member_containing(LabelSet{i, j});
      IntPolynomial::Exponents e(k, 0);
      std::vector<unsigned> monomial;
      for (unsigned v = 0; v < k; ++v)
        if (order[v].includes(top)) {
          e[v] = 1;
          monomial.push_back(v + 1);
        }
      IntPolynomial f;
      try {
        f = x.divide_by_monomial(e);
      } catch (const contract_error&) {
        throw contract_error("blowup_chart: x_" + std::to_string(i) + "-x_" + std::to_string(j) +
                             " is not divisible by its monomial");
      }
      const BigInt c = f.constant_term();
      if (c != 1 && c != -1)
        throw contract_error("blowup_chart: f_{" + std::to_string(i) + "," + std::to_string(j) +
                             "} has constant term " + c.str());
      for (unsigned v : f.support())
        if (!top.strictly_includes(order[v - 1]))
          throw contract_error("blowup_chart: f_{" + std::to_string(i) + "," + std::to_string(j) + "} involves X" +
                               std::to_string(v));
      chart.pairs.push_back(ChartPair{i, j, std::move(monomial), std::move(f)});
    }
  return chart;
}

IntPolynomial BlowupChart::difference(unsigned i, unsigned j) const {
  const unsigned k = static_cast<unsigned>(variables.size());
  const LabelSet full = losers.family().labels();
  IntPolynomial out(k);
  for (const auto& [member, eps] : epsilon_coefficients(losers, i, j, orientation)) {
    IntPolynomial::Exponents e(k, 0);
    if (member != full)
      for (unsigned v = 0; v < k; ++v)
        if (variables[v].includes(member)) e[v] = 1;
    out += IntPolynomial::monomial(k, e, eps);
  }
  return out;
}

const ChartPair& BlowupChart::pair(unsigned i, unsigned j) const {
  for (const auto& p : pairs)
    if (p.i == i && p.j == j) return p;
  throw domain_error("blowup chart: no pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

std::vector<LocalResidue> local_residues(const KzSystem& system, const BlowupChart& chart) {
  if (chart.losers.family().labels() != LabelSet::range(system.n()))
    throw domain_error("local_residues: chart and system have different labels");
  std::vector<LocalResidue> out;
  for (unsigned v = 0; v < chart.variables.size(); ++v)
    out.push_back(LocalResidue{v + 1, chart.variables[v], system.residue(chart.variables[v])});
  return out;
}

}  // namespace kzmc
