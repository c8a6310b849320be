#pragma once

#include <map>
#include <string>
#include <vector>

#include "kzmc/kz_system.hpp"
#include "kzmc/rational.hpp"
#include "kzmc/tournament.hpp"

namespace kzmc {

// Sparse polynomial in X_1..X_k with integer coefficients. Exponent vectors
// always have length k; terms are kept in graded lexicographic order.
class IntPolynomial {
 public:
  using Exponents = std::vector<unsigned>;
  struct GradedLex {
    bool operator()(const Exponents& a, const Exponents& b) const;
  };
  using Terms = std::map<Exponents, BigInt, GradedLex>;

  explicit IntPolynomial(unsigned variables = 0) : variables_(variables) {}
  static IntPolynomial constant(unsigned variables, const BigInt& c);
  // X_v, 1-based.
  static IntPolynomial variable(unsigned variables, unsigned v);
  static IntPolynomial monomial(unsigned variables, const Exponents& exponents, const BigInt& c = 1);

  unsigned variables() const { return variables_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigInt coefficient(const Exponents& exponents) const;
  BigInt constant_term() const { return coefficient(Exponents(variables_, 0)); }
  // 1-based indices of variables with a nonzero exponent somewhere.
  std::vector<unsigned> support() const;
  unsigned degree() const;

  IntPolynomial operator-() const;
  IntPolynomial& operator+=(const IntPolynomial& other);
  IntPolynomial& operator-=(const IntPolynomial& other);
  IntPolynomial& operator*=(const IntPolynomial& other);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const IntPolynomial& b) { return a *= b; }
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  // Exact division by a monomial; throws contract_error if a term is not divisible.
  IntPolynomial divide_by_monomial(const Exponents& exponents) const;
  BigInt evaluate(const std::vector<BigInt>& point) const;
  // X_v -> images[v-1]; all images share a variable count.
  IntPolynomial substitute(const std::vector<IntPolynomial>& images) const;

 private:
  void add_term(const Exponents& e, const BigInt& c);
  void check_compatible(const IntPolynomial& other) const;

  unsigned variables_;
  Terms terms_;
};

// Constant term first, then ascending graded order: "1-X1", "-1+X1+X2".
// names defaults to X1..Xk.
std::string to_string(const IntPolynomial& p, const std::vector<std::string>& names = {});

// How x_I is oriented for a game with players {a, b}.
enum class Orientation {
  loser_first,  // x_{n_I} - x_{n'_I} with n_I from the losing side
  descending,   // x_max - x_min
};

// The ordered player pair (p, q) with x_I = x_p - x_q.
std::pair<unsigned, unsigned> oriented_players(const LoserMap& losers, LabelSet member, Orientation orientation);

// x_i - x_j = sum_I eps^I x_I; members with eps = 0 are omitted.
std::map<LabelSet, BigInt, LabelSetKeyLess> epsilon_coefficients(const LoserMap& losers, unsigned i, unsigned j,
                                                                 Orientation orientation = Orientation::loser_first);

struct ChartPair {
  unsigned i;
  unsigned j;
  std::vector<unsigned> monomial;  // 1-based variable indices nu with {i,j} in I_nu
  IntPolynomial poly;              // f_{ij}
};

struct BlowupChart {
  LoserMap losers;
  Orientation orientation;
  std::vector<LabelSet> variables;  // I_nu for X_nu, nu = 1..n-2
  std::vector<ChartPair> pairs;     // i < j, lexicographic

  // x_i - x_j as a polynomial in the chart variables, for any i != j.
  IntPolynomial difference(unsigned i, unsigned j) const;
  const ChartPair& pair(unsigned i, unsigned j) const;
};

// Default variable order: members other than the full set by increasing
// size, ties by the smallest differing element. An explicit order must list
// every member except the full set exactly once. Throws contract_error if
// the chart invariants fail.
BlowupChart blowup_chart(const LoserMap& losers, Orientation orientation = Orientation::loser_first,
                         std::vector<LabelSet> order = {});

std::vector<LabelSet> default_chart_order(const MaximalCommutingFamily& family);

struct LocalResidue {
  unsigned variable;  // 1-based
  LabelSet member;
  RationalMatrix residue;
};

// X_nu -> A_{I_nu}.
std::vector<LocalResidue> local_residues(const KzSystem& system, const BlowupChart& chart);

}  // namespace kzmc
