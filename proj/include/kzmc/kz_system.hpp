#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kzmc/linalg.hpp"
#include "kzmc/rational.hpp"
#include "kzmc/tournament.hpp"

namespace kzmc {

enum class Validation { checked, unchecked };

// Keys are (i, j) with i < j; absent pairs are zero.
using ResidueMap = std::map<std::pair<unsigned, unsigned>, RationalMatrix>;

struct IntegrabilityViolation {
  std::string relation;  // e.g. "[A_{0,1},A_{0,2}+A_{1,2}]"
  std::vector<unsigned> labels;
};

class KzSystem {
 public:
  KzSystem(unsigned n, Index rank, const ResidueMap& residues, Validation validation = Validation::checked);

  // Scalar residues lambda_{ij}; integrable by construction.
  static KzSystem rank_one(unsigned n, const std::map<std::pair<unsigned, unsigned>, Rational>& values);

  unsigned n() const { return n_; }
  Index rank() const { return rank_; }

  const RationalMatrix& residue(unsigned i, unsigned j) const;
  // A_I: sum over pairs inside I.
  RationalMatrix residue(LabelSet set) const;
  // A_I for I in L~_n, by the same pair sum with A_{i,inf} = -sum_v A_{i,v}.
  RationalMatrix residue(const ExtendedLabelSet& set) const;
  RationalMatrix residue_infinity(unsigned i) const;

  ResidueMap residues() const;

 private:
  std::size_t index(unsigned i, unsigned j) const;

  unsigned n_;
  Index rank_;
  std::vector<RationalMatrix> pairs_;
};

std::vector<IntegrabilityViolation> check_integrability(const KzSystem& system);

// kappa with A_{L_n} = kappa * identity, if A_{L_n} is scalar.
std::optional<Rational> kappa(const KzSystem& system);

// Ad((x_p - x_q)^lambda): A_{pq} -> A_{pq} + lambda.
KzSystem addition(const KzSystem& system, unsigned p, unsigned q, const Rational& lambda);

// A'_{sigma(i) sigma(j)} = A_{ij}.
KzSystem permute(const KzSystem& system, const std::vector<unsigned>& sigma);

// Joint spectrum of (A_I) over the canonical order of a family; the last
// entry (A_{L_n}) is dropped when shortened.
RationalSpectrum family_spectrum(const KzSystem& system, const MaximalCommutingFamily& family, bool shortened = false);

struct SpectraEntry {
  MaximalCommutingFamily family;
  std::vector<LabelSet> members;  // tuple order
  RationalSpectrum spectrum;
};

struct SpectraReport {
  bool shortened = false;
  std::vector<SpectraEntry> entries;

  const SpectraEntry& at(const MaximalCommutingFamily& family) const;
};

bool operator==(const SpectraEntry& a, const SpectraEntry& b);
bool operator==(const SpectraReport& a, const SpectraReport& b);

// Sp (or Sp' when shortened) over all (2n-3)!! families, in enumeration order.
SpectraReport spectra(const KzSystem& system, bool shortened = false, unsigned jobs = 1);

// Spectrum of sum_I c_I A_I, read off the family's joint spectrum.
RationalSpectrum spectrum_of_combination(const KzSystem& system, const MaximalCommutingFamily& family,
                                         const std::map<LabelSet, Rational, LabelSetKeyLess>& coefficients);

// mu_i with A_{i,inf} = mu_i for all i, if every A_{i,inf} is scalar.
std::optional<std::vector<Rational>> pseudo_singular_infinity(const KzSystem& system);

// Ad((x0-x1)^l (x0-x2)^l (x1-x2)^-l).
KzSystem infinity_shift(const KzSystem& system, const Rational& lambda);

// Moving coordinates 0..n-1 and fixed points y_q = x_{n+q-1}, q = 1..m.
// Extra residues B_{iq} are keyed by (i, q).
class FixedPointSystem {
 public:
  FixedPointSystem(KzSystem base, unsigned fixed_points, const ResidueMap& extra,
                   Validation validation = Validation::checked);

  const KzSystem& base() const { return base_; }
  unsigned fixed_points() const { return m_; }
  const RationalMatrix& extra(unsigned i, unsigned q) const;

  // A_{I;Q} for I within 0..n-1 and Q within n..n+m-1.
  RationalMatrix residue(LabelSet moving, LabelSet fixed) const;

  // n+m coordinates with A_{i,n+q-1} = B_{iq} and zero residues among the
  // fixed points. Not integrability-checked.
  KzSystem embedded() const;

 private:
  KzSystem base_;
  unsigned m_;
  std::vector<RationalMatrix> extra_;
};

std::vector<IntegrabilityViolation> check_integrability(const FixedPointSystem& system);

RationalMatrix fixed_point_residue(const FixedPointSystem& system, LabelSet moving, LabelSet fixed);

}  // namespace kzmc
