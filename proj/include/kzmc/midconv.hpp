#pragma once

#include <string>
#include <vector>

#include "kzmc/kz_system.hpp"
#include "kzmc/linalg.hpp"
#include "kzmc/tournament.hpp"

namespace kzmc {

// The lift of a system to (n-1)N dimensions with respect to x_0. Slot j
// (1 <= j <= n-1) occupies coordinates (j-1)N .. jN-1.
class ConvolvedSystem {
 public:
  ConvolvedSystem(const KzSystem& source, const Rational& mu);

  const KzSystem& source() const { return source_; }
  const Rational& mu() const { return mu_; }
  unsigned n() const { return source_.n(); }
  Index block_size() const { return source_.rank(); }
  Index dimension() const { return lifted_.rank(); }

  // The ~A_{ij} as a system of rank (n-1)N.
  const KzSystem& lifted() const { return lifted_; }
  const RationalMatrix& matrix(unsigned i, unsigned j) const { return lifted_.residue(i, j); }
  RationalMatrix tilde_A(LabelSet set) const { return lifted_.residue(set); }
  RationalMatrix tilde_A_infinity(unsigned i) const { return lifted_.residue_infinity(i); }

  Index slot_offset(unsigned slot) const;
  // iota_I: copies of each column of v in the slots of I, zero elsewhere.
  RationalMatrix embed(LabelSet slots, const RationalMatrix& v) const;
  Subspace<Rational> embed(LabelSet slots, const Subspace<Rational>& s) const;

 private:
  KzSystem source_;
  Rational mu_;
  KzSystem lifted_;
};

ConvolvedSystem convolve(const KzSystem& system, const Rational& mu);

struct KernelData {
  std::vector<Subspace<Rational>> slots;  // K_j at index j-1
  Subspace<Rational> infinity;            // literal kernel of ~A_{0,inf}
  Subspace<Rational> total;
  bool direct = false;
};

KernelData kernels(const ConvolvedSystem& conv);

KzSystem middle_convolution(const ConvolvedSystem& conv, const KernelData& kernel);
KzSystem middle_convolution(const KzSystem& system, const Rational& mu);
// Convolution in x_var: swap 0 and var, convolve, swap back.
KzSystem middle_convolution(const KzSystem& system, const Rational& mu, unsigned var);

// Block column l is iota_{b(I^(l))}; the loser sets must avoid 0.
RationalMatrix U_matrix(const OrderedFamily& ordered, const LoserMap& losers, Index block_size);

struct TriangularizationCertificate {
  OrderedFamily ordered;
  LoserMap losers;
  RationalMatrix u;
  RationalMatrix u_inverse;
  std::vector<RationalMatrix> conjugated;          // U^-1 ~A_I U, by position of I
  std::vector<std::vector<RationalMatrix>> blocks;  // [position of I][l]
};

// Throws theorem_violation if a conjugated matrix is not block upper
// triangular or a diagonal block differs from A_I^{I^(l)}.
TriangularizationCertificate triangularize(const ConvolvedSystem& conv, const MaximalCommutingFamily& family);

// A_I^K = A_{md_{0,K}(I)} + me_{0,K}(I) mu.
RationalMatrix predicted_A_I_K(const KzSystem& system, LabelSet set, LabelSet k, const Rational& mu);

// [~A_I] from the source system alone.
RationalSpectrum predicted_single_spectrum(const KzSystem& system, LabelSet set, const Rational& mu);

// Union over J of [A^J_{I^(1)} : ... : A^J_{I^(n-1)}].
RationalSpectrum predicted_joint_spectrum(const KzSystem& system, const MaximalCommutingFamily& family,
                                          const Rational& mu);

// which = j: (A^{{j}}_I) on ker A_{0j}; which = infinity: (A^{L_n}_I) on ker(A_{0,inf} - mu).
RationalSpectrum predicted_restriction(const KzSystem& system, const MaximalCommutingFamily& family,
                                       const Rational& mu, Label which);

// Joint spectrum of (~A_I) restricted to K_j or K_inf, computed directly.
RationalSpectrum direct_restriction(const ConvolvedSystem& conv, const KernelData& kernel,
                                    const MaximalCommutingFamily& family, Label which);

SpectraReport predicted_mc_spectra(const KzSystem& system, const Rational& mu, unsigned jobs = 1);

struct PseudoInfinityCheck {
  bool kernel_matches = false;    // K_inf = V_{L_n^0} (contains it when mu_0 = 0)
  bool zero_at_origin = false;    // quotient A_{0,inf} = 0
  bool scalars_preserved = false;  // quotient A_{i,inf} = mu_i
  std::vector<Rational> mu_before;
  std::optional<std::vector<Rational>> mu_after;  // mu_after[0] is the scalar quotient A_{0,inf}, if scalar

  bool ok() const { return kernel_matches && zero_at_origin && scalars_preserved; }
};

// Convolves with mu_0 = A_{0,inf} and checks that infinity stays pseudo-singular.
PseudoInfinityCheck mc_preserves_pseudo_infinity(const KzSystem& system, const Rational& mu0);

struct FamilyVerification {
  MaximalCommutingFamily family;
  bool ok;
  std::string details;
};

// Checks every statement of the main theorem for every family.
std::vector<FamilyVerification> verify_mc(const KzSystem& system, const Rational& mu, unsigned jobs = 1);

}  // namespace kzmc
