#include "kzmc/midconv.hpp"

#include <optional>

#include "kzmc/parallel.hpp"

namespace kzmc {

namespace {

KzSystem lift(const KzSystem& a, const Rational& mu) {
  const unsigned n = a.n();
  const Index b = a.rank();
  const Index d = static_cast<Index>(n - 1) * b;
  auto at = [b](unsigned slot) { return static_cast<Index>(slot - 1) * b; };
  const RationalMatrix id = RationalMatrix::Identity(b, b);
  ResidueMap residues;
  for (unsigned k = 1; k < n; ++k) {
    RationalMatrix m = RationalMatrix::Zero(d, d);
    for (unsigned v = 1; v < n; ++v) m.block(at(k), at(v), b, b) = a.residue(0, v);
    m.block(at(k), at(k), b, b) += mu * id;
    residues[{0, k}] = std::move(m);
  }
  for (unsigned i = 1; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) {
      RationalMatrix m = RationalMatrix::Zero(d, d);
      for (unsigned v = 1; v < n; ++v) m.block(at(v), at(v), b, b) = a.residue(i, j);
      m.block(at(i), at(i), b, b) += a.residue(0, j);
      m.block(at(i), at(j), b, b) = -a.residue(0, j);
      m.block(at(j), at(i), b, b) = -a.residue(0, i);
      m.block(at(j), at(j), b, b) += a.residue(0, i);
      residues[{i, j}] = std::move(m);
    }
  KzSystem lifted(n, d, residues, Validation::unchecked);
  const auto violations = check_integrability(lifted);
  if (!violations.empty())
    throw contract_error("convolve: lifted system is not integrable, " + violations.front().relation +
                         " != 0 (is the source integrable?)");
  return lifted;
}

void require_origin(const KzSystem& system) {
  if (system.n() < 2) throw domain_error("midconv: needs n >= 2");
}

Subspace<Rational> infinity_formula(const ConvolvedSystem& conv) {
  const KzSystem& a = conv.source();
  const Index b = a.rank();
  const RationalMatrix shifted = a.residue_infinity(0) - conv.mu() * RationalMatrix::Identity(b, b);
  return conv.embed(LabelSet::range(a.n()).without(0), kernel_basis(shifted));
}

}  // namespace

ConvolvedSystem::ConvolvedSystem(const KzSystem& source, const Rational& mu)
    : source_(source), mu_(mu), lifted_(lift(source, mu)) {}

ConvolvedSystem convolve(const KzSystem& system, const Rational& mu) {
  require_origin(system);
  return ConvolvedSystem(system, mu);
}

Index ConvolvedSystem::slot_offset(unsigned slot) const {
  if (slot == 0 || slot >= n()) throw domain_error("convolution: slot " + std::to_string(slot) + " out of range");
  return static_cast<Index>(slot - 1) * block_size();
}

RationalMatrix ConvolvedSystem::embed(LabelSet slots, const RationalMatrix& v) const {
  if (v.rows() != block_size()) throw domain_error("convolution: embedded vectors have wrong size");
  RationalMatrix out = RationalMatrix::Zero(dimension(), v.cols());
  for (unsigned s : slots.elements()) out.middleRows(slot_offset(s), block_size()) = v;
  return out;
}

Subspace<Rational> ConvolvedSystem::embed(LabelSet slots, const Subspace<Rational>& s) const {
  return Subspace<Rational>::span(embed(slots, s.basis()));
}

KernelData kernels(const ConvolvedSystem& conv) {
  const KzSystem& a = conv.source();
  KernelData out;
  out.total = Subspace<Rational>(conv.dimension());
  Index sum = 0;
  for (unsigned j = 1; j < a.n(); ++j) {
    out.slots.push_back(conv.embed(LabelSet::singleton(j), kernel_basis(a.residue(0, j))));
    sum += out.slots.back().dimension();
    out.total = out.total + out.slots.back();
  }
  out.infinity = kernel_basis(conv.tilde_A_infinity(0));
  sum += out.infinity.dimension();
  out.total = out.total + out.infinity;
  out.direct = out.total.dimension() == sum;
  if (conv.mu() != 0 && !(out.infinity == infinity_formula(conv)))
    throw theorem_violation("kernels: ker ~A_{0,inf} differs from the diagonal embedding of ker(A_{0,inf} - mu)");
  return out;
}

KzSystem middle_convolution(const ConvolvedSystem& conv, const KernelData& kernel) {
  const unsigned n = conv.n();
  const Index rank = conv.dimension() - kernel.total.dimension();
  if (rank == 0) throw contract_error("middle convolution: the quotient is zero-dimensional");
  ResidueMap residues;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) {
      try {
        residues[{i, j}] = quotient(conv.matrix(i, j), kernel.total);
      } catch (const invariance_error&) {
        throw theorem_violation("middle convolution: the kernel is not invariant under ~A_{" + std::to_string(i) + "," +
                                std::to_string(j) + "}");
      }
    }
  KzSystem out(n, rank, residues, Validation::unchecked);
  const auto violations = check_integrability(out);
  if (!violations.empty()) throw theorem_violation("middle convolution: result is not integrable, " + violations.front().relation);
  return out;
}

KzSystem middle_convolution(const KzSystem& system, const Rational& mu) {
  const ConvolvedSystem conv = convolve(system, mu);
  return middle_convolution(conv, kernels(conv));
}

KzSystem middle_convolution(const KzSystem& system, const Rational& mu, unsigned var) {
  if (var >= system.n()) throw domain_error("middle convolution: variable out of range");
  if (var == 0) return middle_convolution(system, mu);
  std::vector<unsigned> swap(system.n());
  for (unsigned i = 0; i < system.n(); ++i) swap[i] = i;
  std::swap(swap[0], swap[var]);
  return permute(middle_convolution(permute(system, swap), mu), swap);
}

RationalMatrix U_matrix(const OrderedFamily& ordered, const LoserMap& losers, Index block_size) {
  if (!(losers.family() == ordered.family())) throw domain_error("U_matrix: loser map is for another family");
  const auto& order = ordered.order();
  const Index b = block_size;
  const Index d = static_cast<Index>(order.size()) * b;
  RationalMatrix u = RationalMatrix::Zero(d, d);
  for (std::size_t l = 0; l < order.size(); ++l) {
    const LabelSet lost = losers.loser(order[l]);
    if (lost.contains(0)) throw domain_error("U_matrix: loser sets must not contain 0");
    for (unsigned j : lost.elements())
      u.block(static_cast<Index>(j - 1) * b, static_cast<Index>(l) * b, b, b) = RationalMatrix::Identity(b, b);
  }
  return u;
}

RationalMatrix predicted_A_I_K(const KzSystem& system, LabelSet set, LabelSet k, const Rational& mu) {
  RationalMatrix out = system.residue(md_set(0, k, set));
  if (me_set(0, k, set) == 1) out += mu * RationalMatrix::Identity(system.rank(), system.rank());
  return out;
}

TriangularizationCertificate triangularize(const ConvolvedSystem& conv, const MaximalCommutingFamily& family) {
  if (family.labels() != LabelSet::range(conv.n())) throw domain_error("triangularize: family is not over L_n");
  const OrderedFamily ordered = canonical_order(family);
  const LoserMap losers = LoserMap::canonical(family, 0);
  const Index b = conv.block_size();
  RationalMatrix u = U_matrix(ordered, losers, b);
  RationalMatrix u_inverse;
  try {
    u_inverse = inverse(u);
  } catch (const contract_error&) {
    throw theorem_violation("triangularize: U is singular for " + serialize(family));
  }
  const auto& order = ordered.order();
  const Index m = static_cast<Index>(order.size());
  for (Index l = 1; l <= m; ++l)
    if (rank(u.leftCols(l * b)) != l * b)
      throw theorem_violation("triangularize: dim W^(" + std::to_string(l) + ") != " + std::to_string(l) + "N");

  TriangularizationCertificate cert{ordered, losers, u, u_inverse, {}, {}};
  for (LabelSet member : order) {
    RationalMatrix c = u_inverse * conv.tilde_A(member) * u;
    std::vector<RationalMatrix> diag;
    for (Index r = 0; r < m; ++r) {
      for (Index col = 0; col < r; ++col)
        if (!is_zero(c.block(r * b, col * b, b, b)))
          throw theorem_violation("triangularize: conjugated ~A_" + to_string(member) + " is not block upper triangular (" +
                                  serialize(family) + ")");
      RationalMatrix block = c.block(r * b, r * b, b, b);
      if (block != predicted_A_I_K(conv.source(), member, order[r], conv.mu()))
        throw theorem_violation("triangularize: diagonal block " + std::to_string(r + 1) + " of ~A_" + to_string(member) +
                                " differs from A_I^K (" + serialize(family) + ")");
      diag.push_back(std::move(block));
    }
    cert.conjugated.push_back(std::move(c));
    cert.blocks.push_back(std::move(diag));
  }
  return cert;
}

RationalSpectrum predicted_single_spectrum(const KzSystem& system, LabelSet set, const Rational& mu) {
  const unsigned n = system.n();
  if (!LabelSet::range(n).includes(set) || set.empty()) throw domain_error("predicted_single_spectrum: invalid set");
  const Index b = system.rank();
  const std::size_t s = set.size();
  const RationalMatrix id = RationalMatrix::Identity(b, b);
  RationalMatrix first = system.residue(set.with(0));
  if (set.contains(0)) first += mu * id;
  const RationalMatrix second = system.residue(set.without(0));
  RationalSpectrum out = joint_spectrum({first}).repeated(s - 1);
  out += joint_spectrum({second}).repeated(n - s);
  return out;
}

RationalSpectrum predicted_joint_spectrum(const KzSystem& system, const MaximalCommutingFamily& family,
                                          const Rational& mu) {
  const OrderedFamily ordered = canonical_order(family);
  RationalSpectrum out(ordered.order().size());
  for (LabelSet j : ordered.order()) {
    std::vector<RationalMatrix> mats;
    for (LabelSet i : ordered.order()) mats.push_back(predicted_A_I_K(system, i, j, mu));
    out += joint_spectrum(mats);
  }
  return out;
}

namespace {

void require_direct_for_zero_mu(const KzSystem& system, const Rational& mu, Label which) {
  if (mu != 0) return;
  const ConvolvedSystem conv = convolve(system, mu);
  const KernelData kd = kernels(conv);
  if (!kd.direct || (which.is_infinity() && !(kd.infinity == infinity_formula(conv))))
    throw contract_error("predicted_restriction: non-direct kernel sum (mu = 0)");
}

}  // namespace

RationalSpectrum predicted_restriction(const KzSystem& system, const MaximalCommutingFamily& family, const Rational& mu,
                                       Label which) {
  const unsigned n = system.n();
  const Index b = system.rank();
  require_direct_for_zero_mu(system, mu, which);
  LabelSet k;
  RationalMatrix target;
  if (which.is_infinity()) {
    k = LabelSet::range(n);
    target = system.residue_infinity(0) - mu * RationalMatrix::Identity(b, b);
  } else {
    const unsigned j = which.index();
    if (j == 0 || j >= n) throw domain_error("predicted_restriction: slot out of range");
    k = LabelSet::singleton(j);
    target = system.residue(0, j);
  }
  const OrderedFamily ordered = canonical_order(family);
  const auto space = kernel_basis(target);
  std::vector<RationalMatrix> mats;
  for (LabelSet i : ordered.order()) mats.push_back(predicted_A_I_K(system, i, k, mu));
  try {
    return joint_spectrum(mats, space);
  } catch (const invariance_error&) {
    throw theorem_violation("predicted_restriction: kernel not invariant under A_I^K");
  }
}

RationalSpectrum direct_restriction(const ConvolvedSystem& conv, const KernelData& kernel,
                                    const MaximalCommutingFamily& family, Label which) {
  const Subspace<Rational>& space = which.is_infinity() ? kernel.infinity : kernel.slots.at(which.index() - 1);
  const OrderedFamily ordered = canonical_order(family);
  std::vector<RationalMatrix> mats;
  for (LabelSet i : ordered.order()) mats.push_back(conv.tilde_A(i));
  try {
    return joint_spectrum(mats, space);
  } catch (const invariance_error&) {
    throw theorem_violation("direct_restriction: kernel not invariant under ~A_I");
  }
}

namespace {

RationalSpectrum predicted_quotient_spectrum(const KzSystem& system, const MaximalCommutingFamily& family,
                                             const Rational& mu) {
  RationalSpectrum out = predicted_joint_spectrum(system, family, mu);
  std::vector<Label> targets;
  for (unsigned j = 1; j < system.n(); ++j) targets.emplace_back(j);
  targets.push_back(Label::infinity());
  for (Label t : targets)
    if (!out.try_subtract(predicted_restriction(system, family, mu, t)))
      throw theorem_violation("predicted_mc_spectra: restriction to K_" + to_string(t) + " is not contained in the spectrum of " +
                              serialize(family));
  return out;
}

}  // namespace

SpectraReport predicted_mc_spectra(const KzSystem& system, const Rational& mu, unsigned jobs) {
  if (mu == 0) throw contract_error("predicted_mc_spectra: mu must be nonzero");
  const ConvolvedSystem conv = convolve(system, mu);
  if (!kernels(conv).direct) throw contract_error("predicted_mc_spectra: kernel sum is not direct");
  const auto families = enumerate_families(LabelSet::range(system.n()));
  std::vector<std::optional<SpectraEntry>> slots(families.size());
  parallel_for(families.size(), jobs, [&](std::size_t k) {
    slots[k] = SpectraEntry{families[k], canonical_order(families[k]).order(),
                            predicted_quotient_spectrum(system, families[k], mu)};
  });
  SpectraReport report{false, {}};
  for (auto& s : slots) report.entries.push_back(std::move(*s));
  return report;
}

PseudoInfinityCheck mc_preserves_pseudo_infinity(const KzSystem& system, const Rational& mu0) {
  PseudoInfinityCheck out;
  const auto before = pseudo_singular_infinity(system);
  if (!before) throw contract_error("mc_preserves_pseudo_infinity: infinity is singular (some A_{i,inf} is not scalar)");
  if ((*before)[0] != mu0) throw contract_error("mc_preserves_pseudo_infinity: mu_0 must equal the scalar A_{0,inf}");
  out.mu_before = *before;
  const ConvolvedSystem conv = convolve(system, mu0);
  const KernelData kd = kernels(conv);
  const Index b = system.rank();
  const auto diagonal = conv.embed(LabelSet::range(system.n()).without(0), Subspace<Rational>::full(b));
  out.kernel_matches = mu0 != 0 ? kd.infinity == diagonal : kd.infinity.contains(diagonal);
  const KzSystem result = middle_convolution(conv, kd);
  out.mu_after = pseudo_singular_infinity(result);
  out.zero_at_origin = is_zero(result.residue_infinity(0));
  out.scalars_preserved = out.mu_after.has_value();
  if (out.mu_after)
    for (unsigned i = 1; i < system.n(); ++i)
      if ((*out.mu_after)[i] != out.mu_before[i]) out.scalars_preserved = false;
  return out;
}

std::vector<FamilyVerification> verify_mc(const KzSystem& system, const Rational& mu, unsigned jobs) {
  if (mu == 0) throw contract_error("verify_mc: mu must be nonzero");
  const ConvolvedSystem conv = convolve(system, mu);
  const KernelData kd = kernels(conv);
  if (!kd.direct) throw contract_error("verify_mc: kernel sum is not direct");
  const KzSystem quotient_system = middle_convolution(conv, kd);
  const auto families = enumerate_families(LabelSet::range(system.n()));
  std::vector<std::optional<FamilyVerification>> slots(families.size());

  parallel_for(families.size(), jobs, [&](std::size_t k) {
    const auto& family = families[k];
    auto fail = [&](const std::string& why) { slots[k] = FamilyVerification{family, false, why}; };
    try {
      triangularize(conv, family);
      const OrderedFamily ordered = canonical_order(family);
      for (LabelSet i : ordered.order())
        if (!(joint_spectrum({conv.tilde_A(i)}) == predicted_single_spectrum(system, i, mu)))
          return fail("[~A_" + to_string(i) + "] differs from the predicted single spectrum");
      std::vector<RationalMatrix> lifted;
      for (LabelSet i : ordered.order()) lifted.push_back(conv.tilde_A(i));
      const RationalSpectrum whole = joint_spectrum(lifted);
      RationalSpectrum predicted = predicted_joint_spectrum(system, family, mu);
      if (!(whole == predicted))
        return fail("joint spectrum " + to_string(whole) + " differs from prediction " + to_string(predicted));
      std::vector<Label> targets;
      for (unsigned j = 1; j < system.n(); ++j) targets.emplace_back(j);
      targets.push_back(Label::infinity());
      for (Label t : targets) {
        const RationalSpectrum direct = direct_restriction(conv, kd, family, t);
        const RationalSpectrum expected = predicted_restriction(system, family, mu, t);
        if (!(direct == expected))
          return fail("restriction to K_" + to_string(t) + " " + to_string(direct) + " differs from prediction " +
                      to_string(expected));
        if (!predicted.try_subtract(expected)) return fail("restriction to K_" + to_string(t) + " exceeds the spectrum");
      }
      const RationalSpectrum actual = family_spectrum(quotient_system, family);
      if (!(actual == predicted))
        return fail("quotient spectrum " + to_string(actual) + " differs from prediction " + to_string(predicted));
      slots[k] = FamilyVerification{family, true, "ok"};
    } catch (const theorem_violation& e) {
      fail(e.what());
    }
  });
  std::vector<FamilyVerification> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace kzmc
