#include "kzmc/kz_system.hpp"

#include <algorithm>

#include "kzmc/parallel.hpp"

namespace kzmc {

namespace {

std::string pair_name(unsigned i, unsigned j) {
  return "A_{" + std::to_string(std::min(i, j)) + "," + std::to_string(std::max(i, j)) + "}";
}

}  // namespace

KzSystem::KzSystem(unsigned n, Index rank, const ResidueMap& residues, Validation validation)
    : n_(n), rank_(rank) {
  if (n < 2) throw domain_error("KZ system: n must be at least 2");
  if (n > max_labels) throw domain_error("KZ system: n must be at most 64");
  if (rank < 1) throw domain_error("KZ system: rank must be at least 1");
  pairs_.assign(n * (n - 1) / 2, RationalMatrix::Zero(rank, rank));
  for (const auto& [key, m] : residues) {
    const auto [i, j] = key;
    if (i >= j || j >= n) throw domain_error("KZ system: invalid residue key (" + std::to_string(i) + "," + std::to_string(j) + ")");
    if (m.rows() != rank || m.cols() != rank)
      throw domain_error("KZ system: residue " + pair_name(i, j) + " is not " + std::to_string(rank) + "x" + std::to_string(rank));
    pairs_[index(i, j)] = m;
  }
  if (validation == Validation::checked) {
    const auto violations = check_integrability(*this);
    if (!violations.empty())
      throw contract_error("KZ system: integrability fails, " + violations.front().relation + " != 0");
  }
}

KzSystem KzSystem::rank_one(unsigned n, const std::map<std::pair<unsigned, unsigned>, Rational>& values) {
  ResidueMap residues;
  for (const auto& [key, v] : values) residues[key] = RationalMatrix::Constant(1, 1, v);
  return KzSystem(n, 1, residues, Validation::unchecked);
}

std::size_t KzSystem::index(unsigned i, unsigned j) const {
  if (i == j || i >= n_ || j >= n_) throw domain_error("KZ system: invalid pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  if (i > j) std::swap(i, j);
  // Row-major over the strict upper triangle.
  return static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

const RationalMatrix& KzSystem::residue(unsigned i, unsigned j) const { return pairs_[index(i, j)]; }

RationalMatrix KzSystem::residue(LabelSet set) const {
  RationalMatrix sum = RationalMatrix::Zero(rank_, rank_);
  const auto elements = set.elements();
  if (!elements.empty() && elements.back() >= n_) throw domain_error("residue: " + to_string(set) + " is not inside L_n");
  for (std::size_t a = 0; a < elements.size(); ++a)
    for (std::size_t b = a + 1; b < elements.size(); ++b) sum += residue(elements[a], elements[b]);
  return sum;
}

RationalMatrix KzSystem::residue_infinity(unsigned i) const {
  if (i >= n_) throw domain_error("residue: label " + std::to_string(i) + " out of range");
  RationalMatrix sum = RationalMatrix::Zero(rank_, rank_);
  for (unsigned v = 0; v < n_; ++v)
    if (v != i) sum -= residue(i, v);
  return sum;
}

RationalMatrix KzSystem::residue(const ExtendedLabelSet& set) const {
  RationalMatrix sum = residue(set.finite);
  if (set.infinity)
    for (unsigned i : set.finite.elements()) sum += residue_infinity(i);
  return sum;
}

ResidueMap KzSystem::residues() const {
  ResidueMap out;
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = i + 1; j < n_; ++j) out[{i, j}] = residue(i, j);
  return out;
}

std::vector<IntegrabilityViolation> check_integrability(const KzSystem& system) {
  std::vector<IntegrabilityViolation> out;
  const unsigned n = system.n();
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j)
      for (unsigned k = 0; k < n; ++k)
        for (unsigned l = k + 1; l < n; ++l) {
          if (k < i || (k == i && l <= j)) continue;
          if (k == i || k == j || l == i || l == j) continue;
          if (!is_zero(commutator(system.residue(i, j), system.residue(k, l))))
            out.push_back({"[" + pair_name(i, j) + "," + pair_name(k, l) + "]", {i, j, k, l}});
        }
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = a + 1; b < n; ++b)
      for (unsigned c = b + 1; c < n; ++c) {
        const unsigned triple[3] = {a, b, c};
        for (int skip = 2; skip >= 0; --skip) {
          unsigned i = 0, j = 0;
          bool first = true;
          for (int t = 0; t < 3; ++t) {
            if (t == skip) continue;
            (first ? i : j) = triple[t];
            first = false;
          }
          const unsigned k = triple[skip];
          const RationalMatrix partner = system.residue(i, k) + system.residue(j, k);
          if (!is_zero(commutator(system.residue(i, j), partner)))
            out.push_back({"[" + pair_name(i, j) + "," + pair_name(i, k) + "+" + pair_name(j, k) + "]", {i, j, k}});
        }
      }
  return out;
}

std::optional<Rational> kappa(const KzSystem& system) {
  const RationalMatrix full = system.residue(LabelSet::range(system.n()));
  if (!is_scalar_matrix(full)) return std::nullopt;
  return full(0, 0);
}

KzSystem addition(const KzSystem& system, unsigned p, unsigned q, const Rational& lambda) {
  if (p == q || p >= system.n() || q >= system.n()) throw domain_error("addition: invalid pair");
  ResidueMap residues = system.residues();
  auto& m = residues[{std::min(p, q), std::max(p, q)}];
  m += lambda * RationalMatrix::Identity(system.rank(), system.rank());
  return KzSystem(system.n(), system.rank(), residues, Validation::unchecked);
}

KzSystem permute(const KzSystem& system, const std::vector<unsigned>& sigma) {
  const unsigned n = system.n();
  if (sigma.size() != n) throw domain_error("permute: permutation has wrong length");
  std::vector<bool> seen(n, false);
  for (unsigned s : sigma) {
    if (s >= n || seen[s]) throw domain_error("permute: not a permutation of L_n");
    seen[s] = true;
  }
  ResidueMap residues;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j)
      residues[{std::min(sigma[i], sigma[j]), std::max(sigma[i], sigma[j])}] = system.residue(i, j);
  return KzSystem(n, system.rank(), residues, Validation::unchecked);
}

RationalSpectrum family_spectrum(const KzSystem& system, const MaximalCommutingFamily& family, bool shortened) {
  if (family.labels() != LabelSet::range(system.n())) throw domain_error("spectra: family is not over L_n");
  const OrderedFamily ordered = canonical_order(family);
  std::vector<RationalMatrix> mats;
  for (LabelSet m : ordered.order())
    if (!(shortened && m == family.labels())) mats.push_back(system.residue(m));
  if (mats.empty()) {
    RationalSpectrum out(0);
    out.add({}, static_cast<std::size_t>(system.rank()));
    return out;
  }
  return joint_spectrum(mats);
}

const SpectraEntry& SpectraReport::at(const MaximalCommutingFamily& family) const {
  for (const auto& e : entries)
    if (e.family == family) return e;
  throw domain_error("spectra report: no entry for " + serialize(family));
}

bool operator==(const SpectraEntry& a, const SpectraEntry& b) {
  return a.family == b.family && a.members == b.members && a.spectrum == b.spectrum;
}

bool operator==(const SpectraReport& a, const SpectraReport& b) {
  return a.shortened == b.shortened && a.entries == b.entries;
}

SpectraReport spectra(const KzSystem& system, bool shortened, unsigned jobs) {
  const auto families = enumerate_families(LabelSet::range(system.n()));
  SpectraReport report{shortened, {}};
  std::vector<std::optional<SpectraEntry>> slots(families.size());
  parallel_for(families.size(), jobs, [&](std::size_t k) {
    const OrderedFamily ordered = canonical_order(families[k]);
    std::vector<LabelSet> members;
    for (LabelSet m : ordered.order())
      if (!(shortened && m == families[k].labels())) members.push_back(m);
    slots[k] = SpectraEntry{families[k], members, family_spectrum(system, families[k], shortened)};
  });
  for (auto& s : slots) report.entries.push_back(std::move(*s));
  return report;
}

RationalSpectrum spectrum_of_combination(const KzSystem& system, const MaximalCommutingFamily& family,
                                         const std::map<LabelSet, Rational, LabelSetKeyLess>& coefficients) {
  const OrderedFamily ordered = canonical_order(family);
  std::vector<Rational> weights;
  for (LabelSet m : ordered.order()) {
    auto it = coefficients.find(m);
    weights.push_back(it == coefficients.end() ? Rational(0) : it->second);
  }
  for (const auto& [m, c] : coefficients)
    if (!family.contains(m)) throw domain_error("spectrum_of_combination: " + to_string(m) + " is not a member");
  const RationalSpectrum joint = family_spectrum(system, family);
  return joint.transform([&](const std::vector<Rational>& values) {
    Rational sum(0);
    for (std::size_t i = 0; i < values.size(); ++i) sum += weights[i] * values[i];
    return std::vector<Rational>{sum};
  });
}

std::optional<std::vector<Rational>> pseudo_singular_infinity(const KzSystem& system) {
  std::vector<Rational> mu;
  for (unsigned i = 0; i < system.n(); ++i) {
    const RationalMatrix a = system.residue_infinity(i);
    if (!is_scalar_matrix(a)) return std::nullopt;
    mu.push_back(a(0, 0));
  }
  return mu;
}

KzSystem infinity_shift(const KzSystem& system, const Rational& lambda) {
  if (system.n() < 3) throw domain_error("infinity_shift: needs n >= 3");
  return addition(addition(addition(system, 0, 1, lambda), 0, 2, lambda), 1, 2, -lambda);
}

FixedPointSystem::FixedPointSystem(KzSystem base, unsigned fixed_points, const ResidueMap& extra, Validation validation)
    : base_(std::move(base)), m_(fixed_points) {
  if (base_.n() + m_ > max_labels) throw domain_error("fixed points: too many labels");
  const Index rank = base_.rank();
  extra_.assign(static_cast<std::size_t>(base_.n()) * m_, RationalMatrix::Zero(rank, rank));
  for (const auto& [key, mat] : extra) {
    const auto [i, q] = key;
    if (i >= base_.n() || q < 1 || q > m_) throw domain_error("fixed points: invalid key (" + std::to_string(i) + "," + std::to_string(q) + ")");
    if (mat.rows() != rank || mat.cols() != rank) throw domain_error("fixed points: B matrix has wrong size");
    extra_[static_cast<std::size_t>(i) * m_ + (q - 1)] = mat;
  }
  if (validation == Validation::checked) {
    const auto violations = check_integrability(*this);
    if (!violations.empty()) throw contract_error("fixed points: integrability fails, " + violations.front().relation + " != 0");
  }
}

const RationalMatrix& FixedPointSystem::extra(unsigned i, unsigned q) const {
  if (i >= base_.n() || q < 1 || q > m_) throw domain_error("fixed points: invalid index");
  return extra_[static_cast<std::size_t>(i) * m_ + (q - 1)];
}

RationalMatrix FixedPointSystem::residue(LabelSet moving, LabelSet fixed) const {
  const unsigned n = base_.n();
  RationalMatrix sum = base_.residue(moving);
  for (unsigned q : fixed.elements()) {
    if (q < n || q >= n + m_) throw domain_error("fixed points: label " + std::to_string(q) + " is not a fixed point");
    for (unsigned i : moving.elements()) sum += extra(i, q - n + 1);
  }
  return sum;
}

KzSystem FixedPointSystem::embedded() const {
  const unsigned n = base_.n();
  ResidueMap residues = base_.residues();
  for (unsigned i = 0; i < n; ++i)
    for (unsigned q = 1; q <= m_; ++q) residues[{i, n + q - 1}] = extra(i, q);
  return KzSystem(n + m_, base_.rank(), residues, Validation::unchecked);
}

RationalMatrix fixed_point_residue(const FixedPointSystem& system, LabelSet moving, LabelSet fixed) {
  return system.residue(moving, fixed);
}

std::vector<IntegrabilityViolation> check_integrability(const FixedPointSystem& system) {
  std::vector<IntegrabilityViolation> out;
  const unsigned n = system.base().n();
  const unsigned m = system.fixed_points();
  auto a = [&](unsigned i, unsigned j) { return system.base().residue(i, j); };
  auto aq = [&](LabelSet moving, unsigned q) { return system.residue(moving, LabelSet::singleton(q)); };
  auto name = [](LabelSet moving, unsigned q) { return "A_{" + to_string(moving) + ";" + std::to_string(q) + "}"; };
  auto check = [&](const RationalMatrix& x, const RationalMatrix& y, std::string relation, std::vector<unsigned> labels) {
    if (!is_zero(commutator(x, y))) out.push_back({std::move(relation), std::move(labels)});
  };

  for (const auto& v : check_integrability(system.base())) out.push_back(v);
  for (unsigned q = n; q < n + m; ++q) {
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) {
        if (j == i) continue;
        const LabelSet ij{i, j};
        if (i < j) {
          check(a(i, j), aq(ij, q), "[" + pair_name(i, j) + "," + name(ij, q) + "]", {i, j, q});
          for (unsigned k = 0; k < n; ++k)
            if (k != i && k != j)
              check(a(i, j), aq(LabelSet{k}, q), "[" + pair_name(i, j) + "," + name(LabelSet{k}, q) + "]", {i, j, k, q});
        }
        check(aq(LabelSet{i}, q), aq(ij, q), "[" + name(LabelSet{i}, q) + "," + name(ij, q) + "]", {i, j, q});
        for (unsigned r = n; r < n + m; ++r)
          if (r != q)
            check(aq(LabelSet{i}, q), aq(LabelSet{j}, r),
                  "[" + name(LabelSet{i}, q) + "," + name(LabelSet{j}, r) + "]", {i, j, q, r});
      }
    }
  }
  return out;
}

}  // namespace kzmc
