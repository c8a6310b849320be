#include <doctest.h>

#include <algorithm>

#include "kzmc/generate.hpp"
#include "kzmc/kz_system.hpp"
#include "support.hpp"

using namespace kzmc;
using test::mat;
using test::q;

namespace {

std::vector<LabelSet> all_subsets(unsigned n) {
  std::vector<LabelSet> out;
  for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) out.emplace_back(bits);
  return out;
}

// First tower from `seed` on with rank at least 2.
KzSystem higher_rank(unsigned n, std::uint64_t seed) {
  for (;; ++seed) {
    auto g = generate_tower(n, 1, seed);
    if (g.system.rank() >= 2) return g.system;
  }
}

RationalSpectrum eigenvalues(const RationalMatrix& m) {
  RationalSpectrum s;
  for (const Rational& r : rational_roots(char_poly(m))) s.add({r});
  return s;
}

}  // namespace

TEST_CASE("generalized residues") {
  const auto g = generate_tower(4, 1, 7);
  const KzSystem& a = g.system;
  const Index r = a.rank();
  CHECK(is_zero(a.residue(LabelSet{2})));
  CHECK(is_zero(a.residue(LabelSet{})));
  CHECK(a.residue(LabelSet{0, 1, 2}) == a.residue(0, 1) + a.residue(0, 2) + a.residue(1, 2));
  CHECK(a.residue(2, 1) == a.residue(1, 2));
  RationalMatrix sum = RationalMatrix::Zero(r, r);
  for (unsigned i = 0; i < 4; ++i) sum += a.residue_infinity(i);
  CHECK(sum == -2 * a.residue(LabelSet::range(4)));
  CHECK(a.residue(ExtendedLabelSet{LabelSet{1}, true}) == a.residue_infinity(1));
}

TEST_CASE("integrability") {
  CHECK(check_integrability(test::scalars(4, {{"01", "1/2"}, {"23", "-3"}})).empty());
  for (std::uint64_t seed = 1; seed <= 6; ++seed) CHECK(check_integrability(generate_tower(4, 2, seed).system).empty());

  // A_{01} and A_{23} must commute.
  ResidueMap bad{{{0, 1}, mat({{1, 1}, {0, 0}})}, {{2, 3}, mat({{0, 0}, {1, 0}})}};
  const KzSystem unchecked(4, 2, bad, Validation::unchecked);
  const auto v = check_integrability(unchecked);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().labels == std::vector<unsigned>{0, 1, 2, 3});
  CHECK_THROWS_AS(KzSystem(4, 2, bad), contract_error);

  // Perturbing one entry of an integrable system breaks a triple relation.
  const KzSystem g = higher_rank(3, 4);
  ResidueMap res = g.residues();
  res[{0, 1}](0, 1) += 1;
  const auto w = check_integrability(KzSystem(3, g.rank(), res, Validation::unchecked));
  REQUIRE_FALSE(w.empty());
  CHECK(w.front().labels.size() == 3);
}

TEST_CASE("residues over nested or disjoint sets commute") {
  for (std::uint64_t seed = 10; seed < 13; ++seed) {
    const KzSystem a = generate_tower(4, 2, seed).system;
    const auto subsets = all_subsets(4);
    const RationalMatrix full = a.residue(LabelSet::range(4));
    for (LabelSet x : subsets) {
      CHECK(is_zero(commutator(full, a.residue(x))));
      for (LabelSet y : subsets)
        if (x.disjoint(y) || x.includes(y)) CHECK(is_zero(commutator(a.residue(x), a.residue(y))));
      // A_I - A_{complement in L~} = A_{L_n}
      const ExtendedLabelSet complement{LabelSet::range(4) - x, true};
      CHECK(a.residue(x) - a.residue(complement) == full);
    }
  }
}

TEST_CASE("kappa") {
  CHECK(kappa(test::scalars(3, {{"01", "1/2"}, {"02", "1/3"}, {"12", "-1"}})) == q("-1/6"));
  const auto g = generate_tower(4, 2, 2);
  const auto k = kappa(g.system);
  REQUIRE(k);
  const KzSystem h = addition(g.system, 1, 3, -*k);
  CHECK(kappa(h) == Rational(0));
  CHECK(is_zero(h.residue(LabelSet::range(4))));

  // Direct sum of two rank-one systems with different kappa.
  const KzSystem reducible(3, 2, {{{0, 1}, mat({{1, 0}, {0, 2}})}});
  CHECK_FALSE(kappa(reducible).has_value());
}

TEST_CASE("addition and permutation") {
  const KzSystem a = generate_tower(4, 1, 5).system;
  CHECK(addition(a, 0, 2, 0).residues() == a.residues());
  CHECK(addition(addition(a, 3, 1, q("5/2")), 1, 3, q("-5/2")).residues() == a.residues());
  const KzSystem b = addition(a, 2, 3, q("1/3"));
  CHECK(b.residue(2, 3) - a.residue(2, 3) == q("1/3") * RationalMatrix::Identity(a.rank(), a.rank()));
  CHECK(b.residue(0, 3) == a.residue(0, 3));
  CHECK(check_integrability(b).empty());

  CHECK(permute(a, {0, 1, 2, 3}).residues() == a.residues());
  const std::vector<unsigned> sigma{2, 0, 3, 1};
  const KzSystem p = permute(a, sigma);
  CHECK(check_integrability(p).empty());
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = i + 1; j < 4; ++j) CHECK(p.residue(sigma[i], sigma[j]) == a.residue(i, j));
  CHECK(permute(permute(a, {1, 0, 2, 3}), {1, 0, 2, 3}).residues() == a.residues());
  CHECK_THROWS_AS(permute(a, {0, 0, 1, 2}), domain_error);
}

TEST_CASE("spectra are equivariant under relabeling") {
  const KzSystem a = generate_tower(4, 1, 8).system;
  const std::vector<unsigned> sigma{3, 1, 0, 2};
  const KzSystem p = permute(a, sigma);
  const auto original = spectra(a);
  const auto moved = spectra(p);
  for (const auto& entry : original.entries) {
    std::vector<LabelSet> members;
    for (LabelSet m : entry.family.members()) {
      LabelSet image;
      for (unsigned x : m.elements()) image = image.with(sigma[x]);
      members.push_back(image);
    }
    const MaximalCommutingFamily image(LabelSet::range(4), members);
    // Spectra are tuples in canonical order, which relabeling changes; compare member by member.
    for (std::size_t k = 0; k < entry.members.size(); ++k) {
      LabelSet image_member;
      for (unsigned x : entry.members[k].elements()) image_member = image_member.with(sigma[x]);
      CHECK(eigenvalues(a.residue(entry.members[k])) == eigenvalues(p.residue(image_member)));
    }
    const auto& other = moved.at(image);
    CHECK(other.spectrum.dimension() == entry.spectrum.dimension());
  }
}

TEST_CASE("spectra report") {
  const KzSystem s = test::scalars(3, {{"01", "1/2"}, {"02", "1/3"}, {"12", "-5/6"}});
  const auto report = spectra(s);
  REQUIRE(report.entries.size() == 3);
  for (const auto& e : report.entries) {
    std::vector<Rational> tuple;
    for (LabelSet m : e.members) tuple.push_back(s.residue(m)(0, 0));
    RationalSpectrum expected;
    expected.add(tuple);
    CHECK(e.spectrum == expected);
    CHECK(std::count(tuple.begin(), tuple.end(), Rational(0)) >= 1);
  }
  const auto shortened = spectra(s, true);
  CHECK(shortened.entries[0].spectrum.arity() == 1);

  const KzSystem a = generate_tower(4, 2, 3).system;
  const auto full = spectra(a, false, 2);
  CHECK(full.entries.size() == 15);
  CHECK(full == spectra(a, false, 1));
  for (const auto& e : full.entries) {
    CHECK(e.spectrum.dimension() == static_cast<std::size_t>(a.rank()));
    CHECK(e.spectrum.arity() == 3);
  }
  CHECK(spectra(generate_tower(5, 1, 3).system).entries.size() == 105);
}

TEST_CASE("spectrum of a combination") {
  const KzSystem a = generate_tower(4, 2, 9).system;
  const auto family = parse_family("{0,1,2};{1,2}", 4);
  const std::map<LabelSet, Rational, LabelSetKeyLess> zero;
  CHECK(spectrum_of_combination(a, family, zero) == test::spectrum({{{"0"}, static_cast<std::size_t>(a.rank())}}));

  std::map<LabelSet, Rational, LabelSetKeyLess> coeff{{LabelSet{0, 1, 2}, 1}, {LabelSet{1, 2}, -1}};
  CHECK(spectrum_of_combination(a, family, coeff) == eigenvalues(a.residue(0, 1) + a.residue(0, 2)));

  SeededRng rng(21);
  for (const auto& f : enumerate_families(LabelSet::range(4))) {
    std::map<LabelSet, Rational, LabelSetKeyLess> c;
    RationalMatrix explicit_sum = RationalMatrix::Zero(a.rank(), a.rank());
    for (LabelSet m : f.members()) {
      c[m] = rng.rational(5, 3);
      explicit_sum += c[m] * a.residue(m);
    }
    CHECK(spectrum_of_combination(a, f, c) == eigenvalues(explicit_sum));
  }
}

TEST_CASE("pseudo-singular infinity") {
  const KzSystem s = test::scalars(3, {{"01", "1/2"}, {"02", "1/3"}, {"12", "2"}});
  const auto mu = pseudo_singular_infinity(s);
  REQUIRE(mu);
  CHECK(*mu == std::vector<Rational>{q("-5/6"), q("-5/2"), q("-7/3")});

  // The three additions move A_{0,inf} by -2 lambda and leave the others.
  const auto shifted = pseudo_singular_infinity(infinity_shift(s, q("1/4")));
  REQUIRE(shifted);
  CHECK(*shifted == std::vector<Rational>{q("-5/6") - q("1/2"), q("-5/2"), q("-7/3")});

  const KzSystem g = higher_rank(3, 4);
  if (!is_scalar_matrix(g.residue_infinity(0))) CHECK_FALSE(pseudo_singular_infinity(g).has_value());
  const KzSystem t = infinity_shift(g, 3);
  CHECK(t.residue_infinity(0) == g.residue_infinity(0) - 6 * RationalMatrix::Identity(g.rank(), g.rank()));
  CHECK(t.residue_infinity(1) == g.residue_infinity(1));
  CHECK(t.residue_infinity(2) == g.residue_infinity(2));
  CHECK(t.residue_infinity(0) - g.residue_infinity(0) != RationalMatrix::Zero(g.rank(), g.rank()));
}

TEST_CASE("fixed singular points") {
  const KzSystem base = higher_rank(3, 6);
  const Index r = base.rank();
  const RationalMatrix id = RationalMatrix::Identity(r, r);
  ResidueMap extra;
  SeededRng rng(2);
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned qq = 1; qq <= 2; ++qq) extra[{i, qq}] = rng.rational() * id;
  const FixedPointSystem fps(base, 2, extra);
  CHECK(check_integrability(fps).empty());

  CHECK(fixed_point_residue(fps, LabelSet{0, 2}, LabelSet{}) == base.residue(LabelSet{0, 2}));
  CHECK(fixed_point_residue(fps, LabelSet{1}, LabelSet{4}) == extra[{1, 2}]);
  const KzSystem emb = fps.embedded();
  for (LabelSet moving : all_subsets(3))
    for (LabelSet fixed : {LabelSet{}, LabelSet{3}, LabelSet{4}, LabelSet{3, 4}})
      CHECK(fixed_point_residue(fps, moving, fixed) == emb.residue(moving | fixed) - emb.residue(fixed));

  if (r >= 2) {
    ResidueMap wrong = extra;
    wrong[{0, 1}] = RationalMatrix::Zero(r, r);
    wrong[{0, 1}](0, r - 1) = 1;
    if (!is_zero(commutator(base.residue(1, 2), wrong[{0, 1}]))) {
      CHECK_THROWS_AS(FixedPointSystem(base, 2, wrong), contract_error);
      CHECK_FALSE(check_integrability(FixedPointSystem(base, 2, wrong, Validation::unchecked)).empty());
    }
  }
  CHECK_THROWS_AS(FixedPointSystem(base, 2, {{{0, 3}, id}}), domain_error);
}
