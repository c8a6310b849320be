#include "kzmc/generate.hpp"

#include "kzmc/midconv.hpp"

namespace kzmc {

long long SeededRng::integer(long long lo, long long hi) {
  if (hi < lo) throw domain_error("rng: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(engine_() % span);
}

bool SeededRng::chance(unsigned numerator, unsigned denominator) {
  return engine_() % denominator < numerator;
}

Rational SeededRng::rational(long long max_numerator, long long max_denominator) {
  const long long p = integer(-max_numerator, max_numerator);
  const long long q = integer(1, max_denominator);
  return Rational(p) / Rational(q);
}

Rational SeededRng::nonzero_rational(long long max_numerator, long long max_denominator) {
  Rational r;
  do {
    r = rational(max_numerator, max_denominator);
  } while (r == 0);
  return r;
}

namespace {

GeneratedSystem rank_one(unsigned n, SeededRng& rng) {
  std::map<std::pair<unsigned, unsigned>, Rational> values;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j)
      values[{i, j}] = (i == 0 && rng.chance(1, 6)) ? Rational(0) : rng.rational();
  GeneratedSystem out{KzSystem::rank_one(n, values), {}};
  std::string line = "rank-one";
  for (const auto& [key, v] : values)
    line += " " + std::to_string(key.first) + std::to_string(key.second) + "=" + to_string(v);
  out.history.push_back(line);
  return out;
}

Rational choose_mu(const KzSystem& system, SeededRng& rng) {
  if (rng.chance(1, 2)) {
    try {
      const auto spectrum = joint_spectrum(std::vector<RationalMatrix>{system.residue_infinity(0)});
      std::vector<Rational> candidates;
      for (const auto& e : spectrum.entries())
        if (e.values[0] != 0) candidates.push_back(e.values[0]);
      if (!candidates.empty())
        return candidates[static_cast<std::size_t>(rng.integer(0, static_cast<long long>(candidates.size()) - 1))];
    } catch (const irrational_spectrum_error&) {
    }
  }
  return rng.nonzero_rational();
}

}  // namespace

GeneratedSystem generate_rank_one(unsigned n, std::uint64_t seed) {
  if (n < 2) throw domain_error("generate: n must be at least 2");
  SeededRng rng(seed);
  return rank_one(n, rng);
}

GeneratedSystem generate_tower(unsigned n, unsigned steps, std::uint64_t seed, Index max_rank) {
  if (n < 2) throw domain_error("generate: n must be at least 2");
  SeededRng rng(seed);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    GeneratedSystem current = rank_one(n, rng);
    bool accepted = true;
    for (unsigned step = 0; step < steps && accepted; ++step) {
      if (step > 0)
        for (unsigned i = 0; i < n; ++i)
          for (unsigned j = i + 1; j < n; ++j)
            if (rng.chance(1, i == 0 ? 6 : 3)) {
              const Rational lambda = rng.nonzero_rational();
              current.system = addition(current.system, i, j, lambda);
              current.history.push_back("add " + std::to_string(i) + std::to_string(j) + " " + to_string(lambda));
            }
      const Rational mu = choose_mu(current.system, rng);
      const ConvolvedSystem conv = convolve(current.system, mu);
      const KernelData kd = kernels(conv);
      const Index rank = conv.dimension() - kd.total.dimension();
      if (rank < 1 || rank > max_rank) {
        accepted = false;
        break;
      }
      current.system = middle_convolution(conv, kd);
      current.history.push_back("mc " + to_string(mu));
    }
    if (accepted) return current;
  }
  throw contract_error("generate: no tower within the rank bound after 2000 attempts");
}

}  // namespace kzmc
