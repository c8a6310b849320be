#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kzmc/kz_system.hpp"

namespace kzmc {

inline constexpr const char* generator_version = "kzmc-gen 1";

// Deterministic across platforms: raw mt19937_64 output reduced by modulo.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  // Uniform-ish integer in [lo, hi].
  long long integer(long long lo, long long hi);
  bool chance(unsigned numerator, unsigned denominator);
  // p/q with |p| <= max_numerator, 1 <= q <= max_denominator.
  Rational rational(long long max_numerator = 9, long long max_denominator = 6);
  Rational nonzero_rational(long long max_numerator = 9, long long max_denominator = 6);

 private:
  std::mt19937_64 engine_;
};

struct GeneratedSystem {
  KzSystem system;
  std::vector<std::string> history;  // human-readable construction steps
};

// Scalar residues; each A_{0j} vanishes with probability 1/6.
GeneratedSystem generate_rank_one(unsigned n, std::uint64_t seed);

// A rank-one seed followed by `steps` rounds of random additions and a
// middle convolution in x_0. Candidates whose rank leaves 1..max_rank are
// discarded and regenerated from the same stream.
GeneratedSystem generate_tower(unsigned n, unsigned steps, std::uint64_t seed, Index max_rank = 3);

}  // namespace kzmc
