#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "kzmc/kz_system.hpp"
#include "kzmc/rational.hpp"

namespace test {

using kzmc::Rational;
using kzmc::RationalMatrix;

inline Rational q(const std::string& text) { return kzmc::parse_rational(text); }

inline RationalMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
  RationalMatrix m(static_cast<kzmc::Index>(rows.size()), static_cast<kzmc::Index>(rows.begin()->size()));
  kzmc::Index r = 0;
  for (const auto& row : rows) {
    kzmc::Index c = 0;
    for (long long v : row) m(r, c++) = Rational(v);
    ++r;
  }
  return m;
}

// Scalar system from {"01": "1/2", ...}; absent pairs are zero.
inline kzmc::KzSystem scalars(unsigned n, const std::map<std::string, std::string>& values) {
  std::map<std::pair<unsigned, unsigned>, Rational> m;
  for (const auto& [k, v] : values) m[{static_cast<unsigned>(k[0] - '0'), static_cast<unsigned>(k[1] - '0')}] = q(v);
  return kzmc::KzSystem::rank_one(n, m);
}

inline kzmc::RationalSpectrum spectrum(std::initializer_list<std::pair<std::vector<std::string>, std::size_t>> entries) {
  kzmc::RationalSpectrum s;
  for (const auto& [values, mult] : entries) {
    std::vector<Rational> tuple;
    for (const auto& v : values) tuple.push_back(q(v));
    s.add(tuple, mult);
  }
  return s;
}

}  // namespace test
