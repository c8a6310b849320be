#include "kzmc/linalg.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <set>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/miller_rabin.hpp>

namespace kzmc {

template Echelon<Rational> detail::reduced_row_echelon<Rational>(RationalMatrix);
template RationalMatrix detail::inverse<Rational>(const RationalMatrix&);
template Rational detail::determinant<Rational>(RationalMatrix);
template Polynomial<Rational> detail::characteristic_polynomial<Rational>(RationalMatrix);
template class Subspace<Rational>;
template class JointSpectrum<Rational>;

namespace {

using Poly = Polynomial<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational evaluate(const Poly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

// a = q*b + r, b nonzero.
std::pair<Poly, Poly> divide(Poly a, const Poly& b) {
  trim(a);
  if (a.size() < b.size()) return {Poly{}, a};
  Poly q(a.size() - b.size() + 1, Rational(0));
  const Rational lead = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational c = a[k + b.size() - 1] / lead;
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// Synthetic division by (x - r); returns the quotient if r is a root.
bool deflate(Poly& p, const Rational& r) {
  if (evaluate(p, r) != 0) return false;
  Poly q(p.size() - 1, Rational(0));
  Rational carry(0);
  for (std::size_t k = p.size() - 1; k-- > 0;) {
    carry = p[k + 1] + carry * r;
    q[k] = carry;
  }
  p = std::move(q);
  return true;
}

// Primitive integer multiple of p.
std::vector<BigInt> integer_form(const Poly& p) {
  BigInt l(1);
  for (const auto& c : p) l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(c)));
  std::vector<BigInt> out;
  BigInt g(0);
  for (const auto& c : p) {
    BigInt v = BigInt(boost::multiprecision::numerator(c)) * (l / BigInt(boost::multiprecision::denominator(c)));
    g = boost::multiprecision::gcd(g, v);
    out.push_back(v);
  }
  if (g != 0)
    for (auto& v : out) v /= g;
  return out;
}

std::vector<BigInt> positive_divisors(BigInt n) {
  if (n < 0) n = -n;
  std::vector<std::pair<BigInt, unsigned>> factors;
  auto take = [&](const BigInt& p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) factors.emplace_back(p, e);
  };
  take(BigInt(2));
  const BigInt bound(1u << 20);
  BigInt p(3);
  for (; p <= bound && p * p <= n; p += 2) take(p);
  if (n > 1) {
    if (p * p <= n && !boost::multiprecision::miller_rabin_test(n, 25))
      throw contract_error("rational_roots: integer too large to factor");
    factors.emplace_back(n, 1);
  }
  std::vector<BigInt> divisors{BigInt(1)};
  for (const auto& [prime, e] : factors) {
    const std::size_t base = divisors.size();
    BigInt power(1);
    for (unsigned k = 1; k <= e; ++k) {
      power *= prime;
      for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * power);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

// Continued-fraction convergents of x with bounded denominators.
std::vector<Rational> convergents(double x) {
  std::vector<Rational> out;
  if (!std::isfinite(x)) return out;
  BigInt h0(0), h1(1), k0(1), k1(0);
  double rest = x;
  for (int step = 0; step < 40; ++step) {
    const double a = std::floor(rest);
    if (std::fabs(a) > 1e15) break;
    const BigInt ai(static_cast<long long>(a));
    const BigInt h2 = ai * h1 + h0;
    const BigInt k2 = ai * k1 + k0;
    out.emplace_back(h2, k2);
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = rest - a;
    if (frac < 1e-14 || k2 > BigInt(1000000000000LL)) break;
    rest = 1.0 / frac;
  }
  return out;
}

// Estimates of the real roots of a squarefree polynomial, as candidates.
std::vector<Rational> numeric_candidates(const Poly& s) {
  const Poly m = monic(s);
  const std::size_t d = m.size() - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < d; ++i) companion(i, d - 1) = -m[i].convert_to<double>();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<Rational> out;
  if (solver.info() != Eigen::Success) return out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const std::complex<double> z = solver.eigenvalues()[i];
    if (std::fabs(z.imag()) > 1e-6 * (1.0 + std::fabs(z.real()))) continue;
    for (auto& c : convergents(z.real())) out.push_back(std::move(c));
  }
  return out;
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return false;
  root = Rational(rn, rd);
  return true;
}

// Distinct rational roots of a squarefree polynomial.
std::vector<Rational> distinct_roots(Poly s) {
  std::vector<Rational> roots;
  auto try_root = [&](const Rational& r) {
    if (s.size() > 1 && deflate(s, r)) roots.push_back(r);
  };
  for (const auto& c : numeric_candidates(s)) try_root(c);

  constexpr std::size_t candidate_cap = 400000;
  while (s.size() > 3) {
    const auto ints = integer_form(s);
    const auto num_div = positive_divisors(ints.front());
    const auto den_div = positive_divisors(ints.back());
    if (num_div.size() * den_div.size() > candidate_cap) break;
    bool found = false;
    for (const auto& b : den_div) {
      for (const auto& a : num_div) {
        if (boost::multiprecision::gcd(a, b) != 1) continue;
        for (int sign : {1, -1}) {
          const Rational r(BigInt(a * sign), b);
          if (deflate(s, r)) {
            roots.push_back(r);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  if (s.size() == 2) {
    roots.push_back(-s[0] / s[1]);
  } else if (s.size() == 3) {
    const Rational disc = s[1] * s[1] - 4 * s[2] * s[0];
    Rational root;
    if (exact_sqrt(disc, root)) {
      roots.push_back((-s[1] + root) / (2 * s[2]));
      roots.push_back((-s[1] - root) / (2 * s[2]));
    }
  }
  return roots;
}

void split(std::vector<RationalMatrix> mats, std::vector<Rational>& prefix, RationalSpectrum& out) {
  const Index dim = mats.front().rows();
  if (dim == 0) return;
  const RationalMatrix a = mats.front();
  mats.erase(mats.begin());
  const auto roots = rational_roots(char_poly(a));
  if (static_cast<Index>(roots.size()) != dim)
    throw irrational_spectrum_error("joint_spectrum: characteristic polynomial does not split over Q");

  std::vector<std::pair<Rational, unsigned>> distinct;
  for (const auto& r : roots) {
    if (!distinct.empty() && distinct.back().first == r)
      ++distinct.back().second;
    else
      distinct.emplace_back(r, 1);
  }

  for (const auto& [lambda, mult] : distinct) {
    prefix.push_back(lambda);
    if (distinct.size() == 1) {
      if (mats.empty())
        out.add(prefix, mult);
      else
        split(mats, prefix, out);
    } else if (mats.empty()) {
      out.add(prefix, mult);
    } else {
      const RationalMatrix shifted = a - lambda * RationalMatrix::Identity(dim, dim);
      const auto space = kernel_basis(matrix_power(shifted, mult));
      if (space.dimension() != static_cast<Index>(mult))
        throw theorem_violation("joint_spectrum: generalized eigenspace has wrong dimension");
      std::vector<RationalMatrix> restricted;
      restricted.reserve(mats.size());
      for (const auto& m : mats) restricted.push_back(restriction(m, space));
      split(std::move(restricted), prefix, out);
    }
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Rational> rational_roots(const Polynomial<Rational>& input) {
  Poly p = input;
  trim(p);
  if (p.size() <= 1) return {};
  std::vector<Rational> roots;
  std::size_t zeros = 0;
  while (p.size() > 1 && p.front() == 0) {
    p.erase(p.begin());
    ++zeros;
  }
  roots.insert(roots.end(), zeros, Rational(0));
  if (p.size() > 1) {
    const Poly g = gcd(p, derivative(p));
    const Poly squarefree = monic(divide(p, g).first);
    for (const auto& r : distinct_roots(squarefree)) {
      while (p.size() > 1 && deflate(p, r)) roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

RationalSpectrum joint_spectrum(const std::vector<RationalMatrix>& matrices) {
  if (matrices.empty()) throw domain_error("joint_spectrum: empty matrix list");
  const Index dim = matrices.front().rows();
  for (const auto& m : matrices)
    if (m.rows() != dim || m.cols() != dim) throw domain_error("joint_spectrum: matrices must be square of equal size");
  for (std::size_t i = 0; i < matrices.size(); ++i)
    for (std::size_t j = i + 1; j < matrices.size(); ++j)
      if (matrices[i] * matrices[j] != matrices[j] * matrices[i])
        throw contract_error("joint_spectrum: matrices " + std::to_string(i) + " and " + std::to_string(j) +
                             " do not commute");
  RationalSpectrum out(matrices.size());
  std::vector<Rational> prefix;
  split(matrices, prefix, out);
  return out;
}

RationalSpectrum joint_spectrum(const std::vector<RationalMatrix>& matrices, const Subspace<Rational>& on) {
  std::vector<RationalMatrix> restricted;
  restricted.reserve(matrices.size());
  for (const auto& m : matrices) restricted.push_back(restriction(m, on));
  if (on.is_zero()) return RationalSpectrum(matrices.size());
  return joint_spectrum(restricted);
}

std::string to_string(const RationalSpectrum& spectrum) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : spectrum.entries()) {
    if (!first) out += ",";
    first = false;
    out += "[";
    for (std::size_t i = 0; i < e.values.size(); ++i) {
      if (i > 0) out += ":";
      out += to_string(e.values[i]);
    }
    out += "]_" + std::to_string(e.multiplicity);
  }
  return out + "}";
}

}  // namespace kzmc
