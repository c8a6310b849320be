#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "kzmc/errors.hpp"
#include "kzmc/rational.hpp"

namespace kzmc {

using Eigen::Index;

template <class Scalar>
struct Echelon {
  Matrix<Scalar> reduced;
  std::vector<Index> pivots;
};

// Polynomial coefficients in ascending degree order.
template <class Scalar>
using Polynomial = std::vector<Scalar>;

namespace detail {

template <class Scalar>
Echelon<Scalar> reduced_row_echelon(Matrix<Scalar> m) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) m.row(p).swap(m.row(row));
    const Index tail = m.cols() - col;
    const Scalar inv = Scalar(1) / m(row, col);
    m.row(row).tail(tail) *= inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Scalar f = m(r, col);
      m.row(r).tail(tail) -= f * m.row(row).tail(tail);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class Scalar>
Matrix<Scalar> inverse(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) throw domain_error("inverse: matrix is not square");
  const Index n = m.rows();
  Matrix<Scalar> augmented(n, 2 * n);
  augmented << m, Matrix<Scalar>::Identity(n, n);
  auto e = reduced_row_echelon<Scalar>(std::move(augmented));
  if (static_cast<Index>(e.pivots.size()) < n || (n > 0 && e.pivots[n - 1] != n - 1))
    throw contract_error("inverse: matrix is singular");
  return e.reduced.rightCols(n);
}

template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  if (m.rows() != m.cols()) throw domain_error("determinant: matrix is not square");
  Scalar det(1);
  const Index n = m.rows();
  for (Index col = 0; col < n; ++col) {
    Index p = col;
    while (p < n && m(p, col) == 0) ++p;
    if (p == n) return Scalar(0);
    if (p != col) {
      m.row(p).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Index r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Scalar f = m(r, col) / m(col, col);
      m.row(r).tail(n - col) -= f * m.row(col).tail(n - col);
    }
  }
  return det;
}

// Reduction to upper Hessenberg form by elementary similarity transforms,
// then the standard three-term style recurrence on leading principal minors.
template <class Scalar>
Polynomial<Scalar> characteristic_polynomial(Matrix<Scalar> h) {
  if (h.rows() != h.cols()) throw domain_error("char_poly: matrix is not square");
  const Index n = h.rows();
  for (Index j = 0; j + 2 < n; ++j) {
    Index i = j + 1;
    while (i < n && h(i, j) == 0) ++i;
    if (i == n) continue;
    if (i != j + 1) {
      h.row(i).swap(h.row(j + 1));
      h.col(i).swap(h.col(j + 1));
    }
    const Scalar inv = Scalar(1) / h(j + 1, j);
    for (Index k = j + 2; k < n; ++k) {
      if (h(k, j) == 0) continue;
      const Scalar t = h(k, j) * inv;
      h.row(k) -= t * h.row(j + 1);
      h.col(j + 1) += t * h.col(k);
    }
  }

  std::vector<Polynomial<Scalar>> p(n + 1);
  p[0] = {Scalar(1)};
  for (Index m = 1; m <= n; ++m) {
    Polynomial<Scalar> next(m + 1, Scalar(0));
    const auto& prev = p[m - 1];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      next[d + 1] += prev[d];
      next[d] -= h(m - 1, m - 1) * prev[d];
    }
    Scalar t(1);
    for (Index i = m - 1; i >= 1; --i) {
      t *= h(i, i - 1);
      if (t == 0) break;
      const Scalar c = h(i - 1, m - 1) * t;
      if (c == 0) continue;
      for (std::size_t d = 0; d < p[i - 1].size(); ++d) next[d] -= c * p[i - 1][d];
    }
    p[m] = std::move(next);
  }
  return p[n];
}

}  // namespace detail

template <class Derived>
Echelon<typename Derived::Scalar> reduced_row_echelon(const Eigen::MatrixBase<Derived>& m) {
  return detail::reduced_row_echelon<typename Derived::Scalar>(m.eval());
}

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Index>(reduced_row_echelon(m).pivots.size());
}

template <class Derived>
Matrix<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& m) {
  return detail::inverse<typename Derived::Scalar>(m.eval());
}

template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  return detail::determinant<typename Derived::Scalar>(m.eval());
}

// Monic characteristic polynomial det(x - A).
template <class Derived>
Polynomial<typename Derived::Scalar> char_poly(const Eigen::MatrixBase<Derived>& m) {
  return detail::characteristic_polynomial<typename Derived::Scalar>(m.eval());
}

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) return false;
  return true;
}

template <class Derived>
bool is_scalar_matrix(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j ? m(i, j) != 0 : m(i, j) != m(0, 0)) return false;
  return true;
}

template <class Scalar>
Matrix<Scalar> commutator(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  return a * b - b * a;
}

// A linear subspace held by its unique reduced echelon basis: column k has a 1
// in coordinate pivots()[k] and 0 in every other pivot coordinate.
template <class Scalar>
class Subspace {
 public:
  explicit Subspace(Index ambient = 0) : ambient_(ambient), basis_(ambient, 0) {}

  template <class Derived>
  static Subspace span(const Eigen::MatrixBase<Derived>& columns) {
    Subspace s(columns.rows());
    auto e = detail::reduced_row_echelon<Scalar>(columns.transpose().eval());
    const Index k = static_cast<Index>(e.pivots.size());
    s.basis_ = e.reduced.topRows(k).transpose();
    s.pivots_ = std::move(e.pivots);
    return s;
  }

  static Subspace full(Index ambient) {
    Subspace s(ambient);
    s.basis_ = Matrix<Scalar>::Identity(ambient, ambient);
    for (Index i = 0; i < ambient; ++i) s.pivots_.push_back(i);
    return s;
  }

  Index ambient_dimension() const { return ambient_; }
  Index dimension() const { return basis_.cols(); }
  bool is_zero() const { return basis_.cols() == 0; }
  const Matrix<Scalar>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  // Coordinates of v in basis(); meaningful only when contains(v).
  template <class Derived>
  Matrix<Scalar> coordinates(const Eigen::MatrixBase<Derived>& v) const {
    Matrix<Scalar> c(dimension(), v.cols());
    for (Index k = 0; k < dimension(); ++k) c.row(k) = v.row(pivots_[k]);
    return c;
  }

  template <class Derived>
  bool contains(const Eigen::MatrixBase<Derived>& vectors) const {
    if (vectors.rows() != ambient_) throw domain_error("subspace: dimension mismatch");
    return basis_ * coordinates(vectors) == vectors;
  }

  bool contains(const Subspace& other) const { return contains(other.basis_); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) throw domain_error("subspace sum: dimension mismatch");
    Matrix<Scalar> both(a.ambient_, a.dimension() + b.dimension());
    both << a.basis_, b.basis_;
    return span(both);
  }

 private:
  Index ambient_;
  Matrix<Scalar> basis_;
  std::vector<Index> pivots_;
};

template <class Derived>
Subspace<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const auto e = reduced_row_echelon(a);
  const Index cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (Index p : e.pivots) is_pivot[p] = true;
  Matrix<Scalar> vectors = Matrix<Scalar>::Zero(cols, cols - static_cast<Index>(e.pivots.size()));
  Index k = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    vectors(f, k) = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) vectors(e.pivots[r], k) = -e.reduced(r, f);
    ++k;
  }
  return Subspace<Scalar>::span(vectors);
}

// [basis of S | e_i for every non-pivot coordinate i, ascending].
template <class Scalar>
Matrix<Scalar> complete_basis(const Subspace<Scalar>& s) {
  const Index d = s.ambient_dimension();
  Matrix<Scalar> p = Matrix<Scalar>::Zero(d, d);
  p.leftCols(s.dimension()) = s.basis();
  std::vector<bool> is_pivot(d, false);
  for (Index i : s.pivots()) is_pivot[i] = true;
  Index col = s.dimension();
  for (Index i = 0; i < d; ++i)
    if (!is_pivot[i]) p(i, col++) = Scalar(1);
  return p;
}

// Matrix of A|_S in the echelon basis of S.
template <class Derived>
Matrix<typename Derived::Scalar> restriction(const Eigen::MatrixBase<Derived>& a,
                                             const Subspace<typename Derived::Scalar>& s) {
  if (a.rows() != a.cols() || a.cols() != s.ambient_dimension())
    throw domain_error("restriction: dimension mismatch");
  const Matrix<typename Derived::Scalar> image = a * s.basis();
  auto r = s.coordinates(image);
  if (s.basis() * r != image) throw invariance_error("restriction: subspace is not invariant");
  return r;
}

// Matrix of the induced map on V/S, in the basis of standard vectors e_c for
// the non-pivot coordinates c of S (the trailing columns of complete_basis).
// Equals the lower-right block of P^-1 A P with P = complete_basis(S).
template <class Derived>
Matrix<typename Derived::Scalar> quotient(const Eigen::MatrixBase<Derived>& a,
                                          const Subspace<typename Derived::Scalar>& s) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> m = a;
  restriction(m, s);
  const Index d = s.ambient_dimension();
  std::vector<bool> is_pivot(d, false);
  for (Index i : s.pivots()) is_pivot[i] = true;
  std::vector<Index> free;
  for (Index i = 0; i < d; ++i)
    if (!is_pivot[i]) free.push_back(i);
  const Index q = static_cast<Index>(free.size());
  Matrix<Scalar> cols(d, q);
  for (Index c = 0; c < q; ++c) cols.col(c) = m.col(free[c]);
  const Matrix<Scalar> reduced = cols - s.basis() * s.coordinates(cols);
  Matrix<Scalar> out(q, q);
  for (Index r = 0; r < q; ++r) out.row(r) = reduced.row(free[r]);
  return out;
}

template <class Scalar>
Matrix<Scalar> matrix_power(Matrix<Scalar> base, unsigned exponent) {
  Matrix<Scalar> result = Matrix<Scalar>::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

// Multiset of (tuple, multiplicity), kept sorted by tuple.
template <class Scalar>
class JointSpectrum {
 public:
  using Tuple = std::vector<Scalar>;
  struct Entry {
    Tuple values;
    std::size_t multiplicity;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  JointSpectrum() = default;
  explicit JointSpectrum(std::size_t arity) : arity_(arity) {}

  std::size_t arity() const { return arity_; }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  std::size_t dimension() const {
    std::size_t total = 0;
    for (const auto& e : entries_) total += e.multiplicity;
    return total;
  }

  void add(Tuple values, std::size_t multiplicity = 1) {
    if (multiplicity == 0) return;
    if (entries_.empty() && arity_ == 0) arity_ = values.size();
    if (values.size() != arity_) throw domain_error("joint spectrum: arity mismatch");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), values,
                               [](const Entry& e, const Tuple& v) { return e.values < v; });
    if (it != entries_.end() && it->values == values)
      it->multiplicity += multiplicity;
    else
      entries_.insert(it, Entry{std::move(values), multiplicity});
  }

  // Multiplicity of a tuple (0 if absent).
  std::size_t count(const Tuple& values) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), values,
                               [](const Entry& e, const Tuple& v) { return e.values < v; });
    return it != entries_.end() && it->values == values ? it->multiplicity : 0;
  }

  JointSpectrum& operator+=(const JointSpectrum& other) {
    for (const auto& e : other.entries_) add(e.values, e.multiplicity);
    return *this;
  }

  friend JointSpectrum operator+(JointSpectrum a, const JointSpectrum& b) { return a += b; }

  // Multiset difference; returns false and leaves *this untouched if some
  // tuple of `other` is missing or has too small a multiplicity here.
  bool try_subtract(const JointSpectrum& other) {
    for (const auto& e : other.entries_)
      if (count(e.values) < e.multiplicity) return false;
    for (const auto& e : other.entries_) {
      auto it = std::lower_bound(entries_.begin(), entries_.end(), e.values,
                                 [](const Entry& x, const Tuple& v) { return x.values < v; });
      it->multiplicity -= e.multiplicity;
      if (it->multiplicity == 0) entries_.erase(it);
    }
    return true;
  }

  // [.]_p : every multiplicity multiplied by p.
  JointSpectrum repeated(std::size_t p) const {
    JointSpectrum out(arity_);
    if (p == 0) return out;
    out.entries_ = entries_;
    for (auto& e : out.entries_) e.multiplicity *= p;
    return out;
  }

  template <class F>
  JointSpectrum transform(F&& f) const {
    JointSpectrum out;
    for (const auto& e : entries_) out.add(f(e.values), e.multiplicity);
    return out;
  }

  friend bool operator==(const JointSpectrum& a, const JointSpectrum& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::size_t arity_ = 0;
  std::vector<Entry> entries_;
};

using RationalSpectrum = JointSpectrum<Rational>;

// Roots in ascending order, each repeated by its multiplicity. Only rational
// roots are returned; the caller compares the count with the degree.
std::vector<Rational> rational_roots(const Polynomial<Rational>& p);

// Joint generalized spectrum of pairwise commuting square matrices.
// Throws contract_error for non-commuting input and irrational_spectrum_error
// when a characteristic polynomial does not split over Q.
RationalSpectrum joint_spectrum(const std::vector<RationalMatrix>& matrices);

// Joint spectrum of the restrictions to an invariant subspace.
RationalSpectrum joint_spectrum(const std::vector<RationalMatrix>& matrices,
                                const Subspace<Rational>& on);

// "{[0:1]_1,[0:2]_2}"
std::string to_string(const RationalSpectrum& spectrum);

extern template Echelon<Rational> detail::reduced_row_echelon<Rational>(RationalMatrix);
extern template RationalMatrix detail::inverse<Rational>(const RationalMatrix&);
extern template Rational detail::determinant<Rational>(RationalMatrix);
extern template Polynomial<Rational> detail::characteristic_polynomial<Rational>(RationalMatrix);
extern template class Subspace<Rational>;
extern template class JointSpectrum<Rational>;

}  // namespace kzmc
