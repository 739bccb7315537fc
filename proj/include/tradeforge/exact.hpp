#pragma once
// Exact rational linear algebra for the inclusion operator: dense
// materialization of W, reduced row echelon form, the standard kernel basis
// in (C | I) presentation, and a probe that reports structural observations
// about the basis without asserting them.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "collection.hpp"
#include "combinatorics.hpp"

namespace tradeforge {

using Rational = boost::multiprecision::cpp_rational;

class ExactMatrix {
 public:
  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x == 0; });
  }

  friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("ExactMatrix: dimension mismatch");
    ExactMatrix out(x.rows_, y.cols_);
    for (std::size_t r = 0; r < x.rows_; ++r) {
      for (std::size_t m = 0; m < x.cols_; ++m) {
        const Rational& xv = x.at(r, m);
        if (xv == 0) continue;
        for (std::size_t c = 0; c < y.cols_; ++c) {
          if (y.at(m, c) != 0) out.at(r, c) += xv * y.at(m, c);
        }
      }
    }
    return out;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

/// Dense 0/1 inclusion matrix: rows are t-subsets, columns k-subsets, both
/// in lexicographic order; entry 1 iff the row subset lies in the column.
inline ExactMatrix materialize_w(int t, int k, int v, std::int64_t dense_cap_cols = 10000) {
  if (t < 0 || t > k || k > v - t) throw std::invalid_argument("materialize_w: need 0 <= t <= k <= v - t");
  const std::int64_t n_cols = binomial(v, k);
  if (n_cols > dense_cap_cols) {
    throw std::invalid_argument("materialize_w: " + std::to_string(n_cols) +
                                " columns exceed the dense cap of " + std::to_string(dense_cap_cols));
  }
  const std::int64_t n_rows = binomial(v, t);
  ExactMatrix w(static_cast<std::size_t>(n_rows), static_cast<std::size_t>(n_cols));
  for (std::int64_t c = 0; c < n_cols; ++c) {
    const Block kb = unrank_lex(c, v, k);
    for (std::int64_t r = 0; r < n_rows; ++r) {
      const Block tb = unrank_lex(r, v, t);
      if (std::includes(kb.begin(), kb.end(), tb.begin(), tb.end())) {
        w.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = 1;
      }
    }
  }
  return w;
}

struct RrefResult {
  ExactMatrix matrix;
  std::vector<std::size_t> pivot_columns;  // ascending
};

/// Gauss-Jordan elimination over the rationals, pivots chosen left to right.
inline RrefResult rref(ExactMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
    }
    const Rational inv = m.at(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) /= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      const Rational factor = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m.at(r, c) -= factor * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

/// Kernel basis of W_{t,k}(v) in the standard presentation: with columns
/// permuted to put the free columns first, the reduced system reads
/// (C | I) and the basis matrix is (I / -C)^T stacked as columns.  Row p of
/// `matrix` corresponds to the block column column_permutation[p] of W.
struct StandardBasis {
  int t = 0, k = 0, v = 0;
  std::vector<std::size_t> column_permutation;  // presented row -> lex block rank
  ExactMatrix matrix{0, 0};                     // binomial(v,k) x num basis columns
};

inline StandardBasis standard_basis(int t, int k, int v, std::int64_t dense_cap_cols = 10000) {
  const ExactMatrix w = materialize_w(t, k, v, dense_cap_cols);
  const RrefResult red = rref(w);
  if (red.pivot_columns.size() != w.rows()) {
    throw std::runtime_error("standard_basis: inclusion matrix is rank deficient");
  }
  std::vector<std::size_t> free_cols;
  free_cols.reserve(w.cols() - red.pivot_columns.size());
  {
    std::size_t next_pivot = 0;
    for (std::size_t c = 0; c < w.cols(); ++c) {
      if (next_pivot < red.pivot_columns.size() && red.pivot_columns[next_pivot] == c) {
        ++next_pivot;
      } else {
        free_cols.push_back(c);
      }
    }
  }

  StandardBasis basis;
  basis.t = t;
  basis.k = k;
  basis.v = v;
  basis.column_permutation = free_cols;
  basis.column_permutation.insert(basis.column_permutation.end(), red.pivot_columns.begin(),
                                  red.pivot_columns.end());

  const std::size_t nb = free_cols.size();
  basis.matrix = ExactMatrix(w.cols(), nb);
  for (std::size_t j = 0; j < nb; ++j) basis.matrix.at(j, j) = 1;
  for (std::size_t i = 0; i < red.pivot_columns.size(); ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      basis.matrix.at(nb + i, j) = -red.matrix.at(i, free_cols[j]);
    }
  }

  // W restricted to the presented column order times the basis must vanish.
  for (std::size_t r = 0; r < w.rows(); ++r) {
    for (std::size_t j = 0; j < nb; ++j) {
      Rational acc = 0;
      for (std::size_t p = 0; p < w.cols(); ++p) {
        const Rational& wv = w.at(r, basis.column_permutation[p]);
        if (wv != 0) acc += wv * basis.matrix.at(p, j);
      }
      if (acc != 0) throw std::logic_error("standard_basis: W * S is nonzero");
    }
  }
  return basis;
}

/// Structural observations about a kernel basis.  These are reported, never
/// asserted: the underlying questions are open and a violation would be a
/// finding, not a bug.
struct ConjectureReport {
  int t = 0, k = 0, v = 0;
  std::size_t num_basis_columns = 0;
  bool sign_constant_rows = false;        // every row keeps one sign (zeros ignored)
  std::vector<std::int64_t> violations;   // lex block ranks of rows mixing signs
  std::optional<bool> nowhere_zero_row;   // some row avoids zero entirely; probed only for t > 1
};

inline ConjectureReport probe_conjectures(const StandardBasis& basis) {
  ConjectureReport rep;
  rep.t = basis.t;
  rep.k = basis.k;
  rep.v = basis.v;
  rep.num_basis_columns = basis.matrix.cols();
  rep.sign_constant_rows = true;
  bool any_nowhere_zero = false;
  for (std::size_t p = 0; p < basis.matrix.rows(); ++p) {
    bool pos = false, neg = false, zero = false;
    for (std::size_t j = 0; j < basis.matrix.cols(); ++j) {
      const Rational& x = basis.matrix.at(p, j);
      if (x > 0) pos = true;
      else if (x < 0) neg = true;
      else zero = true;
    }
    if (pos && neg) {
      rep.sign_constant_rows = false;
      rep.violations.push_back(static_cast<std::int64_t>(basis.column_permutation[p]));
    }
    if (!zero && basis.matrix.cols() > 0) any_nowhere_zero = true;
  }
  std::sort(rep.violations.begin(), rep.violations.end());
  if (basis.t > 1) rep.nowhere_zero_row = any_nowhere_zero;
  return rep;
}

}  // namespace tradeforge
