#pragma once

#include <map>
#include <utility>
#include <vector>

#include "vmlat/scalar.hpp"

namespace vmlat {

/// One equation row: (column, coefficient) pairs sorted by column.
using SparseRow = std::vector<std::pair<long, Scalar>>;

/// Incremental reduced-echelon elimination over Gaussian rationals or
/// complex doubles. Rows are processed in the order they arrive; a new row
/// is reduced against the current pivots and, if nonzero, pivots on its
/// largest-magnitude entry (first such column on ties). This fixed rule
/// makes the resulting kernel basis deterministic.
///
/// In approx mode a reduced row counts as zero when every coefficient is
/// at most tau * scale, where scale tracks the largest entry and pivot
/// magnitudes seen so far.
class KernelSolver {
 public:
  KernelSolver(long ncols, Mode mode);

  void add_row(SparseRow row);
  long rank() const { return static_cast<long>(pivots_.size()); }
  long ncols() const { return ncols_; }
  Mode mode() const { return mode_; }

  /// Basis of {x : Rx = 0 for every added row}: one vector per free column,
  /// in ascending column order, with a 1 in the free slot.
  std::vector<std::vector<Scalar>> kernel_basis() const;

  /// Reduces a row against the current pivots without adding it; returns
  /// the remainder. Empty remainder means the row lies in the row space.
  SparseRow reduce(SparseRow row) const;
  bool in_row_space(SparseRow row) const;

 private:
  bool negligible(const Scalar& s) const;
  long ncols_;
  Mode mode_;
  std::map<long, SparseRow> pivots_;  // pivot column -> normalized reduced row
  double scale_ = 1.0;
};

/// Row-space span of a family of vectors, used for membership tests,
/// linear-independence checks and dimension counts.
class SpanBasis {
 public:
  SpanBasis(long ncols, Mode mode) : ks_(ncols, mode) {}

  /// Returns true when the vector enlarged the span.
  bool add(SparseRow row);
  bool contains(SparseRow row) const { return ks_.in_row_space(std::move(row)); }
  SparseRow reduce(SparseRow row) const { return ks_.reduce(std::move(row)); }
  long rank() const { return ks_.rank(); }

 private:
  KernelSolver ks_;
};

SparseRow sparse_from_dense(const std::vector<Scalar>& dense);

}  // namespace vmlat
