#include "vmlat/linsolve.hpp"

#include <algorithm>
#include <cmath>

namespace vmlat {

namespace {

// r -= f * p, both sorted by column. p's pivot column is expected to cancel.
SparseRow subtract_scaled(const SparseRow& r, const Scalar& f, const SparseRow& p) {
  SparseRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -(f * p[j].second));
      ++j;
    } else {
      Scalar v = r[i].second - f * p[j].second;
      if (!v.is_zero()) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

KernelSolver::KernelSolver(long ncols, Mode mode) : ncols_(ncols), mode_(mode) {
  if (ncols <= 0) throw Error(ErrorKind::input, "solver needs at least one column");
}

bool KernelSolver::negligible(const Scalar& s) const {
  if (mode_ == Mode::exact) return s.is_zero();
  return s.abs() <= tolerance() * scale_;
}

SparseRow KernelSolver::reduce(SparseRow row) const {
  // Pivot rows are fully reduced, so a subtraction introduces entries only
  // at non-pivot columns; but it can also cancel entries the scan already
  // passed, shifting the array. Track progress by column, not by index:
  // every entry at a column <= done stays verified non-pivot.
  SparseRow cur = std::move(row);
  long done = -1;
  while (true) {
    auto it = std::upper_bound(cur.begin(), cur.end(), done,
                               [](long c, const auto& t) { return c < t.first; });
    bool subtracted = false;
    for (; it != cur.end(); ++it) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        done = it->first;
        continue;
      }
      long col = it->first;
      Scalar f = it->second;
      cur = subtract_scaled(cur, f, p->second);
      done = col;
      subtracted = true;
      break;
    }
    if (!subtracted) return cur;
  }
}

bool KernelSolver::in_row_space(SparseRow row) const {
  double row_scale = scale_;
  if (mode_ == Mode::approx)
    for (const auto& [c, v] : row) row_scale = std::max(row_scale, v.abs());
  SparseRow rem = reduce(std::move(row));
  for (const auto& [c, v] : rem) {
    if (mode_ == Mode::exact ? !v.is_zero() : v.abs() > tolerance() * row_scale) return false;
  }
  return true;
}

void KernelSolver::add_row(SparseRow row) {
  for (const auto& [c, v] : row) {
    if (c < 0 || c >= ncols_) throw Error(ErrorKind::input, "row column out of range");
    if (v.mode() != mode_) throw Error(ErrorKind::mode_mismatch, "row mode differs from solver mode");
    if (mode_ == Mode::approx) scale_ = std::max(scale_, v.abs());
  }
  SparseRow cur = reduce(std::move(row));
  // drop negligible coefficients, find the pivot (max magnitude, first on ties)
  SparseRow cleaned;
  cleaned.reserve(cur.size());
  long pivot_at = -1;
  for (auto& [c, v] : cur) {
    if (negligible(v)) continue;
    if (pivot_at == -1 || cleaned[pivot_at].second.magnitude_less(v))
      pivot_at = static_cast<long>(cleaned.size());
    cleaned.emplace_back(c, std::move(v));
  }
  if (pivot_at == -1) return;
  const long pcol = cleaned[pivot_at].first;
  Scalar pval = cleaned[pivot_at].second;
  if (mode_ == Mode::approx) scale_ = std::max(scale_, pval.abs());
  for (auto& [c, v] : cleaned) v = v / pval;
  cleaned[pivot_at].second = Scalar::one(mode_);

  // back-substitution keeps the basis fully reduced
  for (auto& [col, prow] : pivots_) {
    auto hit = std::lower_bound(prow.begin(), prow.end(), pcol,
                                [](const auto& t, long c) { return t.first < c; });
    if (hit == prow.end() || hit->first != pcol) continue;
    Scalar f = hit->second;
    prow = subtract_scaled(prow, f, cleaned);
  }
  pivots_.emplace(pcol, std::move(cleaned));
}

std::vector<std::vector<Scalar>> KernelSolver::kernel_basis() const {
  std::vector<std::vector<Scalar>> basis;
  for (long f = 0; f < ncols_; ++f) {
    if (pivots_.count(f)) continue;
    std::vector<Scalar> x(ncols_, Scalar::zero(mode_));
    x[f] = Scalar::one(mode_);
    for (const auto& [pcol, prow] : pivots_) {
      auto hit = std::lower_bound(prow.begin(), prow.end(), f,
                                  [](const auto& t, long c) { return t.first < c; });
      if (hit != prow.end() && hit->first == f) x[pcol] = -hit->second;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

bool SpanBasis::add(SparseRow row) {
  long before = ks_.rank();
  ks_.add_row(std::move(row));
  return ks_.rank() > before;
}

SparseRow sparse_from_dense(const std::vector<Scalar>& dense) {
  SparseRow r;
  for (std::size_t c = 0; c < dense.size(); ++c)
    if (!dense[c].is_zero()) r.emplace_back(static_cast<long>(c), dense[c]);
  return r;
}

}  // namespace vmlat
