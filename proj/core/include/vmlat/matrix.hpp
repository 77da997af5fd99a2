#pragma once

#include <optional>
#include <vector>

#include "vmlat/scalar.hpp"

namespace vmlat {

/// One tensor factor of a square matrix's index space. `dual` marks V* legs;
/// it is bookkeeping only (coordinates are taken in the dual basis, so the
/// numeric dimension is unchanged).
struct Leg {
  long dim = 0;
  bool dual = false;

  friend bool operator==(const Leg&, const Leg&) = default;
};

/// Dense row-major matrix over one arithmetic mode, with an optional tensor
/// leg signature (square matrices only; leg dims multiply to the size).
class Matrix {
 public:
  Matrix(long rows, long cols, Mode mode);

  static Matrix identity(long d, Mode mode);
  static Matrix zero(long rows, long cols, Mode mode) { return Matrix(rows, cols, mode); }

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  Mode mode() const { return mode_; }

  const Scalar& at(long r, long c) const { return a_[r * cols_ + c]; }
  void set(long r, long c, Scalar v);

  const std::vector<Leg>& legs() const { return legs_; }
  bool has_legs() const { return !legs_.empty(); }
  Matrix with_legs(std::vector<Leg> legs) const&;
  Matrix with_legs(std::vector<Leg> legs) &&;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  long rows_, cols_;
  Mode mode_;
  std::vector<Scalar> a_;
  std::vector<Leg> legs_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Scalar& s, const Matrix& a);

/// Kronecker product; leg signatures concatenate.
Matrix kron(const Matrix& a, const Matrix& b);

/// Embeds `x` so it acts on the legs named by `positions` (1-based, in x's
/// leg order) of the tensor space described by `signature`, and as the
/// identity on all other legs.
Matrix embed_on_legs(const Matrix& x, const std::vector<int>& positions,
                     const std::vector<Leg>& signature);

/// (t (x) id) for a two-leg matrix: entry ((a,x),(b,y)) of the result is
/// entry ((b,x),(a,y)) of the input; the first leg's dual flag flips.
Matrix partial_transpose_first(const Matrix& x);

/// Transposition applied to one leg of a multi-leg matrix (internal
/// generalization of partial_transpose_first; `leg` is 0-based).
Matrix partial_transpose_leg(const Matrix& x, int leg);

Matrix transpose(const Matrix& x);
Matrix conjugate(const Matrix& x);
Matrix adjoint(const Matrix& x);

struct InverseResult {
  std::optional<Matrix> inverse;
  /// Magnitude of the smallest accepted pivot, or of the best rejected
  /// candidate when singular; lets callers tell "not invertible" from
  /// "ill-conditioned" in approx mode.
  double min_pivot = 0.0;
};

/// Gauss-Jordan inverse; singularity is reported, not thrown.
InverseResult try_inverse(const Matrix& x);

/// Throwing wrapper around try_inverse.
Matrix inverse(const Matrix& x);

bool is_unitary(const Matrix& x);

Scalar trace(const Matrix& x);
/// Trace divided by the dimension (the normalized trace used by the
/// conditional expectations).
Scalar ntrace(const Matrix& x);

/// Max-norm of the entrywise difference, as a double.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Mode-aware comparison: exact equality in exact mode, max-norm within
/// tol_factor * tolerance() in approx mode.
bool matches(const Matrix& a, const Matrix& b, double tol_factor);

double max_abs(const Matrix& a);

/// Deterministic kernel basis of {x : Mx = 0}; see linsolve.hpp for the
/// elimination rules.
std::vector<std::vector<Scalar>> nullspace(const Matrix& m);

}  // namespace vmlat
