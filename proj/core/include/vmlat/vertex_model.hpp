#pragma once

#include <array>
#include <optional>
#include <vector>

#include "vmlat/matrix.hpp"

namespace vmlat {

/// Positive diagonal twist operator on the left tensor factor, stored in its
/// eigenbasis (inputs must already be expressed in that basis).
class TwistQ {
 public:
  /// Entries must be positive reals (rational in exact mode).
  explicit TwistQ(std::vector<Scalar> q);

  long size() const { return static_cast<long>(q_.size()); }
  const Scalar& at(long a) const { return q_[a]; }
  Mode mode() const { return q_.empty() ? Mode::exact : q_[0].mode(); }
  bool is_identity() const;

  /// diag(q)^power (x) I_n, as a matrix on the full space.
  Matrix expanded(int power, long n) const;

 private:
  std::vector<Scalar> q_;
};

/// An invertible element of M_m (x) M_n with tensor-leg bookkeeping.
/// Entry u^{ax}_{by} sits at row (a-1)n + x, column (b-1)n + y (1-based).
/// Derived operators (hats, bars, cables) may carry finer leg splits; the
/// coarse m/n division is tracked by the number of left legs.
class VertexOperator {
 public:
  /// Two-leg constructor; dual flags default to plain V, W.
  VertexOperator(long m, long n, Matrix mat);
  /// Multi-leg constructor: the first `left_legs` legs of mat form the V
  /// side, the rest form the W side.
  VertexOperator(int left_legs, Matrix mat);

  long m() const { return m_; }
  long n() const { return n_; }
  int left_legs() const { return left_legs_; }
  const Matrix& mat() const { return mat_; }
  const Matrix& inv() const { return inv_; }  // cached at construction
  Mode mode() const { return mat_.mode(); }

  /// (t (x) id) on the coarse two-leg view, all left legs dualized.
  Matrix coarse_transpose_first() const;
  /// (id (x) t) on the coarse two-leg view.
  Matrix coarse_transpose_second() const;

 private:
  long m_, n_;
  int left_legs_;
  Matrix mat_;
  Matrix inv_;
};

/// uhat = (t (x) id) u^{-1}, first leg dualized.
VertexOperator make_uhat(const VertexOperator& u);

/// ubar = (id (x) t) u^{-1}, second leg dualized. When u passes check_star
/// this also equals ((id (x) t) u)^{-1}.
VertexOperator make_ubar(const VertexOperator& u);

struct SingularReport {
  int index = 0;          // first k with u_k not invertible
  double pivot_magnitude = 0.0;
};

struct StarSequence {
  std::vector<VertexOperator> terms;  // u_0 .. u_k while invertible
  std::optional<SingularReport> stopped;
};

/// u_0 = u, u_{k+1} = (t (x) id) u_k^{-1}; stops at the first singular term.
StarSequence star_sequence(const VertexOperator& u, int count);

/// True iff (t (x) id) u is invertible and (t (x) id) u^{-1} equals its
/// inverse (exactly, or within 10 tau). Equivalent to u_2 = u_0.
bool check_star(const VertexOperator& u);

/// Evaluates the twisted condition both as the operator equation and in
/// coordinates; the two must agree or an internal error is raised.
/// Requires u unitary.
bool check_twisted(const VertexOperator& u, const TwistQ& q);

/// The three equivalent unitarity formulations of the twisted condition,
/// evaluated independently. Requires u unitary.
std::array<bool, 3> twisted_forms(const VertexOperator& u, const TwistQ& q);

/// u' = u_12 ((id (x) t) u^{-1})_13 in M_m (x) M_{n^2}; checked to satisfy
/// the star condition again.
VertexOperator make_uprime(const VertexOperator& u);

/// Alternating right cable u_12 ubar_13 u_14 ... (i terms) in M_m (x) M_{n^i}.
VertexOperator horizontal_cable(const VertexOperator& u, int i);
/// Alternating left cable u_{1,i+1} uhat_{2,i+1} ... (i terms) in M_{m^i} (x) M_n.
VertexOperator vertical_cable(const VertexOperator& u, int i);

/// Verifies the closed forms of the star sequence of a twisted unitary:
/// u_{2k} = (Q^{2k} (x) id) u (Q^{-2k} (x) id) and
/// u_{2k+1} = ((Q^{-2k})^t (x) id) u_1 ((Q^{2k})^t (x) id), for 1 <= k <= N.
bool twisted_sequence_check(const VertexOperator& u, const TwistQ& q, int count);

/// Searches for a non-identity positive diagonal twist making u twisted:
/// solves the linear fixed-point condition on the diagonal weights and scans
/// the kernel for a positive vector. Returns nothing when only Q = id works
/// (or none does). Fixture generator, not part of the validity gate.
std::optional<TwistQ> find_twist(const VertexOperator& u);

}  // namespace vmlat
