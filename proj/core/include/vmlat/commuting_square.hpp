#pragma once

#include <array>
#include <string>

#include "vmlat/algebra_structure.hpp"
#include "vmlat/vertex_model.hpp"

namespace vmlat {

struct SquareReport {
  bool is_commuting = false;
  double max_residual = 0.0;  // of the expectation identity, both path orders
  std::array<std::string, 4> corners;
};

/// Builds the four corners of the square attached to u inside M_m (x) M_n
/// and tests the expectation identity with respect to the normalized trace:
/// projecting onto 1 (x) L(W) and then onto u (L(V) (x) 1) u^{-1} (in either
/// order) must equal the projection onto the scalars. For unitary inputs the
/// verdict agrees with check_star.
SquareReport check_commuting_square(const VertexOperator& u);

/// Trace-orthogonal conditional expectation onto the span of a basis, in
/// the inner product <x, y> = ntrace(y* x). Exact mode stays exact (Gram
/// solving, no square roots).
Matrix conditional_expectation(const std::vector<Matrix>& basis, const Matrix& x);

struct TowerLevel {
  int i = 0;
  Matrix U;  // element of M_{m^i} (x) M_n, alternating V / V* left legs
};

/// U^1 = u, U^{i+1} = (U^i on legs 1..i, i+2) * (v on legs i+1, i+2) with
/// v = u for even i and v = uhat for odd i.
TowerLevel build_tower_U(const VertexOperator& u, int i);

/// The rank-one projection (1/d) sum_{ij} e_ij (x) e*_ij on T (x) T*.
Matrix jones_projection(long d, Mode mode);

/// Checks ad(v_13 vhat_23) e_12 = e_12 in L(T (x) T* (x) W) for v in
/// {u, uhat}.
bool check_jones_identity(const VertexOperator& u);

/// The lattice cell computed directly from the square: with A the algebra of
/// the alternating (i-j)-fold tensor of V, V* (starting per the parity of j)
/// and U the corresponding tower element over v = u (j even) or uhat (j
/// odd), returns { T in A : U^{-1} (T (x) 1) U in A (x) 1 }.
MatrixStarAlgebra relative_commutant_direct(const VertexOperator& u, int i, int j,
                                            long cap = default_entry_cap);

struct CompareCell {
  int i = 0, j = 0;
  long dim_word = 0;    // intertwiner path
  long dim_direct = 0;  // commutant path
  std::vector<std::pair<long, long>> blocks_word, blocks_direct;  // sorted (d, mult)
  bool dims_match = false;
  bool blocks_match = false;
};

struct CompareReport {
  std::vector<CompareCell> cells;
  bool all_match = true;
};

/// Runs both computation paths over every cell 0 <= j <= i <= depth and
/// compares dimensions and block multisets. A mismatch diagnoses an
/// implementation bug, not a mathematical failure.
CompareReport theorem_compare(const VertexOperator& u, int depth, long cap = default_entry_cap,
                              std::uint64_t seed = 0);

}  // namespace vmlat
