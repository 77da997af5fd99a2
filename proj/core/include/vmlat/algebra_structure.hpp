#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vmlat/intertwiner.hpp"
#include "vmlat/matrix.hpp"

namespace vmlat {

/// A unital, product- and adjoint-closed subspace of M_D given by a linearly
/// independent basis. Unit membership, independence and adjoint closure are
/// always verified; product closure is verified fully when the pair count is
/// small and on a fixed random sample otherwise (construction-time guard,
/// not a proof — the full closure property is exercised by the test suite).
class MatrixStarAlgebra {
 public:
  MatrixStarAlgebra(long ambient_dim, std::vector<Matrix> basis);

  long ambient() const { return ambient_; }
  long dim() const { return static_cast<long>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }
  Mode mode() const { return basis_[0].mode(); }

  bool contains(const Matrix& x) const;
  const SpanBasis& span() const { return span_; }

 private:
  long ambient_;
  std::vector<Matrix> basis_;
  SpanBasis span_;
};

struct Block {
  long d = 0;     // simple dimension
  long mult = 0;  // multiplicity in the ambient space
  Matrix p;       // minimal central projection
};

struct SemisimpleDecomposition {
  std::vector<Block> blocks;  // sorted by (d, mult), eigenvalue order on ties
  bool approx_fallback = false;  // exact input split numerically
  std::string warning;
  std::vector<std::pair<long, long>> block_multiset() const;
};

/// Splits a *-closed algebra into its simple blocks: computes the center
/// (commutant equations intersected with the algebra), splits it by the
/// spectral decomposition of a seeded random self-adjoint central element
/// (retrying on eigenvalue collisions), and reads d_k off the rank of the
/// compressed algebra. Exact mode splits via integer root extraction of the
/// minimal polynomial and falls back to approx arithmetic, with a warning,
/// when the spectrum is not rational.
SemisimpleDecomposition decompose(const MatrixStarAlgebra& alg, std::uint64_t seed);

struct InclusionMatrix {
  std::vector<std::vector<long>> entries;  // rows: small blocks, cols: big blocks
  long rows() const { return static_cast<long>(entries.size()); }
  long cols() const { return entries.empty() ? 0 : static_cast<long>(entries[0].size()); }
};

/// Lambda_{kl} = trace(f_k q_l) / t_l with f_k a minimal projection inside
/// small's block k, q_l big's l-th central projection and t_l the trace of a
/// minimal projection of big's block l. Entries must come out integral.
InclusionMatrix inclusion_matrix(const MatrixStarAlgebra& small,
                                 const SemisimpleDecomposition& small_dec,
                                 const MatrixStarAlgebra& big,
                                 const SemisimpleDecomposition& big_dec, std::uint64_t seed);

struct BratteliData {
  std::vector<SemisimpleDecomposition> levels;  // one per tower algebra
  std::vector<InclusionMatrix> steps;           // steps[k]: level k into level k+1
};

/// Bratteli data of one lattice row: each cell embeds into the next by
/// T -> T (x) 1_m.
BratteliData bratteli(const std::vector<const LatticeCell*>& row, long m, std::uint64_t seed);

struct PrincipalGraph {
  bool stabilized = false;
  int stabilization_step = -1;  // first k with steps[k] = steps[k-1]^t up to reordering
  std::vector<std::pair<long, long>> even_blocks, odd_blocks;  // (d, mult) labels
  InclusionMatrix graph;  // edges between even and odd vertices
  double index_estimate = 0.0;  // squared operator norm of the stable inclusion
  bool connected = false;
};

/// Reads the principal graph off a Bratteli chain via the transpose-matching
/// stabilization heuristic; an unstabilized chain yields the last step,
/// flagged. The estimate never claims more than the computed depth.
PrincipalGraph principal_graph(const BratteliData& data);

std::string bratteli_dot(const BratteliData& data);
std::string principal_graph_dot(const PrincipalGraph& g);

}  // namespace vmlat
