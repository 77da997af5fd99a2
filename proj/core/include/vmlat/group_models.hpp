#pragma once

#include <map>
#include <vector>

#include "vmlat/vertex_model.hpp"

namespace vmlat {

/// The finite group generated by a family of invertible exact matrices,
/// with its full multiplication table. Deduplication needs exact equality,
/// so approx-mode input is rejected.
class FiniteGroupClosure {
 public:
  FiniteGroupClosure(std::vector<Matrix> elements, std::vector<std::vector<int>> table,
                     std::vector<int> generator_indices, int cap);

  long order() const { return static_cast<long>(elements_.size()); }
  const Matrix& element(int k) const { return elements_[k]; }
  const std::vector<int>& generator_indices() const { return generator_indices_; }
  int cap() const { return cap_; }

  int product(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const;
  int identity_index() const { return 0; }
  /// Index of an exact matrix in the element list, or -1.
  int find(const Matrix& g) const;

 private:
  std::vector<Matrix> elements_;
  std::vector<std::vector<int>> table_;
  std::vector<int> generator_indices_;
  int cap_;
};

/// Breadth-first closure under right multiplication by the generators,
/// starting from the identity. Throws cap_exceeded past `cap` elements.
FiniteGroupClosure close_group(const std::vector<Matrix>& generators, int cap = 64);

/// u = sum_i e_ii (x) g_i in M_r (x) M_d.
VertexOperator model_i(const std::vector<Matrix>& generators);
/// s = sum_i g_i (x) e_ii in M_d (x) M_r.
VertexOperator model_ii(const std::vector<Matrix>& generators);

/// Generators g_i (x) (g_i^{-1})^t of the group governing the lattice of a
/// diagonal model; their closure is a faithful copy of the projective image
/// of <g_1, ..., g_r>.
std::vector<Matrix> pgl_generators(const std::vector<Matrix>& generators);

/// Generators g_k g_1^{-1} (k >= 2) for the second model family.
std::vector<Matrix> model_ii_group(const std::vector<Matrix>& generators);

/// Scales an exact matrix so its first nonzero entry (row-major) is 1; two
/// matrices get the same representative iff they differ by a global scalar.
Matrix projective_representative(const Matrix& g);

/// Lattice-cell dimensions by multiset counting: the cell (i, j) word
/// realizes a diagonal operator whose slots carry products of the listed
/// elements (letter X) and their inverses (letter Xhat); the end dimension
/// is the sum of squared multiplicities. Needs no linear solving.
struct OracleGrid {
  int depth = 0;
  std::map<std::pair<int, int>, long> dims;
  long at(int i, int j) const;
};

OracleGrid group_lattice_oracle(const FiniteGroupClosure& g, const std::vector<int>& x_elements,
                                int depth);

}  // namespace vmlat
