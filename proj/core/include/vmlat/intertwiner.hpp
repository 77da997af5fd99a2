#pragma once

#include <map>
#include <memory>
#include <vector>

#include "vmlat/linsolve.hpp"
#include "vmlat/vertex_model.hpp"

namespace vmlat {

enum class Letter { X, Xhat };

/// Letters j+1 .. i of the infinite alternating word X Xhat X Xhat ...
/// (1-based positions, odd positions are X). Row parity therefore decides
/// whether a row's words start with X or Xhat.
std::vector<Letter> lattice_word(int i, int j);

std::string letters_str(const std::vector<Letter>& letters);

/// An alternating word over a fixed base operator, realized as an element of
/// L(V_w) (x) A with V_w of dimension m^k and A the base's right-leg algebra:
/// the product over positions p of the letter embedded on legs (p, k+1).
class TensorWord {
 public:
  TensorWord(std::shared_ptr<const VertexOperator> base, std::vector<Letter> letters,
             Matrix realized);

  const VertexOperator& base() const { return *base_; }
  const std::shared_ptr<const VertexOperator>& base_ptr() const { return base_; }
  const std::vector<Letter>& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  const Matrix& realized() const { return realized_; }
  long vdim() const;  // m^length

 private:
  std::shared_ptr<const VertexOperator> base_;
  std::vector<Letter> letters_;
  Matrix realized_;
};

/// Realizes a nonempty word; the base must satisfy the star condition.
TensorWord realize_word(std::shared_ptr<const VertexOperator> base,
                        const std::vector<Letter>& letters);
TensorWord realize_word(const VertexOperator& base, const std::vector<Letter>& letters);

/// Basis of { T : (T (x) 1_A) v = w (T (x) 1_A) }, solved by flattening into
/// a linear system on T's entries. Matrices have shape (target dim) x
/// (source dim); the basis is deterministic.
struct HomBasis {
  std::vector<Matrix> basis;
  long dim() const { return static_cast<long>(basis.size()); }
};

HomBasis hom_space(const TensorWord& source, const TensorWord& target);
HomBasis end_algebra(const TensorWord& word);

inline constexpr long default_entry_cap = 1L << 20;

struct LatticeCell {
  int i = 0, j = 0;
  std::vector<Letter> letters;
  std::vector<Matrix> basis;  // end algebra of the cell's word
  long dim() const { return static_cast<long>(basis.size()); }
};

/// The grid of end algebras of the alternating words, with both inclusion
/// directions verified cell by cell: horizontally T -> T (x) 1 lands in the
/// next column's span, vertically T -> 1 (x) T (identity on the dropped
/// letter's leg) lands in the previous row's span.
class LatticeGrid {
 public:
  LatticeGrid(std::shared_ptr<const VertexOperator> base, int depth,
              std::map<std::pair<int, int>, LatticeCell> cells);

  const VertexOperator& base() const { return *base_; }
  int depth() const { return depth_; }
  const LatticeCell& cell(int i, int j) const;
  /// Cells of row j, columns j..depth.
  std::vector<const LatticeCell*> row(int j) const;

 private:
  std::shared_ptr<const VertexOperator> base_;
  int depth_;
  std::map<std::pair<int, int>, LatticeCell> cells_;
};

LatticeGrid lattice(std::shared_ptr<const VertexOperator> u_prime, int depth,
                    long cap = default_entry_cap);
LatticeGrid lattice(const VertexOperator& u_prime, int depth, long cap = default_entry_cap);

/// Flattens a matrix into a sparse row (row-major), for span tests.
SparseRow matrix_row(const Matrix& t);

}  // namespace vmlat
