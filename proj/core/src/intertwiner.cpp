#include "vmlat/intertwiner.hpp"

#include <string>

#include "vmlat/linsolve.hpp"

namespace vmlat {

std::vector<Letter> lattice_word(int i, int j) {
  std::vector<Letter> w;
  for (int p = j + 1; p <= i; ++p) w.push_back(p % 2 == 1 ? Letter::X : Letter::Xhat);
  return w;
}

std::string letters_str(const std::vector<Letter>& letters) {
  std::string s;
  for (Letter l : letters) {
    if (!s.empty()) s += ".";
    s += (l == Letter::X ? "X" : "X^");
  }
  return s;
}

TensorWord::TensorWord(std::shared_ptr<const VertexOperator> base, std::vector<Letter> letters,
                       Matrix realized)
    : base_(std::move(base)), letters_(std::move(letters)), realized_(std::move(realized)) {}

long TensorWord::vdim() const {
  long d = 1;
  for (std::size_t k = 0; k < letters_.size(); ++k) d *= base_->m();
  return d;
}

TensorWord realize_word(std::shared_ptr<const VertexOperator> base,
                        const std::vector<Letter>& letters) {
  if (letters.empty()) throw Error(ErrorKind::input, "cannot realize an empty word");
  if (!check_star(*base)) throw Error(ErrorKind::input, "word base must satisfy the star condition");
  const long m = base->m(), n = base->n();
  const int k = static_cast<int>(letters.size());
  const bool vdual = base->mat().legs()[0].dual;

  // Coarse two-leg views of the base and its contragradient.
  Matrix x = base->mat().with_legs({{m, vdual}, {n, false}});
  Matrix xhat = make_uhat(*base).mat().with_legs({{m, !vdual}, {n, false}});

  std::vector<Leg> sig;
  for (int p = 0; p < k; ++p)
    sig.push_back({m, letters[p] == Letter::X ? vdual : !vdual});
  sig.push_back({n, false});

  long D = n;
  for (int p = 0; p < k; ++p) D *= m;
  Matrix prod = Matrix::identity(D, base->mode()).with_legs(sig);
  for (int p = 0; p < k; ++p) {
    const Matrix& term = letters[p] == Letter::X ? x : xhat;
    prod = (prod * embed_on_legs(term, {p + 1, k + 1}, sig)).with_legs(sig);
  }
  return TensorWord(std::move(base), letters, std::move(prod));
}

TensorWord realize_word(const VertexOperator& base, const std::vector<Letter>& letters) {
  return realize_word(std::make_shared<VertexOperator>(base), letters);
}

namespace {

void require_same_base(const TensorWord& a, const TensorWord& b) {
  if (a.base_ptr() == b.base_ptr()) return;
  const VertexOperator &u = a.base(), &v = b.base();
  if (u.m() == v.m() && u.n() == v.n() && matches(u.mat(), v.mat(), 1.0)) return;
  throw Error(ErrorKind::input, "hom space requires a common base operator");
}

}  // namespace

HomBasis hom_space(const TensorWord& source, const TensorWord& target) {
  require_same_base(source, target);
  const long n = source.base().n();
  const long da = source.vdim(), db = target.vdim();
  const Matrix& v = source.realized();
  const Matrix& w = target.realized();
  const Mode mode = v.mode();

  // Unknown T_{rc} (r < db, c < da) at flat index r*da + c. Equations are
  // indexed by the entries of (T (x) 1) v - w (T (x) 1).
  KernelSolver ks(da * db, mode);
  std::map<long, Scalar> row;
  for (long i = 0; i < db; ++i)
    for (long x = 0; x < n; ++x)
      for (long s = 0; s < da; ++s)
        for (long y = 0; y < n; ++y) {
          row.clear();
          for (long c = 0; c < da; ++c) {
            const Scalar& coef = v.at(c * n + x, s * n + y);
            if (!coef.is_zero()) row[i * da + c] = coef;
          }
          for (long j = 0; j < db; ++j) {
            const Scalar& coef = w.at(i * n + x, j * n + y);
            if (coef.is_zero()) continue;
            auto [it, fresh] = row.emplace(j * da + s, -coef);
            if (!fresh) {
              it->second -= coef;
              if (it->second.is_zero()) row.erase(it);
            }
          }
          if (row.empty()) continue;
          SparseRow r(row.begin(), row.end());
          ks.add_row(std::move(r));
        }

  HomBasis out;
  for (const auto& vec : ks.kernel_basis()) {
    Matrix t(db, da, mode);
    for (long r = 0; r < db; ++r)
      for (long c = 0; c < da; ++c)
        if (!vec[r * da + c].is_zero()) t.set(r, c, vec[r * da + c]);
    out.basis.push_back(std::move(t));
  }
  return out;
}

HomBasis end_algebra(const TensorWord& word) { return hom_space(word, word); }

SparseRow matrix_row(const Matrix& t) {
  SparseRow r;
  for (long i = 0; i < t.rows(); ++i)
    for (long j = 0; j < t.cols(); ++j)
      if (!t.at(i, j).is_zero()) r.emplace_back(i * t.cols() + j, t.at(i, j));
  return r;
}

LatticeGrid::LatticeGrid(std::shared_ptr<const VertexOperator> base, int depth,
                         std::map<std::pair<int, int>, LatticeCell> cells)
    : base_(std::move(base)), depth_(depth), cells_(std::move(cells)) {}

const LatticeCell& LatticeGrid::cell(int i, int j) const {
  auto it = cells_.find({i, j});
  if (it == cells_.end()) throw Error(ErrorKind::input, "lattice cell out of range");
  return it->second;
}

std::vector<const LatticeCell*> LatticeGrid::row(int j) const {
  std::vector<const LatticeCell*> out;
  for (int i = j; i <= depth_; ++i) out.push_back(&cell(i, j));
  return out;
}

namespace {

Matrix kron_right_identity(const Matrix& t, long m, Mode mode) {
  return kron(t, Matrix::identity(m, mode));
}

Matrix kron_left_identity(const Matrix& t, long m, Mode mode) {
  return kron(Matrix::identity(m, mode), t);
}

}  // namespace

LatticeGrid lattice(std::shared_ptr<const VertexOperator> u_prime, int depth, long cap) {
  if (depth < 1) throw Error(ErrorKind::input, "lattice depth must be at least 1");
  if (!check_star(*u_prime)) throw Error(ErrorKind::input, "lattice base must satisfy the star condition");
  const long m = u_prime->m(), n = u_prime->n();
  const Mode mode = u_prime->mode();

  std::map<std::pair<int, int>, LatticeCell> cells;
  for (int i = 0; i <= depth; ++i)
    for (int j = 0; j <= i; ++j) {
      const int k = i - j;
      long size = n * n;
      for (int t = 0; t < 2 * k; ++t) size *= m;
      if (size > cap)
        throw Error(ErrorKind::cap_exceeded,
                    "lattice cell (" + std::to_string(i) + "," + std::to_string(j) +
                        ") exceeds the entry cap (" + std::to_string(size) + " > " +
                        std::to_string(cap) + ")");
      LatticeCell cell;
      cell.i = i;
      cell.j = j;
      cell.letters = lattice_word(i, j);
      if (k == 0) {
        cell.basis.push_back(Matrix::identity(1, mode));
      } else {
        TensorWord w = realize_word(u_prime, cell.letters);
        cell.basis = end_algebra(w).basis;
      }
      cells.emplace(std::make_pair(i, j), std::move(cell));
    }

  // Inclusion invariants.
  for (int i = 0; i <= depth; ++i)
    for (int j = 0; j <= i; ++j) {
      const LatticeCell& c = cells.at({i, j});
      if (i < depth) {
        const LatticeCell& right = cells.at({i + 1, j});
        SpanBasis span(right.basis[0].rows() * right.basis[0].cols(), mode);
        for (const Matrix& t : right.basis) span.add(matrix_row(t));
        for (const Matrix& t : c.basis)
          if (!span.contains(matrix_row(kron_right_identity(t, m, mode))))
            throw Error(ErrorKind::internal, "horizontal lattice inclusion failed at cell (" +
                                                 std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (j < i) {
        const LatticeCell& below = cells.at({i, j + 1});
        SpanBasis span(c.basis[0].rows() * c.basis[0].cols(), mode);
        for (const Matrix& t : c.basis) span.add(matrix_row(t));
        for (const Matrix& t : below.basis)
          if (!span.contains(matrix_row(kron_left_identity(t, m, mode))))
            throw Error(ErrorKind::internal, "vertical lattice inclusion failed at cell (" +
                                                 std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }

  return LatticeGrid(std::move(u_prime), depth, std::move(cells));
}

LatticeGrid lattice(const VertexOperator& u_prime, int depth, long cap) {
  return lattice(std::make_shared<VertexOperator>(u_prime), depth, cap);
}

}  // namespace vmlat
