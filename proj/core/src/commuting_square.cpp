#include "vmlat/commuting_square.hpp"

#include <algorithm>

#include "vmlat/intertwiner.hpp"
#include "vmlat/linsolve.hpp"

namespace vmlat {

namespace {

// Orthogonal projection onto the span of a basis in the normalized-trace
// inner product <x, y> = ntrace(y* x), by Gram-matrix solving (no square
// roots, so exact mode stays exact).
class TraceProjector {
 public:
  explicit TraceProjector(std::vector<Matrix> basis)
      : basis_(std::move(basis)), gram_inv_(inverse(gram_of(basis_))) {}

  Matrix operator()(const Matrix& x) const {
    const long B = static_cast<long>(basis_.size());
    const Mode mode = x.mode();
    std::vector<Scalar> rhs;
    rhs.reserve(B);
    for (long i = 0; i < B; ++i) rhs.push_back(ntrace(adjoint(basis_[i]) * x));
    Matrix out(x.rows(), x.cols(), mode);
    for (long i = 0; i < B; ++i) {
      Scalar ci = Scalar::zero(mode);
      for (long j = 0; j < B; ++j) ci += gram_inv_.at(i, j) * rhs[j];
      if (!ci.is_zero()) out = out + ci * basis_[i];
    }
    return out;
  }

 private:
  static Matrix gram_of(const std::vector<Matrix>& basis) {
    const long B = static_cast<long>(basis.size());
    Matrix gram(B, B, basis[0].mode());
    for (long i = 0; i < B; ++i)
      for (long j = 0; j < B; ++j) gram.set(i, j, ntrace(adjoint(basis[j]) * basis[i]));
    return gram;
  }

  std::vector<Matrix> basis_;
  Matrix gram_inv_;
};

}  // namespace

Matrix conditional_expectation(const std::vector<Matrix>& basis, const Matrix& x) {
  if (basis.empty()) throw Error(ErrorKind::input, "expectation needs a nonempty basis");
  return TraceProjector(basis)(x);
}

SquareReport check_commuting_square(const VertexOperator& u) {
  const long m = u.m(), n = u.n(), D = m * n;
  const Mode mode = u.mode();

  std::vector<Matrix> top;  // 1 (x) L(W)
  for (long x = 0; x < n; ++x)
    for (long y = 0; y < n; ++y) {
      Matrix e(D, D, mode);
      for (long a = 0; a < m; ++a) e.set(a * n + x, a * n + y, Scalar::one(mode));
      top.push_back(std::move(e));
    }
  std::vector<Matrix> bottom;  // u (L(V) (x) 1) u^{-1}
  for (long a = 0; a < m; ++a)
    for (long b = 0; b < m; ++b) {
      Matrix e(D, D, mode);
      for (long x = 0; x < n; ++x) e.set(a * n + x, b * n + x, Scalar::one(mode));
      bottom.push_back(u.mat() * e * u.inv());
    }

  TraceProjector e_top(top), e_bottom(bottom);
  const Matrix id = Matrix::identity(D, mode);

  double resid = 0.0;
  for (long r = 0; r < D; ++r)
    for (long c = 0; c < D; ++c) {
      Matrix x(D, D, mode);
      x.set(r, c, Scalar::one(mode));
      Matrix target = ntrace(x) * id;
      resid = std::max(resid, max_abs_diff(e_top(e_bottom(x)), target));
      resid = std::max(resid, max_abs_diff(e_bottom(e_top(x)), target));
    }

  SquareReport rep;
  rep.max_residual = resid;
  rep.is_commuting = mode == Mode::exact ? resid == 0.0 : resid <= 10.0 * tolerance();
  rep.corners = {"C", "1 (x) L(W)", "u (L(V) (x) 1) u^{-1}", "L(V) (x) L(W)"};
  return rep;
}

TowerLevel build_tower_U(const VertexOperator& u, int i) {
  if (i < 1) throw Error(ErrorKind::input, "tower level must be at least 1");
  if (!check_star(u)) throw Error(ErrorKind::input, "tower requires the star condition");
  const long m = u.m();
  const Leg vleg = u.mat().legs()[0];
  const Leg wleg = u.mat().legs()[u.left_legs()];
  Matrix uhat = make_uhat(u).mat();

  Matrix cur = u.mat().with_legs({vleg, wleg});
  for (int lvl = 1; lvl < i; ++lvl) {
    // extend U^lvl to U^{lvl+1}
    std::vector<Leg> sig;
    for (int k = 1; k <= lvl + 1; ++k) sig.push_back({m, k % 2 == 0 ? !vleg.dual : vleg.dual});
    sig.push_back(wleg);
    std::vector<int> upos(lvl + 1);
    for (int k = 0; k < lvl; ++k) upos[k] = k + 1;  // legs 1..lvl
    upos[lvl] = lvl + 2;                            // the W leg
    const Matrix& v = (lvl % 2 == 0) ? u.mat() : uhat;
    Matrix lifted = embed_on_legs(cur, upos, sig);
    Matrix vterm = embed_on_legs(v, {lvl + 1, lvl + 2}, sig);
    cur = (lifted * vterm).with_legs(sig);
  }
  return TowerLevel{i, std::move(cur)};
}

Matrix jones_projection(long d, Mode mode) {
  if (d < 1) throw Error(ErrorKind::input, "jones projection needs a positive dimension");
  Matrix e(d * d, d * d, mode);
  Scalar inv_d = Scalar::one(mode) / Scalar::integer(d, mode);
  for (long a = 0; a < d; ++a)
    for (long c = 0; c < d; ++c) e.set(a * d + a, c * d + c, inv_d);
  return std::move(e).with_legs({{d, false}, {d, true}});
}

bool check_jones_identity(const VertexOperator& u) {
  if (!check_star(u)) throw Error(ErrorKind::input, "jones identity requires the star condition");
  const long m = u.m(), n = u.n();
  for (int which = 0; which < 2; ++which) {
    VertexOperator v = which == 0 ? u : make_uhat(u);
    VertexOperator vhat = make_uhat(v);
    const Leg tleg = v.mat().legs()[0];
    std::vector<Leg> sig{{m, tleg.dual}, {m, !tleg.dual}, {n, false}};
    Matrix x = embed_on_legs(v.mat().with_legs({{m, tleg.dual}, {n, false}}), {1, 3}, sig) *
               embed_on_legs(vhat.mat().with_legs({{m, !tleg.dual}, {n, false}}), {2, 3}, sig);
    Matrix e = embed_on_legs(jones_projection(m, u.mode()), {1, 2}, sig);
    Matrix conj_e = x * e * inverse(x);
    if (!matches(conj_e, e, 10.0)) return false;
  }
  return true;
}

MatrixStarAlgebra relative_commutant_direct(const VertexOperator& u, int i, int j, long cap) {
  if (j < 0 || i < j) throw Error(ErrorKind::input, "need 0 <= j <= i");
  if (!check_star(u)) throw Error(ErrorKind::input, "commutant cells require the star condition");
  const int k = i - j;
  const Mode mode = u.mode();
  if (k == 0) {
    std::vector<Matrix> scalars{Matrix::identity(1, mode)};
    return MatrixStarAlgebra(1, std::move(scalars));
  }
  const long m = u.m(), n = u.n();
  long D = 1, size = n * n;
  for (int t = 0; t < k; ++t) D *= m;
  for (int t = 0; t < 2 * k; ++t) size *= m;
  if (size > cap)
    throw Error(ErrorKind::cap_exceeded, "commutant cell (" + std::to_string(i) + "," +
                                             std::to_string(j) + ") exceeds the entry cap");

  VertexOperator v = (j % 2 == 0) ? u : make_uhat(u);
  TowerLevel tl = build_tower_U(v, k);
  const Matrix& U = tl.U;
  Matrix Ui = inverse(U);

  // T in L(D): rows demand that Y = U^{-1} (T (x) 1) U acts as identity on
  // the W leg: off-diagonal W blocks vanish and diagonal ones agree.
  KernelSolver ks(D * D, mode);
  std::map<long, Scalar> row;
  auto coef = [&](long a, long x, long b, long y, long c, long d) {
    Scalar s = Scalar::zero(mode);
    for (long z = 0; z < n; ++z) {
      const Scalar& l = Ui.at(a * n + x, c * n + z);
      if (l.is_zero()) continue;
      const Scalar& r = U.at(d * n + z, b * n + y);
      if (r.is_zero()) continue;
      s += l * r;
    }
    return s;
  };
  for (long a = 0; a < D; ++a)
    for (long x = 0; x < n; ++x)
      for (long b = 0; b < D; ++b)
        for (long y = 0; y < n; ++y) {
          if (x == y && x == 0) continue;
          row.clear();
          for (long c = 0; c < D; ++c)
            for (long d = 0; d < D; ++d) {
              Scalar s = coef(a, x, b, y, c, d);
              if (x == y) s -= coef(a, 0, b, 0, c, d);
              if (!s.is_zero()) row.emplace(c * D + d, std::move(s));
            }
          if (row.empty()) continue;
          SparseRow r(row.begin(), row.end());
          ks.add_row(std::move(r));
        }

  std::vector<Matrix> basis;
  for (const auto& vec : ks.kernel_basis()) {
    Matrix t(D, D, mode);
    for (long r = 0; r < D; ++r)
      for (long c = 0; c < D; ++c)
        if (!vec[r * D + c].is_zero()) t.set(r, c, vec[r * D + c]);
    basis.push_back(std::move(t));
  }
  return MatrixStarAlgebra(D, std::move(basis));
}

CompareReport theorem_compare(const VertexOperator& u, int depth, long cap, std::uint64_t seed) {
  if (!check_star(u)) throw Error(ErrorKind::input, "comparison requires the star condition");
  LatticeGrid grid = lattice(make_uprime(u), depth, cap);

  CompareReport rep;
  for (int i = 0; i <= depth; ++i)
    for (int j = 0; j <= i; ++j) {
      const LatticeCell& cell = grid.cell(i, j);
      MatrixStarAlgebra direct = relative_commutant_direct(u, i, j, cap);
      MatrixStarAlgebra word_alg(cell.basis[0].rows(), cell.basis);

      CompareCell cc;
      cc.i = i;
      cc.j = j;
      cc.dim_word = cell.dim();
      cc.dim_direct = direct.dim();
      cc.dims_match = cc.dim_word == cc.dim_direct;
      cc.blocks_word = decompose(word_alg, seed).block_multiset();
      cc.blocks_direct = decompose(direct, seed).block_multiset();
      cc.blocks_match = cc.blocks_word == cc.blocks_direct;
      if (!cc.dims_match || !cc.blocks_match) rep.all_match = false;
      rep.cells.push_back(std::move(cc));
    }
  return rep;
}

}  // namespace vmlat
