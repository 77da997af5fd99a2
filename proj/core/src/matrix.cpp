#include "vmlat/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "vmlat/linsolve.hpp"

namespace vmlat {

namespace {

long legs_product(const std::vector<Leg>& legs) {
  long p = 1;
  for (const Leg& l : legs) p *= l.dim;
  return p;
}

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::input, "matrix shape mismatch");
  if (a.mode() != b.mode())
    throw Error(ErrorKind::mode_mismatch, "mixed exact/approx matrices");
}

}  // namespace

Matrix::Matrix(long rows, long cols, Mode mode)
    : rows_(rows), cols_(cols), mode_(mode), a_(rows * cols, Scalar::zero(mode)) {
  if (rows <= 0 || cols <= 0) throw Error(ErrorKind::input, "matrix dimensions must be positive");
}

Matrix Matrix::identity(long d, Mode mode) {
  Matrix m(d, d, mode);
  for (long i = 0; i < d; ++i) m.set(i, i, Scalar::one(mode));
  return m;
}

void Matrix::set(long r, long c, Scalar v) {
  if (v.mode() != mode_) throw Error(ErrorKind::mode_mismatch, "entry mode differs from matrix mode");
  a_[r * cols_ + c] = std::move(v);
}

Matrix Matrix::with_legs(std::vector<Leg> legs) const& {
  Matrix m = *this;
  return std::move(m).with_legs(std::move(legs));
}

Matrix Matrix::with_legs(std::vector<Leg> legs) && {
  if (!legs.empty()) {
    if (rows_ != cols_) throw Error(ErrorKind::input, "leg signatures are for square matrices");
    if (legs_product(legs) != rows_)
      throw Error(ErrorKind::input, "leg dimensions do not multiply to the matrix size");
  }
  Matrix m = std::move(*this);
  m.legs_ = std::move(legs);
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.mode() != b.mode()) return false;
  if (a.mode() == Mode::approx) return max_abs_diff(a, b) == 0.0;
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c)
      if (!a.at(r, c).exact_eq(b.at(r, c))) return false;
  return true;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out(a.rows(), a.cols(), a.mode());
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c) + b.at(r, c));
  return out.with_legs(a.legs());
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out(a.rows(), a.cols(), a.mode());
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c) - b.at(r, c));
  return out.with_legs(a.legs());
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::input, "matrix product shape mismatch");
  if (a.mode() != b.mode()) throw Error(ErrorKind::mode_mismatch, "mixed exact/approx matrices");
  Matrix out(a.rows(), b.cols(), a.mode());
  // Skip structural zeros of the left factor; word realizations and group
  // fixtures are monomial matrices, where this changes the complexity class.
  for (long r = 0; r < a.rows(); ++r) {
    for (long k = 0; k < a.cols(); ++k) {
      const Scalar& ark = a.at(r, k);
      if (ark.is_zero()) continue;
      for (long c = 0; c < b.cols(); ++c) {
        const Scalar& bkc = b.at(k, c);
        if (bkc.is_zero()) continue;
        out.set(r, c, out.at(r, c) + ark * bkc);
      }
    }
  }
  if (a.rows() == b.cols() && a.has_legs() && a.rows() == a.cols()) return out.with_legs(a.legs());
  return out;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix out(a.rows(), a.cols(), a.mode());
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c) out.set(r, c, s * a.at(r, c));
  return out.with_legs(a.legs());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.mode() != b.mode()) throw Error(ErrorKind::mode_mismatch, "kron over mixed modes");
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols(), a.mode());
  for (long ra = 0; ra < a.rows(); ++ra)
    for (long ca = 0; ca < a.cols(); ++ca) {
      const Scalar& s = a.at(ra, ca);
      if (s.is_zero()) continue;
      for (long rb = 0; rb < b.rows(); ++rb)
        for (long cb = 0; cb < b.cols(); ++cb) {
          if (b.at(rb, cb).is_zero()) continue;
          out.set(ra * b.rows() + rb, ca * b.cols() + cb, s * b.at(rb, cb));
        }
    }
  if (a.has_legs() && b.has_legs()) {
    std::vector<Leg> legs = a.legs();
    legs.insert(legs.end(), b.legs().begin(), b.legs().end());
    return std::move(out).with_legs(std::move(legs));
  }
  return out;
}

Matrix embed_on_legs(const Matrix& x, const std::vector<int>& positions,
                     const std::vector<Leg>& signature) {
  if (!x.has_legs()) throw Error(ErrorKind::input, "embed_on_legs: operand carries no legs");
  if (positions.size() != x.legs().size())
    throw Error(ErrorKind::input, "embed_on_legs: one position per operand leg required");
  const int L = static_cast<int>(signature.size());
  std::vector<int> slot_of(L, -1);  // global leg -> operand leg, or -1
  for (std::size_t t = 0; t < positions.size(); ++t) {
    int p = positions[t];
    if (p < 1 || p > L) throw Error(ErrorKind::input, "embed_on_legs: position out of range");
    if (slot_of[p - 1] != -1) throw Error(ErrorKind::input, "embed_on_legs: repeated position");
    if (signature[p - 1].dim != x.legs()[t].dim)
      throw Error(ErrorKind::input, "embed_on_legs: leg dimension mismatch");
    slot_of[p - 1] = static_cast<int>(t);
  }

  std::vector<long> dims(L), xdims(x.legs().size());
  for (int q = 0; q < L; ++q) dims[q] = signature[q].dim;
  for (std::size_t t = 0; t < xdims.size(); ++t) xdims[t] = x.legs()[t].dim;
  const long D = legs_product(signature);

  // Strides of each operand leg inside x's flat index.
  std::vector<long> xstride(xdims.size(), 1);
  for (int t = static_cast<int>(xdims.size()) - 2; t >= 0; --t)
    xstride[t] = xstride[t + 1] * xdims[t + 1];

  Matrix out(D, D, x.mode());
  std::vector<long> ridx(L, 0);
  for (long r = 0; r < D; ++r) {
    // decode row multi-index
    long tmp = r;
    for (int q = L - 1; q >= 0; --q) {
      ridx[q] = tmp % dims[q];
      tmp /= dims[q];
    }
    long xr = 0;
    for (int q = 0; q < L; ++q)
      if (slot_of[q] >= 0) xr += ridx[q] * xstride[slot_of[q]];
    // columns: spectator legs must match the row; operand legs range freely
    std::vector<int> oplegs;
    for (int q = 0; q < L; ++q)
      if (slot_of[q] >= 0) oplegs.push_back(q);
    const int K = static_cast<int>(oplegs.size());
    std::vector<long> cidx(ridx);
    std::vector<long> sub(K, 0);
    while (true) {
      long xc = 0, c = 0;
      for (int k = 0; k < K; ++k) cidx[oplegs[k]] = sub[k];
      for (int q = 0; q < L; ++q) c = c * dims[q] + cidx[q];
      for (int q = 0; q < L; ++q)
        if (slot_of[q] >= 0) xc += cidx[q] * xstride[slot_of[q]];
      const Scalar& v = x.at(xr, xc);
      if (!v.is_zero()) out.set(r, c, v);
      int k = K - 1;
      while (k >= 0 && ++sub[k] == dims[oplegs[k]]) sub[k--] = 0;
      if (k < 0) break;
    }
  }
  return std::move(out).with_legs(signature);
}

Matrix partial_transpose_leg(const Matrix& x, int leg) {
  if (!x.has_legs()) throw Error(ErrorKind::input, "partial transpose needs a leg signature");
  const int L = static_cast<int>(x.legs().size());
  if (leg < 0 || leg >= L) throw Error(ErrorKind::input, "partial transpose: bad leg index");
  std::vector<long> dims(L);
  for (int q = 0; q < L; ++q) dims[q] = x.legs()[q].dim;
  const long D = x.rows();

  Matrix out(D, D, x.mode());
  std::vector<long> ridx(L), cidx(L);
  for (long r = 0; r < D; ++r) {
    long tmp = r;
    for (int q = L - 1; q >= 0; --q) {
      ridx[q] = tmp % dims[q];
      tmp /= dims[q];
    }
    for (long c = 0; c < D; ++c) {
      tmp = c;
      for (int q = L - 1; q >= 0; --q) {
        cidx[q] = tmp % dims[q];
        tmp /= dims[q];
      }
      // source indices: swap row/col on the transposed leg
      std::swap(ridx[leg], cidx[leg]);
      long sr = 0, sc = 0;
      for (int q = 0; q < L; ++q) sr = sr * dims[q] + ridx[q];
      for (int q = 0; q < L; ++q) sc = sc * dims[q] + cidx[q];
      std::swap(ridx[leg], cidx[leg]);
      const Scalar& v = x.at(sr, sc);
      if (!v.is_zero()) out.set(r, c, v);
    }
  }
  std::vector<Leg> legs = x.legs();
  legs[leg].dual = !legs[leg].dual;
  return std::move(out).with_legs(std::move(legs));
}

Matrix partial_transpose_first(const Matrix& x) {
  if (x.legs().size() != 2) throw Error(ErrorKind::input, "partial_transpose_first needs exactly two legs");
  return partial_transpose_leg(x, 0);
}

Matrix transpose(const Matrix& x) {
  Matrix out(x.cols(), x.rows(), x.mode());
  for (long r = 0; r < x.rows(); ++r)
    for (long c = 0; c < x.cols(); ++c) out.set(c, r, x.at(r, c));
  std::vector<Leg> legs = x.legs();
  for (Leg& l : legs) l.dual = !l.dual;
  return std::move(out).with_legs(std::move(legs));
}

Matrix conjugate(const Matrix& x) {
  Matrix out(x.rows(), x.cols(), x.mode());
  for (long r = 0; r < x.rows(); ++r)
    for (long c = 0; c < x.cols(); ++c) out.set(r, c, x.at(r, c).conj());
  return out.with_legs(x.legs());
}

Matrix adjoint(const Matrix& x) {
  // The adjoint acts on the same space, so the leg signature is unchanged.
  return transpose(conjugate(x)).with_legs(x.legs());
}

InverseResult try_inverse(const Matrix& x) {
  if (x.rows() != x.cols()) throw Error(ErrorKind::input, "inverse of a non-square matrix");
  const long d = x.rows();
  const Mode mode = x.mode();
  // Augmented Gauss-Jordan with partial pivoting (largest magnitude, first
  // such row); approx pivots below tau * max|entry| count as zero.
  std::vector<std::vector<Scalar>> a(d), inv(d);
  for (long r = 0; r < d; ++r) {
    a[r].reserve(d);
    for (long c = 0; c < d; ++c) a[r].push_back(x.at(r, c));
    inv[r].assign(d, Scalar::zero(mode));
    inv[r][r] = Scalar::one(mode);
  }
  double threshold = 0.0;
  if (mode == Mode::approx) threshold = tolerance() * std::max(1.0, max_abs(x));

  double min_pivot = 0.0;
  bool first_pivot = true;
  for (long col = 0; col < d; ++col) {
    long best = -1;
    for (long r = col; r < d; ++r) {
      if (a[r][col].is_zero()) continue;
      if (best == -1 || a[best][col].magnitude_less(a[r][col])) best = r;
    }
    double best_mag = best == -1 ? 0.0 : a[best][col].abs();
    if (best == -1 || (mode == Mode::approx && best_mag <= threshold))
      return {std::nullopt, best_mag};
    if (first_pivot || best_mag < min_pivot) min_pivot = best_mag;
    first_pivot = false;
    std::swap(a[best], a[col]);
    std::swap(inv[best], inv[col]);
    Scalar p = a[col][col];
    for (long c = 0; c < d; ++c) {
      a[col][c] = a[col][c] / p;
      inv[col][c] = inv[col][c] / p;
    }
    for (long r = 0; r < d; ++r) {
      if (r == col) continue;
      Scalar f = a[r][col];
      if (f.is_zero()) continue;
      for (long c = 0; c < d; ++c) {
        if (!a[col][c].is_zero()) a[r][c] -= f * a[col][c];
        if (!inv[col][c].is_zero()) inv[r][c] -= f * inv[col][c];
      }
    }
  }
  Matrix out(d, d, mode);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) out.set(r, c, inv[r][c]);
  return {std::move(out).with_legs(x.legs()), min_pivot};
}

Matrix inverse(const Matrix& x) {
  InverseResult r = try_inverse(x);
  if (!r.inverse)
    throw Error(ErrorKind::singular,
                "singular matrix (best pivot magnitude " + std::to_string(r.min_pivot) + ")");
  return *std::move(r.inverse);
}

bool is_unitary(const Matrix& x) {
  if (x.rows() != x.cols()) return false;
  Matrix p = x * adjoint(x);
  Matrix id = Matrix::identity(x.rows(), x.mode());
  if (x.mode() == Mode::exact) return p == id;
  return max_abs_diff(p, id) <= tolerance();
}

Scalar trace(const Matrix& x) {
  if (x.rows() != x.cols()) throw Error(ErrorKind::input, "trace of a non-square matrix");
  Scalar t = Scalar::zero(x.mode());
  for (long i = 0; i < x.rows(); ++i) t += x.at(i, i);
  return t;
}

Scalar ntrace(const Matrix& x) {
  return trace(x) / Scalar::integer(x.rows(), x.mode());
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c) m = std::max(m, (a.at(r, c) - b.at(r, c)).abs());
  return m;
}

bool matches(const Matrix& a, const Matrix& b, double tol_factor) {
  if (a.mode() == Mode::exact && b.mode() == Mode::exact) return a == b;
  return max_abs_diff(a, b) <= tol_factor * tolerance();
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c) m = std::max(m, a.at(r, c).abs());
  return m;
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
  KernelSolver ks(m.cols(), m.mode());
  for (long r = 0; r < m.rows(); ++r) {
    SparseRow row;
    for (long c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero()) row.emplace_back(c, m.at(r, c));
    ks.add_row(std::move(row));
  }
  return ks.kernel_basis();
}

}  // namespace vmlat
