#include "vmlat/vertex_model.hpp"

#include <algorithm>

#include "vmlat/linsolve.hpp"

namespace vmlat {

namespace {

bool scalar_is_positive_real(const Scalar& s) {
  if (s.mode() == Mode::exact) return s.im() == 0 && s.re() > 0;
  return s.value().imag() == 0.0 && s.value().real() > 0.0;
}

// Transposes one coarse side of a flat (m*n) x (m*n) matrix.
Matrix coarse_pt(const Matrix& x, long m, long n, bool first_side) {
  Matrix out(m * n, m * n, x.mode());
  for (long a = 0; a < m; ++a)
    for (long xx = 0; xx < n; ++xx)
      for (long b = 0; b < m; ++b)
        for (long y = 0; y < n; ++y) {
          const Scalar& v = first_side ? x.at(b * n + xx, a * n + y)   // swap V indices
                                       : x.at(a * n + y, b * n + xx);  // swap W indices
          if (!v.is_zero()) out.set(a * n + xx, b * n + y, v);
        }
  return out;
}

std::vector<Leg> flipped_left(const std::vector<Leg>& legs, int left_legs) {
  std::vector<Leg> out = legs;
  for (int k = 0; k < left_legs; ++k) out[k].dual = !out[k].dual;
  return out;
}

std::vector<Leg> flipped_right(const std::vector<Leg>& legs, int left_legs) {
  std::vector<Leg> out = legs;
  for (std::size_t k = left_legs; k < out.size(); ++k) out[k].dual = !out[k].dual;
  return out;
}

}  // namespace

TwistQ::TwistQ(std::vector<Scalar> q) : q_(std::move(q)) {
  if (q_.empty()) throw Error(ErrorKind::input, "empty twist");
  for (const Scalar& s : q_) {
    if (s.mode() != q_[0].mode()) throw Error(ErrorKind::mode_mismatch, "mixed-mode twist");
    if (!scalar_is_positive_real(s)) throw Error(ErrorKind::input, "twist entries must be positive reals");
  }
}

bool TwistQ::is_identity() const {
  for (const Scalar& s : q_)
    if (!s.eq(Scalar::one(mode()))) return false;
  return true;
}

Matrix TwistQ::expanded(int power, long n) const {
  const long m = size();
  Matrix out(m * n, m * n, mode());
  for (long a = 0; a < m; ++a) {
    Scalar p = Scalar::one(mode());
    for (int k = 0; k < std::abs(power); ++k) p *= q_[a];
    if (power < 0) p = Scalar::one(mode()) / p;
    for (long x = 0; x < n; ++x) out.set(a * n + x, a * n + x, p);
  }
  return std::move(out).with_legs({{m, false}, {n, false}});
}

VertexOperator::VertexOperator(long m, long n, Matrix mat)
    : m_(m), n_(n), left_legs_(1), mat_(std::move(mat)), inv_(Matrix::identity(1, mat_.mode())) {
  if (m <= 0 || n <= 0) throw Error(ErrorKind::input, "vertex operator dimensions must be positive");
  if (mat_.rows() != m * n || mat_.cols() != m * n)
    throw Error(ErrorKind::input, "vertex operator matrix must be (m n) x (m n)");
  if (!mat_.has_legs()) mat_ = std::move(mat_).with_legs({{m, false}, {n, false}});
  if (mat_.legs().size() != 2 || mat_.legs()[0].dim != m || mat_.legs()[1].dim != n)
    throw Error(ErrorKind::input, "vertex operator legs must be (m, n)");
  inv_ = inverse(mat_);
}

VertexOperator::VertexOperator(int left_legs, Matrix mat)
    : m_(1), n_(1), left_legs_(left_legs), mat_(std::move(mat)), inv_(Matrix::identity(1, mat_.mode())) {
  if (!mat_.has_legs()) throw Error(ErrorKind::input, "multi-leg vertex operator needs a leg signature");
  const int L = static_cast<int>(mat_.legs().size());
  if (left_legs < 1 || left_legs >= L)
    throw Error(ErrorKind::input, "left leg count out of range");
  for (int k = 0; k < L; ++k)
    (k < left_legs ? m_ : n_) *= mat_.legs()[k].dim;
  inv_ = inverse(mat_);
}

Matrix VertexOperator::coarse_transpose_first() const {
  return coarse_pt(mat_, m_, n_, true).with_legs(flipped_left(mat_.legs(), left_legs_));
}

Matrix VertexOperator::coarse_transpose_second() const {
  return coarse_pt(mat_, m_, n_, false).with_legs(flipped_right(mat_.legs(), left_legs_));
}

VertexOperator make_uhat(const VertexOperator& u) {
  Matrix h = coarse_pt(u.inv(), u.m(), u.n(), true).with_legs(flipped_left(u.mat().legs(), u.left_legs()));
  return VertexOperator(u.left_legs(), std::move(h));
}

VertexOperator make_ubar(const VertexOperator& u) {
  Matrix b = coarse_pt(u.inv(), u.m(), u.n(), false).with_legs(flipped_right(u.mat().legs(), u.left_legs()));
  return VertexOperator(u.left_legs(), std::move(b));
}

StarSequence star_sequence(const VertexOperator& u, int count) {
  StarSequence seq;
  seq.terms.push_back(u);
  for (int k = 1; k <= count; ++k) {
    const VertexOperator& prev = seq.terms.back();
    Matrix next = coarse_pt(prev.inv(), prev.m(), prev.n(), true)
                      .with_legs(flipped_left(prev.mat().legs(), prev.left_legs()));
    InverseResult ir = try_inverse(next);
    if (!ir.inverse) {
      seq.stopped = SingularReport{k, ir.min_pivot};
      return seq;
    }
    seq.terms.emplace_back(prev.left_legs(), std::move(next));
  }
  return seq;
}

bool check_star(const VertexOperator& u) {
  Matrix b = u.coarse_transpose_first();
  InverseResult ir = try_inverse(b);
  if (!ir.inverse) return false;
  Matrix uhat = coarse_pt(u.inv(), u.m(), u.n(), true);
  return matches(uhat, *ir.inverse, 10.0);
}

std::array<bool, 3> twisted_forms(const VertexOperator& u, const TwistQ& q) {
  if (!is_unitary(u.mat())) throw Error(ErrorKind::input, "twisted conditions are defined for unitaries");
  if (q.size() != u.m()) throw Error(ErrorKind::input, "twist size must match the left dimension");
  const long n = u.n();
  Matrix uhat = coarse_pt(u.inv(), u.m(), n, true);
  Matrix b = u.coarse_transpose_first();
  // (i): (Q (x) 1) uhat (Q^-1 (x) 1) unitary
  bool f1 = is_unitary(q.expanded(1, n) * uhat * q.expanded(-1, n));
  // (ii): (Q^-1 (x) 1) ((t (x) id) u) (Q (x) 1) unitary
  bool f2 = is_unitary(q.expanded(-1, n) * b * q.expanded(1, n));
  // (iii): (Q^-2 (x) 1) uhat (Q^2 (x) 1) = ((t (x) id) u)^{-1}
  bool f3 = false;
  InverseResult ir = try_inverse(b);
  if (ir.inverse) f3 = matches(q.expanded(-2, n) * uhat * q.expanded(2, n), *ir.inverse, 10.0);
  return {f1, f2, f3};
}

bool check_twisted(const VertexOperator& u, const TwistQ& q) {
  if (!is_unitary(u.mat())) throw Error(ErrorKind::input, "twisted biunitarity is defined for unitaries");
  if (q.size() != u.m()) throw Error(ErrorKind::input, "twist size must match the left dimension");
  const long m = u.m(), n = u.n();

  bool op_ok = twisted_forms(u, q)[2];

  // Coordinate form: sum_{b,x} q_b conj(u^{bx}_{ay}) u^{bz}_{cx} = q_a d_ac d_yz
  // (the conjugated factor is the written ubar term read against the fixed
  // row-major entry convention).
  bool coord_ok = true;
  const Matrix& M = u.mat();
  for (long a = 0; a < m && coord_ok; ++a)
    for (long c = 0; c < m && coord_ok; ++c)
      for (long y = 0; y < n && coord_ok; ++y)
        for (long z = 0; z < n && coord_ok; ++z) {
          Scalar s = Scalar::zero(u.mode());
          for (long bb = 0; bb < m; ++bb)
            for (long x = 0; x < n; ++x)
              s += q.at(bb) * M.at(bb * n + y, a * n + x).conj() * M.at(bb * n + z, c * n + x);
          Scalar want = (a == c && y == z) ? q.at(a) : Scalar::zero(u.mode());
          if (u.mode() == Mode::exact) {
            coord_ok = s.exact_eq(want);
          } else {
            coord_ok = (s - want).abs() <= 10.0 * tolerance();
          }
        }

  if (op_ok != coord_ok)
    throw Error(ErrorKind::internal, "twisted condition: operator and coordinate forms disagree");
  return op_ok;
}

VertexOperator horizontal_cable(const VertexOperator& u, int i) {
  if (i < 1) throw Error(ErrorKind::input, "cable length must be at least 1");
  if (!check_star(u)) throw Error(ErrorKind::input, "cable requires the star condition");
  const long m = u.m(), n = u.n();
  const Leg vleg = u.mat().legs()[0];
  const Leg wleg = u.mat().legs()[u.left_legs()];

  std::vector<Leg> sig{vleg};
  for (int k = 1; k <= i; ++k) sig.push_back({n, k % 2 == 0 ? !wleg.dual : wleg.dual});

  Matrix ubar = make_ubar(u).mat();
  long D = m;
  for (int k = 0; k < i; ++k) D *= n;
  Matrix prod = Matrix::identity(D, u.mode()).with_legs(sig);
  for (int k = 1; k <= i; ++k) {
    const Matrix& term = (k % 2 == 1) ? u.mat() : ubar;
    prod = (prod * embed_on_legs(term, {1, k + 1}, sig)).with_legs(sig);
  }
  VertexOperator out(1, std::move(prod));
  if (!check_star(out)) throw Error(ErrorKind::internal, "horizontal cable lost the star condition");
  return out;
}

VertexOperator vertical_cable(const VertexOperator& u, int i) {
  if (i < 1) throw Error(ErrorKind::input, "cable length must be at least 1");
  if (!check_star(u)) throw Error(ErrorKind::input, "cable requires the star condition");
  const long m = u.m(), n = u.n();
  const Leg vleg = u.mat().legs()[0];
  const Leg wleg = u.mat().legs()[u.left_legs()];

  std::vector<Leg> sig;
  for (int k = 1; k <= i; ++k) sig.push_back({m, k % 2 == 0 ? !vleg.dual : vleg.dual});
  sig.push_back(wleg);

  Matrix uhat = make_uhat(u).mat();
  long D = n;
  for (int k = 0; k < i; ++k) D *= m;
  Matrix prod = Matrix::identity(D, u.mode()).with_legs(sig);
  for (int k = 1; k <= i; ++k) {
    const Matrix& term = (k % 2 == 1) ? u.mat() : uhat;
    prod = (prod * embed_on_legs(term, {k, i + 1}, sig)).with_legs(sig);
  }
  VertexOperator out(i, std::move(prod));
  if (!check_star(out)) throw Error(ErrorKind::internal, "vertical cable lost the star condition");
  return out;
}

VertexOperator make_uprime(const VertexOperator& u) {
  return horizontal_cable(u, 2);
}

bool twisted_sequence_check(const VertexOperator& u, const TwistQ& q, int count) {
  if (count < 1) throw Error(ErrorKind::input, "twisted sequence check needs count >= 1");
  if (!check_twisted(u, q)) throw Error(ErrorKind::input, "twisted condition fails");
  const long n = u.n();
  StarSequence seq = star_sequence(u, 2 * count + 1);
  if (seq.stopped) return false;  // cannot happen for a twisted unitary
  for (int k = 1; k <= count; ++k) {
    Matrix even = q.expanded(2 * k, n) * u.mat() * q.expanded(-2 * k, n);
    if (!matches(seq.terms[2 * k].mat(), even, 10.0)) return false;
    // Q is diagonal, so Q^t = Q.
    Matrix odd = q.expanded(-2 * k, n) * seq.terms[1].mat() * q.expanded(2 * k, n);
    if (!matches(seq.terms[2 * k + 1].mat(), odd, 10.0)) return false;
  }
  return true;
}

namespace {

// Exact square root of a positive rational, when it exists.
std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (q < 0) return std::nullopt;
  mpz_class num = q.get_num(), den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return mpq_class(rn) / mpq_class(rd);
}

bool vector_is_constant(const std::vector<Scalar>& v) {
  for (const Scalar& s : v)
    if (!s.eq(v[0])) return false;
  return true;
}

std::optional<TwistQ> twist_from_weights(const VertexOperator& u, const std::vector<Scalar>& d) {
  // d holds candidate values of q_a^2; all must be positive with a usable
  // square root.
  std::vector<Scalar> q;
  for (const Scalar& w : d) {
    if (!scalar_is_positive_real(w)) return std::nullopt;
    if (w.mode() == Mode::exact) {
      auto r = rational_sqrt(w.re());
      if (!r) return std::nullopt;
      q.push_back(Scalar::exact(*r));
    } else {
      q.push_back(Scalar::approx(std::sqrt(w.value().real())));
    }
  }
  TwistQ tq(std::move(q));
  if (!check_twisted(u, tq)) return std::nullopt;
  return tq;
}

}  // namespace

std::optional<TwistQ> find_twist(const VertexOperator& u) {
  if (!is_unitary(u.mat())) throw Error(ErrorKind::input, "twist search is defined for unitaries");
  const long m = u.m(), n = u.n();
  const Mode mode = u.mode();
  Matrix b = u.coarse_transpose_first();

  // For unitary u the twisted condition is linear in the diagonal weights
  // d_a = q_a^2:  B* (diag(d) (x) 1) B = diag(d) (x) 1.  Solve for d, adding
  // each row together with its conjugate so real solutions span the kernel.
  Matrix bstar = adjoint(b);
  KernelSolver ks(m, mode);
  const long D = m * n;
  for (long r = 0; r < D; ++r)
    for (long c = 0; c < D; ++c) {
      SparseRow row, crow;
      for (long a = 0; a < m; ++a) {
        // coefficient of d_a in [B* (E_aa (x) 1) B - E_aa-part](r,c)
        Scalar coef = Scalar::zero(mode);
        for (long x = 0; x < n; ++x) coef += bstar.at(r, a * n + x) * b.at(a * n + x, c);
        if (r == c && r / n == a) coef -= Scalar::one(mode);
        if (!coef.is_zero()) {
          row.emplace_back(a, coef);
          crow.emplace_back(a, coef.conj());
        }
      }
      ks.add_row(std::move(row));
      ks.add_row(std::move(crow));
    }

  auto basis = ks.kernel_basis();
  // Candidate weight vectors: real and imaginary parts of the kernel basis,
  // then square-weighted combinations so exact square roots exist.
  std::vector<std::vector<Scalar>> candidates;
  auto push_part = [&](const std::vector<Scalar>& v, bool real_part, bool negate) {
    std::vector<Scalar> w;
    bool all_zero = true;
    for (const Scalar& s : v) {
      Scalar p = mode == Mode::exact
                     ? Scalar::exact(real_part ? s.re() : s.im())
                     : Scalar::approx(real_part ? s.value().real() : s.value().imag());
      if (negate) p = -p;
      if (!p.is_zero()) all_zero = false;
      w.push_back(std::move(p));
    }
    if (!all_zero) candidates.push_back(std::move(w));
  };
  for (const auto& v : basis) {
    push_part(v, true, false);
    push_part(v, true, true);
    push_part(v, false, false);
    push_part(v, false, true);
  }

  std::vector<std::vector<Scalar>> nonneg;
  for (const auto& w : candidates) {
    bool ok = true;
    for (const Scalar& s : w) {
      bool nn = s.mode() == Mode::exact ? (s.im() == 0 && s.re() >= 0)
                                        : (std::abs(s.value().imag()) <= tolerance() &&
                                           s.value().real() >= -tolerance());
      if (!nn) ok = false;
    }
    if (ok) nonneg.push_back(w);
  }

  // Single candidates first (skipping the constant vector, which is Q = id),
  // then square-weighted sums of the nonnegative ones.
  for (const auto& w : nonneg) {
    bool positive = std::all_of(w.begin(), w.end(), scalar_is_positive_real);
    if (positive && !vector_is_constant(w))
      if (auto t = twist_from_weights(u, w)) return t;
  }
  if (nonneg.size() >= 2) {
    std::vector<Scalar> sum(m, Scalar::zero(mode));
    long k = 1;
    for (const auto& w : nonneg) {
      Scalar weight = Scalar::integer(k * k, mode);
      for (long a = 0; a < m; ++a) sum[a] += weight * w[a];
      ++k;
    }
    bool positive = std::all_of(sum.begin(), sum.end(), scalar_is_positive_real);
    if (positive && !vector_is_constant(sum))
      if (auto t = twist_from_weights(u, sum)) return t;
  }
  return std::nullopt;
}

}  // namespace vmlat
