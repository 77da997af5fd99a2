#include "vmlat/algebra_structure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace vmlat {

namespace {

std::vector<Scalar> flat(const Matrix& x) {
  std::vector<Scalar> v;
  v.reserve(x.rows() * x.cols());
  for (long r = 0; r < x.rows(); ++r)
    for (long c = 0; c < x.cols(); ++c) v.push_back(x.at(r, c));
  return v;
}

Matrix unflat(const std::vector<Scalar>& v, long d, Mode mode) {
  Matrix x(d, d, mode);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c)
      if (!v[r * d + c].is_zero()) x.set(r, c, v[r * d + c]);
  return x;
}

Matrix to_approx(const Matrix& x) {
  if (x.mode() == Mode::approx) return x;
  Matrix out(x.rows(), x.cols(), Mode::approx);
  for (long r = 0; r < x.rows(); ++r)
    for (long c = 0; c < x.cols(); ++c) {
      if (x.at(r, c).is_zero()) continue;
      out.set(r, c, Scalar::approx(x.at(r, c).to_complex()));
    }
  return out;
}

bool is_self_adjoint(const Matrix& x) { return matches(x, adjoint(x), 10.0); }

long rand_coeff(std::mt19937_64& rng) { return 1 + static_cast<long>(rng() % 97); }

// ---- spectral splitting ----------------------------------------------

struct EigenSplit {
  std::vector<Matrix> projections;  // eigenvalue-ascending order
};

// Minimal polynomial coefficients (monic, lowest degree first) of an exact
// matrix, found from the first linear dependence among its powers.
std::vector<Scalar> min_poly_exact(const Matrix& h) {
  const long d = h.rows();
  std::vector<std::vector<Scalar>> powers;
  Matrix p = Matrix::identity(d, Mode::exact);
  SpanBasis span(d * d, Mode::exact);
  while (true) {
    std::vector<Scalar> f = flat(p);
    if (!span.add(sparse_from_dense(f))) {
      powers.push_back(std::move(f));
      break;
    }
    powers.push_back(std::move(f));
    p = p * h;
  }
  const long t = static_cast<long>(powers.size()) - 1;  // dependence degree
  KernelSolver ks(t + 1, Mode::exact);
  for (long q = 0; q < d * d; ++q) {
    SparseRow row;
    for (long k = 0; k <= t; ++k)
      if (!powers[k][q].is_zero()) row.emplace_back(k, powers[k][q]);
    ks.add_row(std::move(row));
  }
  auto basis = ks.kernel_basis();
  if (basis.empty()) throw Error(ErrorKind::internal, "minimal polynomial solve failed");
  std::vector<Scalar> coeffs = basis[0];
  // normalize monic on the top nonzero coefficient (= degree t by minimality)
  Scalar top = coeffs[t];
  if (top.is_zero()) throw Error(ErrorKind::internal, "minimal polynomial degree mismatch");
  for (Scalar& c : coeffs) c = c / top;
  return coeffs;
}

// Exact spectral projections of a self-adjoint exact matrix with rational
// spectrum. The matrix is scaled to Gaussian-integer entries, whose monic
// integer minimal polynomial can only have integer rational roots; those are
// enumerated inside a row-sum bound. Returns nothing when the spectrum is
// not rational (callers fall back to approx splitting).
std::optional<EigenSplit> eigensplit_exact(const Matrix& h) {
  const long d = h.rows();
  mpz_class scale = 1;
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) {
      mpz_class dr = h.at(r, c).re().get_den(), di = h.at(r, c).im().get_den();
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), dr.get_mpz_t());
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), di.get_mpz_t());
    }
  Matrix hi = Scalar::exact(mpq_class(scale)) * h;

  std::vector<Scalar> coeffs = min_poly_exact(hi);
  const long deg = static_cast<long>(coeffs.size()) - 1;
  std::vector<mpz_class> a(deg + 1);
  for (long k = 0; k <= deg; ++k) {
    const Scalar& c = coeffs[k];
    if (c.im() != 0 || c.re().get_den() != 1) return std::nullopt;  // not an integer polynomial
    a[k] = c.re().get_num();
  }

  // row-sum bound on |eigenvalue|
  mpz_class bound = 0;
  for (long r = 0; r < d; ++r) {
    mpz_class row_sum = 0;
    for (long c = 0; c < d; ++c) {
      row_sum += abs(hi.at(r, c).re().get_num()) / hi.at(r, c).re().get_den();
      row_sum += abs(hi.at(r, c).im().get_num()) / hi.at(r, c).im().get_den();
      row_sum += 2;  // cover the floored fractional parts
    }
    if (row_sum > bound) bound = row_sum;
  }
  if (bound > 5'000'000) return std::nullopt;

  auto horner = [&](const mpz_class& z) {
    mpz_class acc = a[deg];
    for (long k = deg - 1; k >= 0; --k) acc = acc * z + a[k];
    return acc;
  };
  mpz_class at1 = horner(1), atm1 = horner(-1);
  std::vector<mpz_class> roots;
  const long b = bound.get_si();
  for (long z = -b; z <= b && static_cast<long>(roots.size()) < deg; ++z) {
    mpz_class zz(z);
    if (z != 0 && a[0] != 0 && !mpz_divisible_p(a[0].get_mpz_t(), zz.get_mpz_t())) continue;
    if (z != 1 && at1 != 0) {
      mpz_class one_minus(1 - z);
      if (!mpz_divisible_p(at1.get_mpz_t(), one_minus.get_mpz_t())) continue;
    }
    if (z != -1 && atm1 != 0) {
      mpz_class mone_minus(-1 - z);
      if (!mpz_divisible_p(atm1.get_mpz_t(), mone_minus.get_mpz_t())) continue;
    }
    if (horner(zz) == 0) roots.push_back(zz);
  }
  if (static_cast<long>(roots.size()) != deg) return std::nullopt;

  std::sort(roots.begin(), roots.end());
  EigenSplit out;
  for (long k = 0; k < deg; ++k) {
    Matrix p = Matrix::identity(d, Mode::exact);
    for (long l = 0; l < deg; ++l) {
      if (l == k) continue;
      Matrix term = hi - Scalar::exact(mpq_class(roots[l])) * Matrix::identity(d, Mode::exact);
      Scalar denom = Scalar::exact(mpq_class(roots[k] - roots[l]));
      p = (Scalar::one(Mode::exact) / denom) * (p * term);
    }
    out.projections.push_back(std::move(p));
  }
  return out;
}

// Cyclic Jacobi diagonalization for approx-mode self-adjoint matrices;
// deterministic sweep order, eigenvalues clustered by gap.
EigenSplit eigensplit_approx(const Matrix& h) {
  const long d = h.rows();
  std::vector<std::vector<std::complex<double>>> a(d, std::vector<std::complex<double>>(d)),
      v(d, std::vector<std::complex<double>>(d, 0.0));
  double scale = 1.0;
  for (long r = 0; r < d; ++r) {
    v[r][r] = 1.0;
    for (long c = 0; c < d; ++c) {
      a[r][c] = h.at(r, c).to_complex();
      scale = std::max(scale, std::abs(a[r][c]));
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (long p = 0; p < d; ++p)
      for (long q = p + 1; q < d; ++q) off = std::max(off, std::abs(a[p][q]));
    if (off <= 1e-14 * scale) break;
    for (long p = 0; p < d; ++p)
      for (long q = p + 1; q < d; ++q) {
        std::complex<double> apq = a[p][q];
        double rho = std::abs(apq);
        if (rho <= 1e-15 * scale) continue;
        std::complex<double> phase = apq / rho;
        double app = a[p][p].real(), aqq = a[q][q].real();
        double theta = (aqq - app) / (2.0 * rho);
        double t = theta >= 0 ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                              : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        std::complex<double> s = t * c * phase;
        // columns: B = A J with J[p][p]=c, J[p][q]=s, J[q][p]=-conj(s), J[q][q]=c
        for (long k = 0; k < d; ++k) {
          auto akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - std::conj(s) * akq;
          a[k][q] = s * akp + c * akq;
          auto vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - std::conj(s) * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
        // rows: A = J^* B
        for (long k = 0; k < d; ++k) {
          auto apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = std::conj(s) * apk + c * aqk;
        }
      }
  }
  std::vector<std::pair<double, long>> eigs;
  for (long k = 0; k < d; ++k) eigs.emplace_back(a[k][k].real(), k);
  std::sort(eigs.begin(), eigs.end());

  double cluster_gap = std::max(1e4 * tolerance(), 1e-10) * std::max(1.0, std::abs(eigs.back().first));
  EigenSplit out;
  std::size_t start = 0;
  for (std::size_t k = 1; k <= eigs.size(); ++k) {
    if (k < eigs.size() && eigs[k].first - eigs[k - 1].first <= cluster_gap) continue;
    Matrix p(d, d, Mode::approx);
    for (std::size_t t = start; t < k; ++t) {
      long col = eigs[t].second;
      for (long r = 0; r < d; ++r)
        for (long c = 0; c < d; ++c)
          p.set(r, c, p.at(r, c) + Scalar::approx(v[r][col] * std::conj(v[c][col])));
    }
    out.projections.push_back(std::move(p));
    start = k;
  }
  return out;
}

std::optional<EigenSplit> eigensplit(const Matrix& h) {
  if (h.mode() == Mode::exact) return eigensplit_exact(h);
  return eigensplit_approx(h);
}

// ---- center ----------------------------------------------------------

std::vector<Matrix> center_of(const MatrixStarAlgebra& alg) {
  const long d = alg.ambient();
  const Mode mode = alg.mode();
  KernelSolver ks(d * d, mode);
  std::map<long, Scalar> row;
  for (const Matrix& b : alg.basis())
    for (long r = 0; r < d; ++r)
      for (long s = 0; s < d; ++s) {
        row.clear();
        for (long c = 0; c < d; ++c) {
          if (!b.at(c, s).is_zero()) {
            auto [it, fresh] = row.emplace(r * d + c, b.at(c, s));
            if (!fresh) it->second += b.at(c, s);
          }
          if (!b.at(r, c).is_zero()) {
            auto [it, fresh] = row.emplace(c * d + s, -b.at(r, c));
            if (!fresh) it->second -= b.at(r, c);
          }
        }
        SparseRow sr;
        for (auto& [k, val] : row)
          if (!val.is_zero()) sr.emplace_back(k, val);
        ks.add_row(std::move(sr));
      }

  std::vector<std::vector<Scalar>> commutant = ks.kernel_basis();
  // intersect with the algebra: kernel of beta -> residual(sum beta_t z_t)
  std::vector<SparseRow> residuals;
  bool all_inside = true;
  for (const auto& z : commutant) {
    SparseRow rem = alg.span().reduce(sparse_from_dense(z));
    if (!rem.empty()) all_inside = false;
    residuals.push_back(std::move(rem));
  }
  std::vector<std::vector<Scalar>> combos;
  if (all_inside) {
    combos = std::move(commutant);
  } else {
    KernelSolver inter(static_cast<long>(commutant.size()), mode);
    std::map<long, std::map<long, Scalar>> by_coord;
    for (std::size_t t = 0; t < residuals.size(); ++t)
      for (const auto& [coord, val] : residuals[t]) by_coord[coord][t] = val;
    for (const auto& [coord, entries] : by_coord) {
      SparseRow r(entries.begin(), entries.end());
      inter.add_row(std::move(r));
    }
    for (const auto& beta : inter.kernel_basis()) {
      std::vector<Scalar> v(d * d, Scalar::zero(mode));
      for (std::size_t t = 0; t < commutant.size(); ++t) {
        if (beta[t].is_zero()) continue;
        for (long q = 0; q < d * d; ++q) v[q] += beta[t] * commutant[t][q];
      }
      combos.push_back(std::move(v));
    }
  }
  std::vector<Matrix> center;
  for (const auto& v : combos) center.push_back(unflat(v, d, mode));
  return center;
}

Matrix random_self_adjoint_combo(const std::vector<Matrix>& family, std::mt19937_64& rng) {
  const Mode mode = family[0].mode();
  const long d = family[0].rows();
  Matrix h(d, d, mode);
  const Scalar iu = Scalar::imaginary_unit(mode);
  for (const Matrix& z : family) {
    Matrix za = adjoint(z);
    Scalar c1 = Scalar::integer(rand_coeff(rng), mode);
    Scalar c2 = Scalar::integer(rand_coeff(rng), mode);
    h = h + c1 * (z + za) + c2 * (iu * (z - za));
  }
  return h;
}

}  // namespace

// ---- MatrixStarAlgebra -----------------------------------------------

MatrixStarAlgebra::MatrixStarAlgebra(long ambient_dim, std::vector<Matrix> basis)
    : ambient_(ambient_dim), basis_(std::move(basis)), span_(std::max<long>(1, ambient_dim * ambient_dim), basis_.empty() ? Mode::exact : basis_[0].mode()) {
  if (basis_.empty()) throw Error(ErrorKind::input, "empty algebra basis");
  const Mode mode = basis_[0].mode();
  for (const Matrix& b : basis_) {
    if (b.rows() != ambient_ || b.cols() != ambient_)
      throw Error(ErrorKind::input, "algebra basis element has wrong ambient dimension");
    if (b.mode() != mode) throw Error(ErrorKind::mode_mismatch, "mixed-mode algebra basis");
    if (!span_.add(matrix_row(b)))
      throw Error(ErrorKind::input, "algebra basis is linearly dependent");
  }
  if (!span_.contains(matrix_row(Matrix::identity(ambient_, mode))))
    throw Error(ErrorKind::input, "algebra does not contain the unit");
  for (const Matrix& b : basis_)
    if (!span_.contains(matrix_row(adjoint(b))))
      throw Error(ErrorKind::input, "algebra basis is not closed under adjoints");

  // Product closure: all pairs when cheap, a fixed seeded sample otherwise.
  const long B = dim();
  const double cost = double(B) * double(B) * double(ambient_) * double(ambient_) * double(ambient_);
  std::vector<std::pair<long, long>> pairs;
  if (cost <= double(1L << 26)) {
    for (long i = 0; i < B; ++i)
      for (long j = 0; j < B; ++j) pairs.emplace_back(i, j);
  } else {
    std::mt19937_64 rng(0x5eed);
    for (int k = 0; k < 64; ++k)
      pairs.emplace_back(static_cast<long>(rng() % B), static_cast<long>(rng() % B));
  }
  for (auto [i, j] : pairs)
    if (!span_.contains(matrix_row(basis_[i] * basis_[j])))
      throw Error(ErrorKind::input, "algebra basis is not closed under products");
}

bool MatrixStarAlgebra::contains(const Matrix& x) const { return span_.contains(matrix_row(x)); }

// ---- decompose -------------------------------------------------------

std::vector<std::pair<long, long>> SemisimpleDecomposition::block_multiset() const {
  std::vector<std::pair<long, long>> v;
  for (const Block& b : blocks) v.emplace_back(b.d, b.mult);
  std::sort(v.begin(), v.end());
  return v;
}

namespace {

// Builds blocks from candidate central projections; nullopt when the split
// is not a valid decomposition (caller retries with a fresh random element).
std::optional<SemisimpleDecomposition> blocks_from_projections(
    const MatrixStarAlgebra& alg, const std::vector<Matrix>& basis_view,
    const std::vector<Matrix>& projections, Mode mode) {
  const long D = basis_view[0].rows();
  SemisimpleDecomposition dec;
  Matrix sum(D, D, mode);
  for (const Matrix& p : projections) {
    if (!matches(p * p, p, 100.0) || !is_self_adjoint(p)) return std::nullopt;
    sum = sum + p;
    SpanBasis corner(D * D, mode);
    for (const Matrix& b : basis_view) corner.add(matrix_row(p * b * p));
    const long r = corner.rank();
    const long d = std::lround(std::sqrt(double(r)));
    if (d * d != r) return std::nullopt;
    Scalar tr = trace(p);
    long mult = 0;
    if (mode == Mode::exact) {
      mpq_class q = tr.re() / d;
      if (tr.im() != 0 || q.get_den() != 1 || q <= 0) return std::nullopt;
      mult = static_cast<long>(q.get_num().get_si());
    } else {
      double q = tr.value().real() / double(d);
      mult = std::lround(q);
      if (mult <= 0 || std::abs(q - double(mult)) > 1e4 * tolerance()) return std::nullopt;
    }
    dec.blocks.push_back(Block{d, mult, p});
  }
  if (!matches(sum, Matrix::identity(D, mode), 100.0)) return std::nullopt;
  long dim_sum = 0, amb_sum = 0;
  for (const Block& b : dec.blocks) {
    dim_sum += b.d * b.d;
    amb_sum += b.d * b.mult;
  }
  if (dim_sum != alg.dim() || amb_sum != D) return std::nullopt;
  std::stable_sort(dec.blocks.begin(), dec.blocks.end(),
                   [](const Block& a, const Block& b) {
                     return std::pair(a.d, a.mult) < std::pair(b.d, b.mult);
                   });
  return dec;
}

}  // namespace

SemisimpleDecomposition decompose(const MatrixStarAlgebra& alg, std::uint64_t seed) {
  std::vector<Matrix> center = center_of(alg);
  const std::size_t nblocks = center.size();

  auto attempt_mode = [&](Mode mode, std::uint64_t attempt) -> std::optional<SemisimpleDecomposition> {
    std::vector<Matrix> center_view, basis_view;
    for (const Matrix& z : center)
      center_view.push_back(mode == alg.mode() ? z : to_approx(z));
    for (const Matrix& b : alg.basis())
      basis_view.push_back(mode == alg.mode() ? b : to_approx(b));
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (attempt + 1)));
    Matrix h = random_self_adjoint_combo(center_view, rng);
    auto split = eigensplit(h);
    if (!split) return std::nullopt;
    if (split->projections.size() != nblocks) return std::nullopt;  // eigenvalue collision
    return blocks_from_projections(alg, basis_view, split->projections, mode);
  };

  if (alg.mode() == Mode::exact) {
    for (std::uint64_t a = 0; a < 8; ++a)
      if (auto dec = attempt_mode(Mode::exact, a)) return *dec;
    for (std::uint64_t a = 0; a < 8; ++a)
      if (auto dec = attempt_mode(Mode::approx, a)) {
        dec->approx_fallback = true;
        dec->warning = "exact spectral splitting unavailable; decomposed in approx arithmetic";
        return *dec;
      }
  } else {
    for (std::uint64_t a = 0; a < 8; ++a)
      if (auto dec = attempt_mode(Mode::approx, a)) return *dec;
  }
  throw Error(ErrorKind::numerical,
              "semisimple decomposition failed after 8 seeds (center dimension " +
                  std::to_string(nblocks) + ")");
}

// ---- inclusion matrices ----------------------------------------------

namespace {

long corner_rank(const std::vector<Matrix>& basis, const Matrix& p) {
  const long D = p.rows();
  SpanBasis corner(D * D, p.mode());
  for (const Matrix& b : basis) corner.add(matrix_row(p * b * p));
  return corner.rank();
}

// Descends from p to a minimal projection of the algebra by repeatedly
// splitting a non-scalar self-adjoint corner element.
std::optional<Matrix> minimal_projection(const std::vector<Matrix>& basis, Matrix p,
                                         std::mt19937_64& rng) {
  const long D = p.rows();
  const Mode mode = p.mode();
  const Scalar iu = Scalar::imaginary_unit(mode);
  for (int round = 0; round < 64; ++round) {
    if (corner_rank(basis, p) == 1) return p;
    // candidate non-scalar self-adjoint corner elements
    std::vector<Matrix> candidates;
    for (const Matrix& b : basis) {
      Matrix x = p * b * p;
      candidates.push_back(x + adjoint(x));
      candidates.push_back(iu * (x - adjoint(x)));
    }
    {
      Matrix r(D, D, mode);
      for (const Matrix& b : basis) r = r + Scalar::integer(rand_coeff(rng), mode) * (p * b * p);
      candidates.push_back(r + adjoint(r));
    }
    bool advanced = false;
    for (const Matrix& y : candidates) {
      SpanBasis scalar_span(D * D, mode);
      scalar_span.add(matrix_row(p));
      if (y == Matrix::zero(D, D, mode) || scalar_span.contains(matrix_row(y))) continue;
      auto split = eigensplit(y);
      if (!split || split->projections.size() < 2) continue;
      // sub-projections inside the corner, smallest positive trace first
      std::optional<Matrix> best;
      double best_trace = 0.0;
      for (const Matrix& e : split->projections) {
        Matrix f = e * p;
        if (!matches(f, p * e, 100.0)) continue;  // should commute
        if (!matches(f * f, f, 100.0) || !is_self_adjoint(f)) continue;
        double tr = trace(f).to_complex().real();
        if (tr < 0.5) continue;  // zero piece
        if (tr > trace(p).to_complex().real() - 0.5) continue;  // no progress
        if (!best || tr < best_trace) {
          best = f;
          best_trace = tr;
        }
      }
      if (best) {
        p = *best;
        advanced = true;
        break;
      }
    }
    if (!advanced) return std::nullopt;  // exact splitting unavailable
  }
  return std::nullopt;
}

long integral_entry(const Scalar& v, Mode mode) {
  if (mode == Mode::exact) {
    if (v.im() != 0 || v.re().get_den() != 1)
      throw Error(ErrorKind::numerical, "inclusion multiplicity not integral: " + v.str());
    return static_cast<long>(v.re().get_num().get_si());
  }
  double x = v.value().real();
  long n = std::lround(x);
  if (std::abs(v.value().imag()) > 1e4 * tolerance() ||
      std::abs(x - double(n)) > 1e4 * tolerance() * std::max(1.0, std::abs(x)))
    throw Error(ErrorKind::numerical, "inclusion multiplicity not integral: " + std::to_string(x));
  return n;
}

}  // namespace

InclusionMatrix inclusion_matrix(const MatrixStarAlgebra& small,
                                 const SemisimpleDecomposition& small_dec,
                                 const MatrixStarAlgebra& big,
                                 const SemisimpleDecomposition& big_dec, std::uint64_t seed) {
  if (small.ambient() != big.ambient())
    throw Error(ErrorKind::input, "inclusion requires a common ambient dimension");
  for (const Matrix& b : small.basis())
    if (!big.contains(b)) throw Error(ErrorKind::input, "not an inclusion of algebras");

  // Fall back to approx arithmetic when any decomposition did.
  const Mode mode = (small_dec.approx_fallback || big_dec.approx_fallback ||
                     small.mode() == Mode::approx)
                        ? Mode::approx
                        : Mode::exact;
  auto view = [&](const Matrix& x) { return mode == x.mode() ? x : to_approx(x); };

  std::vector<Matrix> small_basis;
  for (const Matrix& b : small.basis()) small_basis.push_back(view(b));

  InclusionMatrix lambda;
  for (std::size_t k = 0; k < small_dec.blocks.size(); ++k) {
    std::mt19937_64 rng(seed ^ (0xD1B54A32D192ED03ULL * (k + 1)));
    Matrix pk = view(small_dec.blocks[k].p);
    std::optional<Matrix> fk;
    if (small_dec.blocks[k].d == 1) {
      fk = pk;  // the central projection is already minimal
    } else {
      fk = minimal_projection(small_basis, pk, rng);
      if (!fk && mode == Mode::exact) {
        // retry the whole computation in approx arithmetic
        SemisimpleDecomposition sd = small_dec;
        sd.approx_fallback = true;
        return inclusion_matrix(small, sd, big, big_dec, seed);
      }
      if (!fk) throw Error(ErrorKind::numerical, "minimal projection search failed");
    }
    std::vector<long> row;
    for (const Block& bl : big_dec.blocks) {
      Matrix ql = view(bl.p);
      Scalar tl = trace(ql) / Scalar::integer(bl.d, mode);
      Scalar v = trace(*fk * ql) / tl;
      long entry = integral_entry(v, mode);
      if (entry < 0) throw Error(ErrorKind::numerical, "negative inclusion multiplicity");
      row.push_back(entry);
    }
    lambda.entries.push_back(std::move(row));
  }

  // dimension bookkeeping: Lambda^t d_small = d_big for a unital inclusion
  for (std::size_t l = 0; l < big_dec.blocks.size(); ++l) {
    long sum = 0;
    for (std::size_t k = 0; k < small_dec.blocks.size(); ++k)
      sum += lambda.entries[k][l] * small_dec.blocks[k].d;
    if (sum != big_dec.blocks[l].d)
      throw Error(ErrorKind::numerical, "inclusion matrix fails dimension bookkeeping");
  }
  return lambda;
}

// ---- Bratteli chain and principal graph -------------------------------

BratteliData bratteli(const std::vector<const LatticeCell*>& row, long m, std::uint64_t seed) {
  if (row.empty()) throw Error(ErrorKind::input, "empty tower");
  BratteliData data;
  std::vector<MatrixStarAlgebra> algebras;
  for (const LatticeCell* cell : row) {
    long amb = cell->basis[0].rows();
    algebras.emplace_back(amb, cell->basis);
    data.levels.push_back(decompose(algebras.back(), seed));
  }
  for (std::size_t k = 0; k + 1 < algebras.size(); ++k) {
    const Mode mode = algebras[k].mode();
    std::vector<Matrix> embedded;
    for (const Matrix& b : algebras[k].basis())
      embedded.push_back(kron(b, Matrix::identity(m, mode)));
    MatrixStarAlgebra small_emb(algebras[k].ambient() * m, std::move(embedded));
    // the embedding is a *-isomorphism onto its image: blocks carry over with
    // multiplicities scaled by m, in the same canonical order
    SemisimpleDecomposition emb_dec;
    emb_dec.approx_fallback = data.levels[k].approx_fallback;
    for (const Block& bl : data.levels[k].blocks)
      emb_dec.blocks.push_back(Block{bl.d, bl.mult * m, kron(bl.p, Matrix::identity(m, bl.p.mode()))});
    data.steps.push_back(inclusion_matrix(small_emb, emb_dec, algebras[k + 1], data.levels[k + 1], seed));
  }
  return data;
}

namespace {

InclusionMatrix transpose_of(const InclusionMatrix& lam) {
  InclusionMatrix t;
  if (lam.rows() == 0) return t;
  t.entries.assign(lam.cols(), std::vector<long>(lam.rows(), 0));
  for (long r = 0; r < lam.rows(); ++r)
    for (long c = 0; c < lam.cols(); ++c) t.entries[c][r] = lam.entries[r][c];
  return t;
}

bool same_up_to_sorted_rows(const InclusionMatrix& a, const InclusionMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.entries == b.entries) return true;
  auto key = [](const InclusionMatrix& m) {
    auto rows = m.entries;
    for (auto& r : rows) std::sort(r.begin(), r.end());
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  return key(a) == key(b);
}

double norm_squared(const InclusionMatrix& lam) {
  // power iteration on Lambda^t Lambda, fixed start and iteration count
  const long n = lam.cols();
  if (n == 0) return 0.0;
  std::vector<double> x(n, 1.0);
  double ev = 0.0;
  for (int it = 0; it < 200; ++it) {
    std::vector<double> y(lam.rows(), 0.0);
    for (long r = 0; r < lam.rows(); ++r)
      for (long c = 0; c < n; ++c) y[r] += double(lam.entries[r][c]) * x[c];
    std::vector<double> z(n, 0.0);
    for (long r = 0; r < lam.rows(); ++r)
      for (long c = 0; c < n; ++c) z[c] += double(lam.entries[r][c]) * y[r];
    double nrm = 0.0;
    for (double v : z) nrm = std::max(nrm, std::abs(v));
    if (nrm == 0.0) return 0.0;
    for (double& v : z) v /= nrm;
    ev = nrm;
    x = std::move(z);
  }
  return ev;
}

bool bipartite_connected(const InclusionMatrix& lam) {
  const long R = lam.rows(), C = lam.cols();
  std::vector<bool> seen_r(R, false), seen_c(C, false);
  std::vector<long> stack{0};
  seen_r[0] = true;
  while (!stack.empty()) {
    long v = stack.back();
    stack.pop_back();
    if (v < R) {
      for (long c = 0; c < C; ++c)
        if (lam.entries[v][c] > 0 && !seen_c[c]) {
          seen_c[c] = true;
          stack.push_back(R + c);
        }
    } else {
      long c = v - R;
      for (long r = 0; r < R; ++r)
        if (lam.entries[r][c] > 0 && !seen_r[r]) {
          seen_r[r] = true;
          stack.push_back(r);
        }
    }
  }
  return std::all_of(seen_r.begin(), seen_r.end(), [](bool b) { return b; }) &&
         std::all_of(seen_c.begin(), seen_c.end(), [](bool b) { return b; });
}

}  // namespace

PrincipalGraph principal_graph(const BratteliData& data) {
  PrincipalGraph g;
  if (data.steps.empty()) throw Error(ErrorKind::input, "principal graph needs at least one step");
  int stable = -1;
  for (std::size_t s = 1; s < data.steps.size(); ++s) {
    if (same_up_to_sorted_rows(data.steps[s], transpose_of(data.steps[s - 1]))) {
      stable = static_cast<int>(s);
      break;
    }
  }
  g.stabilized = stable >= 0;
  g.stabilization_step = stable;
  const std::size_t use = g.stabilized ? stable - 1 : data.steps.size() - 1;
  g.graph = data.steps[use];
  for (const Block& b : data.levels[use].blocks) g.even_blocks.emplace_back(b.d, b.mult);
  for (const Block& b : data.levels[use + 1].blocks) g.odd_blocks.emplace_back(b.d, b.mult);
  g.index_estimate = norm_squared(g.graph);
  g.connected = bipartite_connected(g.graph);
  return g;
}

std::string bratteli_dot(const BratteliData& data) {
  std::ostringstream os;
  os << "digraph bratteli {\n  rankdir=LR;\n  node [shape=circle fontsize=10];\n";
  for (std::size_t lv = 0; lv < data.levels.size(); ++lv)
    for (std::size_t b = 0; b < data.levels[lv].blocks.size(); ++b)
      os << "  L" << lv << "B" << b << " [label=\"d=" << data.levels[lv].blocks[b].d
         << " m=" << data.levels[lv].blocks[b].mult << "\"];\n";
  for (std::size_t s = 0; s < data.steps.size(); ++s)
    for (long r = 0; r < data.steps[s].rows(); ++r)
      for (long c = 0; c < data.steps[s].cols(); ++c) {
        long e = data.steps[s].entries[r][c];
        if (e == 0) continue;
        os << "  L" << s << "B" << r << " -> L" << (s + 1) << "B" << c;
        if (e > 1) os << " [label=\"" << e << "\"]";
        os << ";\n";
      }
  os << "}\n";
  return os.str();
}

std::string principal_graph_dot(const PrincipalGraph& g) {
  std::ostringstream os;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", g.index_estimate);
  os << "graph principal {\n  label=\"" << (g.stabilized ? "stabilized" : "unstabilized")
     << ", index estimate " << buf << "\";\n  node [shape=circle fontsize=10];\n";
  for (std::size_t b = 0; b < g.even_blocks.size(); ++b)
    os << "  E" << b << " [label=\"d=" << g.even_blocks[b].first << "\"];\n";
  for (std::size_t b = 0; b < g.odd_blocks.size(); ++b)
    os << "  O" << b << " [label=\"d=" << g.odd_blocks[b].first << "\" style=filled fillcolor=gray90];\n";
  for (long r = 0; r < g.graph.rows(); ++r)
    for (long c = 0; c < g.graph.cols(); ++c) {
      long e = g.graph.entries[r][c];
      if (e == 0) continue;
      os << "  E" << r << " -- O" << c;
      if (e > 1) os << " [label=\"" << e << "\"]";
      os << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace vmlat
