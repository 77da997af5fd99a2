#include "vmlat/fixtures.hpp"

#include <cmath>
#include <random>

namespace vmlat::fixtures {

namespace {

Matrix from_ints(long d, const std::vector<long>& v) {
  Matrix m(d, d, Mode::exact);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c)
      if (v[r * d + c] != 0) m.set(r, c, Scalar::integer(v[r * d + c], Mode::exact));
  return m;
}

double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  // Box-Muller on raw uniforms; keeps the stream identical across platforms.
  double u1 = uniform01(rng), u2 = uniform01(rng);
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

Matrix identity2() { return Matrix::identity(2, Mode::exact); }
Matrix pauli_x() { return from_ints(2, {0, 1, 1, 0}); }
Matrix rotation90() { return from_ints(2, {0, -1, 1, 0}); }
Matrix cycle3() { return from_ints(3, {0, 0, 1, 1, 0, 0, 0, 1, 0}); }
Matrix neg_swap12() { return from_ints(3, {0, -1, 0, -1, 0, 0, 0, 0, -1}); }

VertexOperator identity_op(long m, long n, Mode mode) {
  return VertexOperator(m, n, Matrix::identity(m * n, mode));
}

VertexOperator swap_op(Mode mode) {
  Matrix s(4, 4, mode);
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) s.set(i * 2 + j, j * 2 + i, Scalar::one(mode));
  return VertexOperator(2, 2, std::move(s));
}

VertexOperator diag_pauli() { return model_i({identity2(), pauli_x()}); }
VertexOperator second_pauli() { return model_ii({identity2(), pauli_x()}); }
VertexOperator diag_rotation() { return model_i({identity2(), rotation90()}); }
VertexOperator diag_s3() { return model_i({Matrix::identity(3, Mode::exact), cycle3(), neg_swap12()}); }

Matrix random_unitary(long d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::complex<double>>> cols(d, std::vector<std::complex<double>>(d));
  for (long c = 0; c < d; ++c)
    for (long r = 0; r < d; ++r) cols[c][r] = {gaussian(rng), gaussian(rng)};
  // Gram-Schmidt
  for (long c = 0; c < d; ++c) {
    for (long p = 0; p < c; ++p) {
      std::complex<double> dot = 0.0;
      for (long r = 0; r < d; ++r) dot += std::conj(cols[p][r]) * cols[c][r];
      for (long r = 0; r < d; ++r) cols[c][r] -= dot * cols[p][r];
    }
    double nrm = 0.0;
    for (long r = 0; r < d; ++r) nrm += std::norm(cols[c][r]);
    nrm = std::sqrt(nrm);
    for (long r = 0; r < d; ++r) cols[c][r] /= nrm;
  }
  Matrix u(d, d, Mode::approx);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) u.set(r, c, Scalar::approx(cols[c][r]));
  return u;
}

TwistQ random_twist(long m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Scalar> q;
  for (long a = 0; a < m; ++a) q.push_back(Scalar::approx(std::exp(gaussian(rng) / 2.0)));
  return TwistQ(std::move(q));
}

Matrix random_exact_invertible(long d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int tries = 0; tries < 64; ++tries) {
    Matrix m(d, d, Mode::exact);
    for (long r = 0; r < d; ++r)
      for (long c = 0; c < d; ++c) {
        long re = static_cast<long>(rng() % 7) - 3;
        long im = static_cast<long>(rng() % 5) - 2;
        if (re != 0 || im != 0) m.set(r, c, Scalar::exact(re, im));
      }
    if (try_inverse(m).inverse) return m;
  }
  throw Error(ErrorKind::numerical, "failed to sample an invertible matrix");
}

Matrix random_exact_monomial_unitary(long d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<long> perm(d);
  for (long i = 0; i < d; ++i) perm[i] = i;
  for (long i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
  Matrix m(d, d, Mode::exact);
  const Scalar phases[4] = {Scalar::exact(1), Scalar::exact(0, 1), Scalar::exact(-1),
                            Scalar::exact(0, -1)};
  for (long c = 0; c < d; ++c) m.set(perm[c], c, phases[rng() % 4]);
  return m;
}

}  // namespace vmlat::fixtures
