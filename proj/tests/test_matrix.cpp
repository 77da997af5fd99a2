#include <doctest.h>

#include <random>

#include "vmlat/fixtures.hpp"
#include "vmlat/linsolve.hpp"
#include "vmlat/matrix.hpp"

using namespace vmlat;
namespace fx = vmlat::fixtures;

namespace {

Matrix elem(long d, long r, long c, Mode mode = Mode::exact) {
  Matrix m(d, d, mode);
  m.set(r, c, Scalar::one(mode));
  return m;
}

// Permutation matrix sending basis vector (multi-index) idx to perm(idx).
Matrix leg_swap_23(long m, long n) {
  long D = m * n * n;
  Matrix p(D, D, Mode::exact);
  for (long a = 0; a < m; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        p.set((a * n + c) * n + b, (a * n + b) * n + c, Scalar::one(Mode::exact));
  return p;
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("kron identities and elementary expansion") {
  Matrix i2 = Matrix::identity(2, Mode::exact);
  CHECK(kron(i2, i2) == Matrix::identity(4, Mode::exact));

  Matrix e11 = elem(2, 0, 0);
  Matrix k = kron(e11, fx::pauli_x());
  // pauli block in the top-left 2x2 corner, zeros elsewhere
  for (long r = 0; r < 4; ++r)
    for (long c = 0; c < 4; ++c) {
      bool in_block = r < 2 && c < 2;
      Scalar want = in_block ? fx::pauli_x().at(r, c) : Scalar::zero(Mode::exact);
      CHECK(k.at(r, c).exact_eq(want));
    }
}

TEST_CASE("kron mixed-product law on random exact pairs") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Matrix a = fx::random_exact_invertible(2, seed);
    Matrix b = fx::random_exact_invertible(2, seed + 100);
    Matrix c = fx::random_exact_invertible(2, seed + 200);
    Matrix d = fx::random_exact_invertible(2, seed + 300);
    CHECK(kron(a, b) * kron(c, d) == kron(a * c, b * d));
  }
}

TEST_CASE("embed_on_legs full and single-leg cases") {
  VertexOperator u = fx::diag_pauli();
  std::vector<Leg> sig{{2, false}, {2, false}};
  CHECK(embed_on_legs(u.mat(), {1, 2}, sig) == u.mat());

  Matrix sx = fx::pauli_x().with_legs({{2, false}});
  CHECK(embed_on_legs(sx, {1}, sig) == kron(fx::pauli_x(), Matrix::identity(2, Mode::exact)));
  CHECK(embed_on_legs(sx, {2}, sig) == kron(Matrix::identity(2, Mode::exact), fx::pauli_x()));
}

TEST_CASE("embed_on_legs on legs 1,3 agrees with the permutation conjugate") {
  for (std::uint64_t seed : {3u, 7u}) {
    Matrix u = fx::random_exact_invertible(4, seed).with_legs({{2, false}, {2, false}});
    std::vector<Leg> sig{{2, false}, {2, false}, {2, false}};
    Matrix direct = embed_on_legs(u, {1, 3}, sig);
    Matrix p = leg_swap_23(2, 2);
    Matrix expected = p * kron(u, Matrix::identity(2, Mode::exact)) * inverse(p);
    CHECK(direct == expected.with_legs(sig));
  }
}

TEST_CASE("embed_on_legs rejects bad positions") {
  Matrix sx = fx::pauli_x().with_legs({{2, false}});
  std::vector<Leg> sig{{2, false}, {3, false}};
  CHECK_THROWS_AS(embed_on_legs(sx, {2}, sig), Error);   // dimension mismatch
  VertexOperator u = fx::diag_pauli();
  CHECK_THROWS_AS(embed_on_legs(u.mat(), {1, 1}, sig), Error);  // repeated position
}

TEST_CASE("partial transpose of the flip is the rank-one pairing") {
  VertexOperator s = fx::swap_op();
  Matrix t = partial_transpose_first(s.mat());
  // entry 1 at ((a,x),(b,y)) iff a=x and b=y
  for (long a = 0; a < 2; ++a)
    for (long x = 0; x < 2; ++x)
      for (long b = 0; b < 2; ++b)
        for (long y = 0; y < 2; ++y) {
          Scalar want = (a == x && b == y) ? Scalar::one(Mode::exact) : Scalar::zero(Mode::exact);
          CHECK(t.at(a * 2 + x, b * 2 + y).exact_eq(want));
        }
  CHECK(t.legs()[0].dual);
  CHECK_FALSE(try_inverse(t).inverse.has_value());
}

TEST_CASE("partial transpose is an involution") {
  CHECK(partial_transpose_first(Matrix::identity(4, Mode::exact).with_legs({{2, false}, {2, false}})) ==
        Matrix::identity(4, Mode::exact).with_legs({{2, true}, {2, false}}));
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    Matrix x = fx::random_exact_invertible(6, seed).with_legs({{2, false}, {3, false}});
    CHECK(partial_transpose_first(partial_transpose_first(x)) == x);
  }
}

TEST_CASE("partial transpose is an anti-homomorphism on first-leg factors") {
  std::vector<Leg> sig{{2, false}, {2, false}};
  for (std::uint64_t seed : {21u, 22u}) {
    Matrix a = kron(fx::random_exact_invertible(2, seed), Matrix::identity(2, Mode::exact)).with_legs(sig);
    Matrix b = kron(fx::random_exact_invertible(2, seed + 50), Matrix::identity(2, Mode::exact)).with_legs(sig);
    CHECK(partial_transpose_first(a * b) ==
          partial_transpose_first(b) * partial_transpose_first(a));
  }
}

TEST_CASE("inverse, adjoint, unitarity, normalized trace") {
  CHECK(inverse(Matrix::identity(4, Mode::exact)) == Matrix::identity(4, Mode::exact));
  CHECK(is_unitary(fx::pauli_x()));
  Matrix shear(2, 2, Mode::exact);
  shear.set(0, 0, Scalar::exact(1));
  shear.set(0, 1, Scalar::exact(1));
  shear.set(1, 1, Scalar::exact(1));
  CHECK_FALSE(is_unitary(shear));
  for (long d : {1L, 2L, 4L, 8L}) {
    CHECK(ntrace(Matrix::identity(d, Mode::exact)).exact_eq(Scalar::one(Mode::exact)));
  }

  // every computed inverse satisfies x x^{-1} = 1
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    Matrix x = fx::random_exact_invertible(3, seed);
    CHECK(x * inverse(x) == Matrix::identity(3, Mode::exact));
  }
  set_tolerance(1e-9);
  Matrix ua = fx::random_unitary(4, 77);
  CHECK(max_abs_diff(ua * inverse(ua), Matrix::identity(4, Mode::approx)) <= 10 * tolerance());
}

TEST_CASE("singular input reports the best pivot magnitude") {
  Matrix z(2, 2, Mode::approx);
  z.set(0, 0, Scalar::approx(1.0));
  z.set(0, 1, Scalar::approx(1.0));
  z.set(1, 0, Scalar::approx(1.0));
  z.set(1, 1, Scalar::approx(1.0 + 1e-13));
  InverseResult r = try_inverse(z);
  CHECK_FALSE(r.inverse.has_value());
  CHECK(r.min_pivot < 1e-9);
  CHECK_THROWS_AS(inverse(z), Error);
}

TEST_CASE("nullspace basic shapes") {
  CHECK(nullspace(Matrix::identity(4, Mode::exact)).empty());
  CHECK(nullspace(Matrix(2, 4, Mode::exact)).size() == 4);

  Matrix row(1, 2, Mode::exact);
  row.set(0, 0, Scalar::exact(1));
  row.set(0, 1, Scalar::exact(1));
  auto basis = nullspace(row);
  REQUIRE(basis.size() == 1);
  // spans (1, -1)
  CHECK((basis[0][0] + basis[0][1]).is_zero());
  CHECK_FALSE(basis[0][0].is_zero());
}

TEST_CASE("nullspace vectors annihilate the matrix and are independent") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 4; ++t) {
    Matrix m(3, 5, Mode::exact);
    for (long r = 0; r < 3; ++r)
      for (long c = 0; c < 5; ++c)
        if (rng() % 3) m.set(r, c, Scalar::exact(static_cast<long>(rng() % 7) - 3));
    auto basis = nullspace(m);
    SpanBasis span(5, Mode::exact);
    for (const auto& v : basis) {
      for (long r = 0; r < 3; ++r) {
        Scalar acc = Scalar::zero(Mode::exact);
        for (long c = 0; c < 5; ++c) acc += m.at(r, c) * v[c];
        CHECK(acc.is_zero());
      }
      CHECK(span.add(sparse_from_dense(v)));  // linearly independent
    }
    // rank-nullity
    KernelSolver ks(5, Mode::exact);
    for (long r = 0; r < 3; ++r) {
      SparseRow sr;
      for (long c = 0; c < 5; ++c)
        if (!m.at(r, c).is_zero()) sr.emplace_back(c, m.at(r, c));
      ks.add_row(std::move(sr));
    }
    CHECK(static_cast<long>(basis.size()) == 5 - ks.rank());
  }
}

}  // TEST_SUITE
