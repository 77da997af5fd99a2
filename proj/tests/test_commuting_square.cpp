#include <doctest.h>

#include "vmlat/commuting_square.hpp"
#include "vmlat/fixtures.hpp"

using namespace vmlat;
namespace fx = vmlat::fixtures;

TEST_SUITE("commuting_square") {

TEST_CASE("square verdicts match the star condition") {
  SquareReport id = check_commuting_square(fx::identity_op(2, 2));
  CHECK(id.is_commuting);
  CHECK(id.max_residual == 0.0);

  SquareReport pauli = check_commuting_square(fx::diag_pauli());
  CHECK(pauli.is_commuting);
  CHECK(pauli.max_residual == 0.0);
  CHECK(pauli.is_commuting == check_star(fx::diag_pauli()));

  SquareReport flip = check_commuting_square(fx::swap_op());
  CHECK_FALSE(flip.is_commuting);
  CHECK(flip.max_residual > 0.1);
  CHECK(flip.is_commuting == check_star(fx::swap_op()));

  // approx-mode unitary fixture
  set_tolerance(1e-9);
  VertexOperator ru(2, 2, fx::random_unitary(4, 3));
  CHECK(check_commuting_square(ru).is_commuting == check_star(ru));
}

TEST_CASE("conditional expectations are idempotent, trace-preserving, bimodular") {
  const long D = 4;
  std::vector<Matrix> sub;  // 1 (x) L(W) inside M_2 (x) M_2
  for (long x = 0; x < 2; ++x)
    for (long y = 0; y < 2; ++y) {
      Matrix e(D, D, Mode::exact);
      for (long a = 0; a < 2; ++a) e.set(a * 2 + x, a * 2 + y, Scalar::one(Mode::exact));
      sub.push_back(std::move(e));
    }
  for (std::uint64_t seed : {1u, 2u}) {
    Matrix x = fx::random_exact_invertible(D, seed);
    Matrix ex = conditional_expectation(sub, x);
    CHECK(matches(conditional_expectation(sub, ex), ex, 0.0));          // idempotent
    CHECK(ntrace(ex).exact_eq(ntrace(x)));                              // trace-preserving
    const Matrix& b = sub[1];
    Matrix lhs = conditional_expectation(sub, b * x);
    CHECK(matches(lhs, b * ex, 0.0));                                   // left module map
    Matrix rhs = conditional_expectation(sub, x * b);
    CHECK(matches(rhs, ex * b, 0.0));                                   // right module map
  }
}

TEST_CASE("tower levels against the flat cable product") {
  for (const VertexOperator& u : {fx::diag_pauli(), fx::diag_rotation()}) {
    CHECK(matches(build_tower_U(u, 1).U, u.mat(), 0.0));
    for (int i = 2; i <= 3; ++i) {
      // recursion vs the independent one-shot alternating product
      CHECK(matches(build_tower_U(u, i).U, vertical_cable(u, i).mat(), 0.0));
    }
  }
  CHECK(matches(build_tower_U(fx::identity_op(2, 2), 3).U, Matrix::identity(16, Mode::exact), 0.0));
}

TEST_CASE("jones projection is the rank-normalized pairing") {
  Matrix e = jones_projection(2, Mode::exact);
  CHECK(e.rows() == 4);
  CHECK(matches(e * e, e, 0.0));           // idempotent
  CHECK(matches(e, adjoint(e), 0.0));      // self-adjoint
  CHECK(trace(e).exact_eq(Scalar::one(Mode::exact)));  // rank one
  for (long a = 0; a < 2; ++a)
    for (long c = 0; c < 2; ++c)
      CHECK(e.at(a * 2 + a, c * 2 + c).exact_eq(Scalar::exact(mpq_class(1, 2))));
}

TEST_CASE("jones identity on star fixtures") {
  CHECK(check_jones_identity(fx::identity_op(2, 2)));
  CHECK(check_jones_identity(fx::diag_pauli()));
  CHECK(check_jones_identity(fx::diag_rotation()));
  CHECK(check_jones_identity(fx::second_pauli()));
  CHECK(check_jones_identity(fx::diag_s3()));
  CHECK_THROWS_AS(check_jones_identity(fx::swap_op()), Error);
}

TEST_CASE("direct commutant of the identity is everything") {
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= i; ++j) {
      MatrixStarAlgebra alg = relative_commutant_direct(fx::identity_op(2, 2), i, j);
      CHECK(alg.dim() == 1L << (2 * (i - j)));
    }
}

TEST_CASE("direct commutant dimensions of the pauli model") {
  CHECK(relative_commutant_direct(fx::diag_pauli(), 1, 0).dim() == 2);
  CHECK(relative_commutant_direct(fx::diag_pauli(), 2, 0).dim() == 8);
  CHECK(relative_commutant_direct(fx::diag_pauli(), 2, 1).dim() == 2);
  CHECK(relative_commutant_direct(fx::diag_pauli(), 3, 1).dim() == 8);
}

TEST_CASE("direct commutant respects the cap") {
  CHECK_THROWS_AS(relative_commutant_direct(fx::diag_pauli(), 3, 0, 50), Error);
}

TEST_CASE("the two routes agree cell by cell") {
  for (const VertexOperator& u : {fx::identity_op(2, 2), fx::diag_pauli(), fx::second_pauli()}) {
    CompareReport rep = theorem_compare(u, 3);
    CHECK(rep.all_match);
    CHECK(rep.cells.size() == 10);
    for (const CompareCell& c : rep.cells) {
      CHECK(c.dims_match);
      CHECK(c.blocks_match);
    }
  }
}

TEST_CASE("pauli row dims from the comparison report") {
  CompareReport rep = theorem_compare(fx::diag_pauli(), 3);
  std::vector<long> row0;
  for (const CompareCell& c : rep.cells)
    if (c.j == 0) row0.push_back(c.dim_word);
  CHECK(row0 == std::vector<long>{1, 2, 8, 32});
}

}  // TEST_SUITE
