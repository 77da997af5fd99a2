#include <doctest.h>

#include "vmlat/algebra_structure.hpp"
#include "vmlat/fixtures.hpp"

using namespace vmlat;
namespace fx = vmlat::fixtures;

namespace {

Matrix elem(long d, long r, long c, Mode mode = Mode::exact) {
  Matrix m(d, d, mode);
  m.set(r, c, Scalar::one(mode));
  return m;
}

MatrixStarAlgebra scalars_in(long d) {
  return MatrixStarAlgebra(d, {Matrix::identity(d, Mode::exact)});
}

MatrixStarAlgebra full_matrix_algebra(long d) {
  std::vector<Matrix> basis;
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) basis.push_back(elem(d, r, c));
  return MatrixStarAlgebra(d, std::move(basis));
}

MatrixStarAlgebra diagonals_in(long d) {
  std::vector<Matrix> basis;
  for (long r = 0; r < d; ++r) basis.push_back(elem(d, r, r));
  return MatrixStarAlgebra(d, std::move(basis));
}

void check_bookkeeping(const MatrixStarAlgebra& alg, const SemisimpleDecomposition& dec) {
  long dim_sum = 0, amb_sum = 0;
  const Mode mode = dec.blocks[0].p.mode();
  Matrix sum(alg.ambient(), alg.ambient(), mode);
  for (const Block& b : dec.blocks) {
    dim_sum += b.d * b.d;
    amb_sum += b.d * b.mult;
    CHECK(matches(b.p * b.p, b.p, 100.0));
    CHECK(matches(b.p, adjoint(b.p), 100.0));
    sum = sum + b.p;
  }
  CHECK(dim_sum == alg.dim());
  CHECK(amb_sum == alg.ambient());
  CHECK(matches(sum, Matrix::identity(alg.ambient(), mode), 100.0));
  for (std::size_t k = 0; k < dec.blocks.size(); ++k)
    for (std::size_t l = k + 1; l < dec.blocks.size(); ++l)
      CHECK(matches(dec.blocks[k].p * dec.blocks[l].p,
                    Matrix(alg.ambient(), alg.ambient(), mode), 100.0));
}

}  // namespace

TEST_SUITE("algebra_structure") {

TEST_CASE("construction validates the star-algebra axioms") {
  CHECK_THROWS_AS(MatrixStarAlgebra(2, {elem(2, 0, 0)}), Error);  // no unit
  // not adjoint-closed: span{1, e_01}
  CHECK_THROWS_AS(MatrixStarAlgebra(2, {Matrix::identity(2, Mode::exact), elem(2, 0, 1)}), Error);
  // not product-closed: span{1, diag(0,1,2)} in M_3 (the square escapes)
  Matrix bad(3, 3, Mode::exact);
  bad.set(1, 1, Scalar::exact(1));
  bad.set(2, 2, Scalar::exact(2));
  CHECK_THROWS_AS(MatrixStarAlgebra(3, {Matrix::identity(3, Mode::exact), bad}), Error);
  // dependent basis
  CHECK_THROWS_AS(MatrixStarAlgebra(2, {Matrix::identity(2, Mode::exact),
                                        Scalar::exact(2) * Matrix::identity(2, Mode::exact)}),
                  Error);
}

TEST_CASE("decompose the scalars") {
  auto dec = decompose(scalars_in(4), 0);
  REQUIRE(dec.blocks.size() == 1);
  CHECK(dec.blocks[0].d == 1);
  CHECK(dec.blocks[0].mult == 4);
  check_bookkeeping(scalars_in(4), dec);
}

TEST_CASE("decompose the full matrix algebra") {
  auto alg = full_matrix_algebra(4);
  auto dec = decompose(alg, 0);
  REQUIRE(dec.blocks.size() == 1);
  CHECK(dec.blocks[0].d == 4);
  CHECK(dec.blocks[0].mult == 1);
  check_bookkeeping(alg, dec);
  CHECK_FALSE(dec.approx_fallback);
}

TEST_CASE("decompose the diagonal algebra") {
  auto alg = diagonals_in(2);
  auto dec = decompose(alg, 0);
  REQUIRE(dec.blocks.size() == 2);
  for (const Block& b : dec.blocks) {
    CHECK(b.d == 1);
    CHECK(b.mult == 1);
  }
  check_bookkeeping(alg, dec);
}

TEST_CASE("decompose a mixed block algebra") {
  // span{e_00, full 2x2 block on coordinates 1,2} inside M_3
  std::vector<Matrix> basis{elem(3, 0, 0)};
  for (long r = 1; r <= 2; ++r)
    for (long c = 1; c <= 2; ++c) basis.push_back(elem(3, r, c));
  // make it unital by construction: e_00 + block unit = 1 is in the span
  MatrixStarAlgebra alg(3, std::move(basis));
  auto dec = decompose(alg, 0);
  REQUIRE(dec.blocks.size() == 2);
  CHECK(dec.block_multiset() == std::vector<std::pair<long, long>>{{1, 1}, {2, 1}});
  check_bookkeeping(alg, dec);
}

TEST_CASE("decompose in approx mode") {
  set_tolerance(1e-9);
  std::vector<Matrix> basis;
  for (long r = 0; r < 2; ++r) basis.push_back(elem(2, r, r, Mode::approx));
  MatrixStarAlgebra alg(2, std::move(basis));
  auto dec = decompose(alg, 0);
  REQUIRE(dec.blocks.size() == 2);
  check_bookkeeping(alg, dec);
}

TEST_CASE("decompose is deterministic given the seed") {
  auto alg = diagonals_in(3);
  auto d1 = decompose(alg, 7), d2 = decompose(alg, 7);
  REQUIRE(d1.blocks.size() == d2.blocks.size());
  for (std::size_t k = 0; k < d1.blocks.size(); ++k) {
    CHECK(d1.blocks[k].d == d2.blocks[k].d);
    CHECK(d1.blocks[k].mult == d2.blocks[k].mult);
    CHECK(d1.blocks[k].p == d2.blocks[k].p);
  }
}

TEST_CASE("inclusion of the scalars into the full algebra") {
  auto small = scalars_in(3);
  auto big = full_matrix_algebra(3);
  auto lam = inclusion_matrix(small, decompose(small, 0), big, decompose(big, 0), 0);
  REQUIRE(lam.rows() == 1);
  REQUIRE(lam.cols() == 1);
  CHECK(lam.entries[0][0] == 3);
}

TEST_CASE("inclusion of the diagonal into the full 2x2 algebra") {
  auto small = diagonals_in(2);
  auto big = full_matrix_algebra(2);
  auto lam = inclusion_matrix(small, decompose(small, 0), big, decompose(big, 0), 0);
  REQUIRE(lam.rows() == 2);
  REQUIRE(lam.cols() == 1);
  CHECK(lam.entries[0][0] == 1);
  CHECK(lam.entries[1][0] == 1);
}

TEST_CASE("non-inclusions are rejected") {
  auto a = diagonals_in(2);
  std::vector<Matrix> pauli_span{Matrix::identity(2, Mode::exact), fx::pauli_x()};
  MatrixStarAlgebra b(2, std::move(pauli_span));
  CHECK_THROWS_AS(inclusion_matrix(a, decompose(a, 0), b, decompose(b, 0), 0), Error);
}

TEST_CASE("handcrafted tower has the expected chain") {
  // scalars in M_2  <  diagonals in M_2  <  full M_2: an A-type start
  auto l0 = scalars_in(2);
  auto l1 = diagonals_in(2);
  auto l2 = full_matrix_algebra(2);
  auto lam01 = inclusion_matrix(l0, decompose(l0, 0), l1, decompose(l1, 0), 0);
  auto lam12 = inclusion_matrix(l1, decompose(l1, 0), l2, decompose(l2, 0), 0);
  CHECK(lam01.entries == std::vector<std::vector<long>>{{1, 1}});
  CHECK(lam12.entries == std::vector<std::vector<long>>{{1}, {1}});
}

TEST_CASE("bratteli chain and principal graph of the pauli model row") {
  LatticeGrid grid = lattice(make_uprime(fx::diag_pauli()), 3);
  BratteliData data = bratteli(grid.row(0), 2, 0);
  REQUIRE(data.levels.size() == 4);
  REQUIRE(data.steps.size() == 3);
  CHECK(data.levels[0].blocks.size() == 1);
  CHECK(data.levels[1].block_multiset() == std::vector<std::pair<long, long>>{{1, 1}, {1, 1}});
  CHECK(data.levels[2].block_multiset() == std::vector<std::pair<long, long>>{{2, 1}, {2, 1}});
  CHECK(data.levels[3].block_multiset() == std::vector<std::pair<long, long>>{{4, 1}, {4, 1}});
  CHECK(data.steps[0].entries == std::vector<std::vector<long>>{{1, 1}});
  CHECK(data.steps[1].entries == std::vector<std::vector<long>>{{1, 1}, {1, 1}});
  CHECK(data.steps[2].entries == std::vector<std::vector<long>>{{1, 1}, {1, 1}});

  PrincipalGraph pg = principal_graph(data);
  CHECK(pg.stabilized);
  CHECK(pg.stabilization_step == 2);
  CHECK(pg.graph.entries == std::vector<std::vector<long>>{{1, 1}, {1, 1}});
  CHECK(pg.connected);
  CHECK(pg.index_estimate == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("bratteli chain of the identity model stabilizes immediately") {
  LatticeGrid grid = lattice(make_uprime(fx::identity_op(2, 2)), 3);
  BratteliData data = bratteli(grid.row(0), 2, 0);
  // full algebras all along: single blocks, multiplicity-2 steps
  for (const auto& step : data.steps) {
    REQUIRE(step.rows() == 1);
    REQUIRE(step.cols() == 1);
    CHECK(step.entries[0][0] == 2);
  }
  PrincipalGraph pg = principal_graph(data);
  CHECK(pg.stabilized);
  CHECK(pg.index_estimate == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("dot emission is deterministic and well-formed") {
  LatticeGrid grid = lattice(make_uprime(fx::diag_pauli()), 3);
  BratteliData data = bratteli(grid.row(0), 2, 0);
  PrincipalGraph pg = principal_graph(data);
  std::string b1 = bratteli_dot(data), b2 = bratteli_dot(data);
  CHECK(b1 == b2);
  CHECK(b1.find("digraph bratteli") != std::string::npos);
  std::string p1 = principal_graph_dot(pg);
  CHECK(p1.find("graph principal") != std::string::npos);
  CHECK(p1.find("E0 -- O0") != std::string::npos);
}

}  // TEST_SUITE
