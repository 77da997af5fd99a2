#include <doctest.h>

#include "vmlat/fixtures.hpp"
#include "vmlat/group_models.hpp"
#include "vmlat/intertwiner.hpp"

using namespace vmlat;
namespace fx = vmlat::fixtures;

TEST_SUITE("group_models") {

TEST_CASE("closure orders of small generator sets") {
  CHECK(close_group({fx::pauli_x()}).order() == 2);
  CHECK(close_group({fx::rotation90()}).order() == 4);
  CHECK(close_group({fx::cycle3(), fx::neg_swap12()}).order() == 6);
}

TEST_CASE("unipotent generator exceeds any cap") {
  Matrix shear(2, 2, Mode::exact);
  shear.set(0, 0, Scalar::exact(1));
  shear.set(0, 1, Scalar::exact(1));
  shear.set(1, 1, Scalar::exact(1));
  CHECK_THROWS_AS(close_group({shear}, 64), Error);
}

TEST_CASE("closure rejects approx matrices and singular generators") {
  CHECK_THROWS_AS(close_group({Matrix::identity(2, Mode::approx)}), Error);
  Matrix z(2, 2, Mode::exact);
  z.set(0, 0, Scalar::exact(1));
  CHECK_THROWS_AS(close_group({z}), Error);
}

TEST_CASE("multiplication table is consistent with matrix products") {
  FiniteGroupClosure g = close_group({fx::cycle3(), fx::neg_swap12()});
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) {
      Matrix prod = g.element(a) * g.element(b);
      CHECK(g.element(g.product(a, b)) == prod);
    }
    CHECK(g.product(a, g.inverse(a)) == g.identity_index());
  }
}

TEST_CASE("model constructors and their star condition") {
  // one generator: u = e_11 (x) g is just g inside M_1 (x) M_d
  VertexOperator u1 = model_i({fx::identity2()});
  CHECK(u1.m() == 1);
  CHECK(u1.n() == 2);
  CHECK(matches(u1.mat(), Matrix::identity(2, Mode::exact), 0.0));

  CHECK(check_star(model_i({fx::identity2(), fx::pauli_x()})));
  CHECK(check_star(model_ii({fx::identity2(), fx::rotation90()})));
  VertexOperator s = model_ii({fx::identity2(), fx::pauli_x()});
  CHECK(s.m() == 2);
  CHECK(s.n() == 2);

  CHECK_THROWS_AS(model_i({fx::identity2(), Matrix::identity(3, Mode::exact)}), Error);
  Matrix z(2, 2, Mode::exact);
  CHECK_THROWS_AS(model_i({z}), Error);
}

TEST_CASE("diagonal models with unitary generators are biunitary") {
  for (const VertexOperator& u : {fx::diag_pauli(), fx::diag_rotation(), fx::diag_s3()}) {
    CHECK(is_unitary(u.mat()));
    CHECK(check_star(u));
    CHECK(is_unitary(u.coarse_transpose_first()));
  }
}

TEST_CASE("projective generator family") {
  auto gens = pgl_generators({fx::identity2(), fx::pauli_x()});
  REQUIRE(gens.size() == 2);
  CHECK(gens[0] == Matrix::identity(4, Mode::exact));
  CHECK(gens[1] == kron(fx::pauli_x(), fx::pauli_x()));
  CHECK(close_group(gens).order() == 2);

  // quarter rotation: minus signs cancel between g and its inverse transpose
  auto rot = pgl_generators({fx::identity2(), fx::rotation90()});
  CHECK(close_group(rot).order() == 2);

  // faithful copy of the projective image: scalar multiples collapse
  Matrix minus_id = Scalar::exact(-1) * fx::identity2();
  CHECK(close_group(pgl_generators({minus_id})).order() == 1);
}

TEST_CASE("projective representatives") {
  Matrix g = fx::rotation90();
  Matrix h = Scalar::exact(0, 2) * g;  // same projective class
  CHECK(projective_representative(g) == projective_representative(h));
  CHECK_FALSE(projective_representative(g) == projective_representative(fx::pauli_x()));
  CHECK_THROWS_AS(projective_representative(Matrix(2, 2, Mode::exact)), Error);
}

TEST_CASE("second-family quotient generators") {
  auto q = model_ii_group({fx::pauli_x(), fx::pauli_x()});
  REQUIRE(q.size() == 1);
  CHECK(q[0] == Matrix::identity(2, Mode::exact));
  auto q2 = model_ii_group({fx::identity2(), fx::rotation90(), fx::pauli_x()});
  CHECK(q2.size() == 2);
  CHECK(q2[0] == fx::rotation90());
}

TEST_CASE("oracle over the trivial group counts squared tuple counts") {
  FiniteGroupClosure g = close_group({fx::identity2()});
  OracleGrid grid = group_lattice_oracle(g, {0, 0}, 2);  // two letters, both the identity
  // every tuple realizes the identity: dim = (r^k)^2
  CHECK(grid.at(0, 0) == 1);
  CHECK(grid.at(1, 0) == 4);
  CHECK(grid.at(2, 0) == 16);
}

TEST_CASE("oracle grids of the pauli and rotation models") {
  for (auto gens : {std::vector<Matrix>{fx::identity2(), fx::pauli_x()},
                    std::vector<Matrix>{fx::identity2(), fx::rotation90()}}) {
    auto hs = pgl_generators(gens);
    FiniteGroupClosure g = close_group(hs);
    std::vector<int> letters;
    for (const Matrix& h : hs) letters.push_back(g.find(h));
    OracleGrid grid = group_lattice_oracle(g, letters, 3);
    CHECK(grid.at(0, 0) == 1);
    CHECK(grid.at(1, 0) == 2);
    CHECK(grid.at(2, 0) == 8);
    CHECK(grid.at(3, 0) == 32);
    CHECK(grid.at(2, 1) == 2);
    CHECK(grid.at(3, 1) == 8);
  }
}

TEST_CASE("oracle agrees with the solver on the three-generator model") {
  VertexOperator u = fx::diag_s3();
  auto hs = pgl_generators({Matrix::identity(3, Mode::exact), fx::cycle3(), fx::neg_swap12()});
  FiniteGroupClosure g = close_group(hs);
  CHECK(g.order() == 6);
  std::vector<int> letters;
  for (const Matrix& h : hs) letters.push_back(g.find(h));
  OracleGrid grid = group_lattice_oracle(g, letters, 2);
  CHECK(grid.at(1, 0) == 3);
  CHECK(grid.at(2, 0) == 19);

  auto base = std::make_shared<VertexOperator>(make_uprime(u));
  CHECK(end_algebra(realize_word(base, lattice_word(1, 0))).dim() == grid.at(1, 0));
  CHECK(end_algebra(realize_word(base, lattice_word(2, 0))).dim() == grid.at(2, 0));
  CHECK(end_algebra(realize_word(base, lattice_word(2, 1))).dim() == grid.at(2, 1));
}

TEST_CASE("oracle validates its inputs") {
  FiniteGroupClosure g = close_group({fx::pauli_x()});
  CHECK_THROWS_AS(group_lattice_oracle(g, {}, 2), Error);
  CHECK_THROWS_AS(group_lattice_oracle(g, {5}, 2), Error);
}

}  // TEST_SUITE
