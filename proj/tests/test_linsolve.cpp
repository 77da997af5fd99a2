#include <doctest.h>

#include "vmlat/linsolve.hpp"

using namespace vmlat;

namespace {

SparseRow row_of(std::initializer_list<long> vals) {
  SparseRow r;
  long c = 0;
  for (long v : vals) {
    if (v != 0) r.emplace_back(c, Scalar::integer(v, Mode::exact));
    ++c;
  }
  return r;
}

}  // namespace

TEST_SUITE("linsolve") {

TEST_CASE("kernel of a known system") {
  // x + y + z = 0, y - z = 0  ->  kernel spanned by (-2, 1, 1)
  KernelSolver ks(3, Mode::exact);
  ks.add_row(row_of({1, 1, 1}));
  ks.add_row(row_of({0, 1, -1}));
  CHECK(ks.rank() == 2);
  auto basis = ks.kernel_basis();
  REQUIRE(basis.size() == 1);
  const auto& v = basis[0];
  CHECK((v[0] + v[1] + v[2]).is_zero());
  CHECK((v[1] - v[2]).is_zero());
}

TEST_CASE("redundant and zero rows do not change the rank") {
  KernelSolver ks(3, Mode::exact);
  ks.add_row(row_of({1, 2, 3}));
  ks.add_row(row_of({2, 4, 6}));
  ks.add_row({});
  CHECK(ks.rank() == 1);
  CHECK(ks.in_row_space(row_of({-3, -6, -9})));
  CHECK_FALSE(ks.in_row_space(row_of({1, 0, 0})));
}

TEST_CASE("deterministic output") {
  auto run = [] {
    KernelSolver ks(4, Mode::exact);
    ks.add_row(row_of({1, 2, 0, 1}));
    ks.add_row(row_of({0, 1, 1, 0}));
    return ks.kernel_basis();
  };
  auto a = run(), b = run();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) CHECK(a[i][j].exact_eq(b[i][j]));
}

TEST_CASE("approx mode drops rows below the tolerance scale") {
  set_tolerance(1e-9);
  KernelSolver ks(2, Mode::approx);
  ks.add_row({{0, Scalar::approx(1.0)}, {1, Scalar::approx(1.0)}});
  ks.add_row({{0, Scalar::approx(1.0)}, {1, Scalar::approx(1.0 + 1e-12)}});  // numerically same
  CHECK(ks.rank() == 1);
  auto basis = ks.kernel_basis();
  REQUIRE(basis.size() == 1);
}

TEST_CASE("span basis membership") {
  SpanBasis span(3, Mode::exact);
  CHECK(span.add(row_of({1, 1, 0})));
  CHECK(span.add(row_of({0, 0, 2})));
  CHECK_FALSE(span.add(row_of({2, 2, 2})));  // already inside
  CHECK(span.contains(row_of({3, 3, -1})));
  CHECK_FALSE(span.contains(row_of({1, 0, 0})));
  CHECK(span.rank() == 2);
}

}  // TEST_SUITE
