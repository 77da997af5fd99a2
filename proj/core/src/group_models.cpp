#include "vmlat/group_models.hpp"

#include <algorithm>
#include <string>

namespace vmlat {

namespace {

std::string exact_key(const Matrix& g) {
  std::string k;
  for (long r = 0; r < g.rows(); ++r)
    for (long c = 0; c < g.cols(); ++c) {
      k += g.at(r, c).str();
      k += ';';
    }
  return k;
}

void require_exact_square(const std::vector<Matrix>& gens) {
  if (gens.empty()) throw Error(ErrorKind::input, "no generators given");
  for (const Matrix& g : gens) {
    if (g.mode() != Mode::exact)
      throw Error(ErrorKind::input, "group closure needs exact-mode matrices");
    if (g.rows() != g.cols() || g.rows() != gens[0].rows())
      throw Error(ErrorKind::input, "generators must be square of equal dimension");
  }
}

}  // namespace

FiniteGroupClosure::FiniteGroupClosure(std::vector<Matrix> elements,
                                       std::vector<std::vector<int>> table,
                                       std::vector<int> generator_indices, int cap)
    : elements_(std::move(elements)),
      table_(std::move(table)),
      generator_indices_(std::move(generator_indices)),
      cap_(cap) {}

int FiniteGroupClosure::inverse(int a) const {
  for (int b = 0; b < static_cast<int>(elements_.size()); ++b)
    if (table_[a][b] == identity_index()) return b;
  throw Error(ErrorKind::internal, "group element without inverse");
}

int FiniteGroupClosure::find(const Matrix& g) const {
  for (int k = 0; k < static_cast<int>(elements_.size()); ++k)
    if (elements_[k] == g) return k;
  return -1;
}

FiniteGroupClosure close_group(const std::vector<Matrix>& generators, int cap) {
  require_exact_square(generators);
  const long d = generators[0].rows();
  for (const Matrix& g : generators)
    if (!try_inverse(g).inverse) throw Error(ErrorKind::input, "singular generator");

  std::vector<Matrix> elements{Matrix::identity(d, Mode::exact)};
  std::map<std::string, int> index{{exact_key(elements[0]), 0}};
  // Breadth-first products; the closure of a finite set under multiplication
  // is already a group.
  std::size_t next = 0;
  while (next < elements.size()) {
    Matrix a = elements[next];
    for (const Matrix& g : generators) {
      Matrix b = a * g;
      std::string k = exact_key(b);
      if (index.count(k)) continue;
      if (static_cast<int>(elements.size()) >= cap)
        throw Error(ErrorKind::cap_exceeded,
                    "group closure exceeds cap of " + std::to_string(cap) + " elements");
      index.emplace(std::move(k), static_cast<int>(elements.size()));
      elements.push_back(std::move(b));
    }
    ++next;
  }

  const int order = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(order, std::vector<int>(order, -1));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      auto it = index.find(exact_key(elements[a] * elements[b]));
      if (it == index.end()) throw Error(ErrorKind::internal, "closure not closed under products");
      table[a][b] = it->second;
    }

  std::vector<int> gen_idx;
  for (const Matrix& g : generators) {
    auto it = index.find(exact_key(g));
    gen_idx.push_back(it == index.end() ? -1 : it->second);
  }
  return FiniteGroupClosure(std::move(elements), std::move(table), std::move(gen_idx), cap);
}

VertexOperator model_i(const std::vector<Matrix>& generators) {
  if (generators.empty()) throw Error(ErrorKind::input, "no generators given");
  const long r = static_cast<long>(generators.size());
  const long d = generators[0].rows();
  const Mode mode = generators[0].mode();
  for (const Matrix& g : generators) {
    if (g.rows() != d || g.cols() != d)
      throw Error(ErrorKind::input, "generators must be square of equal dimension");
    if (g.mode() != mode) throw Error(ErrorKind::mode_mismatch, "mixed-mode generators");
    if (!try_inverse(g).inverse) throw Error(ErrorKind::input, "singular generator");
  }
  Matrix u(r * d, r * d, mode);
  for (long i = 0; i < r; ++i)
    for (long a = 0; a < d; ++a)
      for (long b = 0; b < d; ++b)
        if (!generators[i].at(a, b).is_zero()) u.set(i * d + a, i * d + b, generators[i].at(a, b));
  VertexOperator out(r, d, std::move(u));
  if (!check_star(out))
    throw Error(ErrorKind::internal, "diagonal model failed the star condition");
  return out;
}

VertexOperator model_ii(const std::vector<Matrix>& generators) {
  if (generators.empty()) throw Error(ErrorKind::input, "no generators given");
  const long r = static_cast<long>(generators.size());
  const long d = generators[0].rows();
  const Mode mode = generators[0].mode();
  for (const Matrix& g : generators) {
    if (g.rows() != d || g.cols() != d)
      throw Error(ErrorKind::input, "generators must be square of equal dimension");
    if (g.mode() != mode) throw Error(ErrorKind::mode_mismatch, "mixed-mode generators");
    if (!try_inverse(g).inverse) throw Error(ErrorKind::input, "singular generator");
  }
  // s_{(a,x),(b,y)} = (g_x)_{ab} delta_{xy}
  Matrix s(d * r, d * r, mode);
  for (long x = 0; x < r; ++x)
    for (long a = 0; a < d; ++a)
      for (long b = 0; b < d; ++b)
        if (!generators[x].at(a, b).is_zero()) s.set(a * r + x, b * r + x, generators[x].at(a, b));
  VertexOperator out(d, r, std::move(s));
  if (!check_star(out))
    throw Error(ErrorKind::internal, "second model family failed the star condition");
  return out;
}

std::vector<Matrix> pgl_generators(const std::vector<Matrix>& generators) {
  std::vector<Matrix> out;
  for (const Matrix& g : generators) {
    if (!try_inverse(g).inverse) throw Error(ErrorKind::input, "singular generator");
    out.push_back(kron(g, transpose(inverse(g))));
  }
  return out;
}

std::vector<Matrix> model_ii_group(const std::vector<Matrix>& generators) {
  if (generators.empty()) throw Error(ErrorKind::input, "no generators given");
  Matrix g1inv = inverse(generators[0]);
  std::vector<Matrix> out;
  for (std::size_t k = 1; k < generators.size(); ++k) out.push_back(generators[k] * g1inv);
  return out;
}

Matrix projective_representative(const Matrix& g) {
  if (g.mode() != Mode::exact)
    throw Error(ErrorKind::input, "projective reduction needs exact-mode matrices");
  for (long r = 0; r < g.rows(); ++r)
    for (long c = 0; c < g.cols(); ++c)
      if (!g.at(r, c).is_zero()) {
        Scalar inv = Scalar::one(Mode::exact) / g.at(r, c);
        return inv * g;
      }
  throw Error(ErrorKind::input, "zero matrix has no projective representative");
}

long OracleGrid::at(int i, int j) const {
  auto it = dims.find({i, j});
  if (it == dims.end()) throw Error(ErrorKind::input, "oracle cell out of range");
  return it->second;
}

OracleGrid group_lattice_oracle(const FiniteGroupClosure& g, const std::vector<int>& x_elements,
                                int depth) {
  if (x_elements.empty()) throw Error(ErrorKind::input, "empty letter assignment");
  for (int e : x_elements)
    if (e < 0 || e >= g.order()) throw Error(ErrorKind::input, "assignment element out of range");
  const int r = static_cast<int>(x_elements.size());
  std::vector<int> xhat_elements;
  for (int e : x_elements) xhat_elements.push_back(g.inverse(e));

  OracleGrid grid;
  grid.depth = depth;
  for (int i = 0; i <= depth; ++i)
    for (int j = 0; j <= i; ++j) {
      const int k = i - j;
      std::vector<long> counts(g.order(), 0);
      std::vector<int> tuple(k, 0);
      while (true) {
        int prod = g.identity_index();
        for (int t = 0; t < k; ++t) {
          int p = j + 1 + t;  // 1-based letter position
          int el = p % 2 == 1 ? x_elements[tuple[t]] : xhat_elements[tuple[t]];
          prod = g.product(prod, el);
        }
        ++counts[prod];
        int t = k - 1;
        while (t >= 0 && ++tuple[t] == r) tuple[t--] = 0;
        if (t < 0) break;
      }
      long dim = 0;
      for (long c : counts) dim += c * c;
      grid.dims[{i, j}] = dim;
    }
  return grid;
}

}  // namespace vmlat
