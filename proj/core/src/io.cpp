#include "vmlat/io.hpp"

#include <json.hpp>

namespace vmlat::io {

using nlohmann::json;

namespace {

Scalar scalar_from_json(const json& j, Mode mode) {
  if (mode == Mode::exact) {
    if (!j.is_string()) throw Error(ErrorKind::input, "exact scalars must be strings");
    return Scalar::parse_exact(j.get<std::string>());
  }
  if (j.is_number()) return Scalar::approx(j.get<double>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Scalar::approx({j[0].get<double>(), j[1].get<double>()});
  throw Error(ErrorKind::input, "approx scalars must be numbers or [re, im] pairs");
}

json scalar_to_json(const Scalar& s) {
  if (s.mode() == Mode::exact) return s.str();
  return json::array({s.value().real(), s.value().imag()});
}

Matrix matrix_from_flat(const json& arr, long d, Mode mode) {
  if (!arr.is_array() || static_cast<long>(arr.size()) != d * d)
    throw Error(ErrorKind::input, "matrix entry count mismatch");
  Matrix out(d, d, mode);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) {
      Scalar v = scalar_from_json(arr[r * d + c], mode);
      if (!v.is_zero()) out.set(r, c, v);
    }
  return out;
}

json blocks_to_json(const std::vector<std::pair<long, long>>& blocks) {
  json arr = json::array();
  for (auto [d, m] : blocks) arr.push_back(json::array({d, m}));
  return arr;
}

}  // namespace

InputFile parse_input(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::input, std::string("invalid JSON: ") + e.what());
  }
  InputFile in;
  if (!j.contains("m") || !j.contains("n") || !j.contains("scalar"))
    throw Error(ErrorKind::input, "input needs m, n and scalar fields");
  in.m = j["m"].get<long>();
  in.n = j["n"].get<long>();
  if (in.m <= 0 || in.n <= 0) throw Error(ErrorKind::input, "m and n must be positive");
  std::string sc = j["scalar"].get<std::string>();
  if (sc == "exact") in.mode = Mode::exact;
  else if (sc == "approx") in.mode = Mode::approx;
  else throw Error(ErrorKind::input, "scalar must be \"exact\" or \"approx\"");

  const long D = in.m * in.n;
  if (j.contains("entries")) {
    Matrix u = matrix_from_flat(j["entries"], D, in.mode);
    in.entries = std::move(u).with_legs({{in.m, false}, {in.n, false}});
  }
  if (j.contains("twist")) {
    const json& t = j["twist"];
    if (!t.is_array() || static_cast<long>(t.size()) != in.m)
      throw Error(ErrorKind::input, "twist must list one positive entry per row dimension");
    std::vector<Scalar> q;
    for (const json& e : t) q.push_back(scalar_from_json(e, in.mode));
    in.twist = std::move(q);
  }
  if (j.contains("group")) {
    const json& g = j["group"];
    InputFile::GroupBlock blk;
    blk.model = g.value("model", "i");
    if (blk.model != "i" && blk.model != "ii")
      throw Error(ErrorKind::input, "group model must be \"i\" or \"ii\"");
    if (!g.contains("generators") || !g["generators"].is_array() || g["generators"].empty())
      throw Error(ErrorKind::input, "group block needs a nonempty generator list");
    for (const json& ga : g["generators"]) {
      if (!ga.is_array()) throw Error(ErrorKind::input, "generators must be arrays");
      long d = 1;
      while (d * d < static_cast<long>(ga.size())) ++d;
      if (d * d != static_cast<long>(ga.size()))
        throw Error(ErrorKind::input, "generator entry count must be a perfect square");
      blk.generators.push_back(matrix_from_flat(ga, d, in.mode));
    }
    in.group = std::move(blk);
  }
  if (!in.entries && !in.group)
    throw Error(ErrorKind::input, "input needs either entries or a group block");
  return in;
}

std::string write_input(const InputFile& in) {
  json j;
  j["m"] = in.m;
  j["n"] = in.n;
  j["scalar"] = in.mode == Mode::exact ? "exact" : "approx";
  if (in.entries) {
    json arr = json::array();
    for (long r = 0; r < in.entries->rows(); ++r)
      for (long c = 0; c < in.entries->cols(); ++c) arr.push_back(scalar_to_json(in.entries->at(r, c)));
    j["entries"] = std::move(arr);
  }
  if (in.twist) {
    json arr = json::array();
    for (const Scalar& q : *in.twist) arr.push_back(scalar_to_json(q));
    j["twist"] = std::move(arr);
  }
  if (in.group) {
    json g;
    g["model"] = in.group->model;
    json gens = json::array();
    for (const Matrix& gm : in.group->generators) {
      json arr = json::array();
      for (long r = 0; r < gm.rows(); ++r)
        for (long c = 0; c < gm.cols(); ++c) arr.push_back(scalar_to_json(gm.at(r, c)));
      gens.push_back(std::move(arr));
    }
    g["generators"] = std::move(gens);
    j["group"] = std::move(g);
  }
  return j.dump(2) + "\n";
}

VertexOperator operator_from_input(const InputFile& in) {
  if (in.entries) return VertexOperator(in.m, in.n, *in.entries);
  const auto& blk = *in.group;
  VertexOperator u = blk.model == "i" ? model_i(blk.generators) : model_ii(blk.generators);
  if (u.m() != in.m || u.n() != in.n)
    throw Error(ErrorKind::input, "group model dimensions disagree with m, n");
  return u;
}

std::optional<TwistQ> twist_from_input(const InputFile& in) {
  if (!in.twist) return std::nullopt;
  return TwistQ(*in.twist);
}

GridSummary summarize_grid(const LatticeGrid& grid, std::uint64_t seed) {
  GridSummary g;
  g.depth = grid.depth();
  for (int i = 0; i <= grid.depth(); ++i)
    for (int j = 0; j <= i; ++j) {
      const LatticeCell& cell = grid.cell(i, j);
      GridSummary::Cell c;
      c.i = i;
      c.j = j;
      c.dim = cell.dim();
      MatrixStarAlgebra alg(cell.basis[0].rows(), cell.basis);
      c.blocks = decompose(alg, seed).block_multiset();
      g.cells.push_back(std::move(c));
    }
  return g;
}

std::string grid_json(const GridSummary& g) {
  json j;
  j["depth"] = g.depth;
  json cells = json::array();
  for (const auto& c : g.cells) {
    json jc;
    jc["i"] = c.i;
    jc["j"] = c.j;
    jc["dim"] = c.dim;
    jc["blocks"] = blocks_to_json(c.blocks);
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

GridSummary parse_grid_json(const std::string& text) {
  json j = json::parse(text);
  GridSummary g;
  g.depth = j["depth"].get<int>();
  for (const json& jc : j["cells"]) {
    GridSummary::Cell c;
    c.i = jc["i"].get<int>();
    c.j = jc["j"].get<int>();
    c.dim = jc["dim"].get<long>();
    for (const json& b : jc["blocks"]) c.blocks.emplace_back(b[0].get<long>(), b[1].get<long>());
    g.cells.push_back(std::move(c));
  }
  return g;
}

std::string check_json(const VertexOperator& u, const std::optional<TwistQ>& twist,
                       int sequence_terms) {
  json j;
  j["m"] = u.m();
  j["n"] = u.n();
  j["mode"] = mode_name(u.mode());
  j["star"] = check_star(u);
  j["unitary"] = is_unitary(u.mat());

  StarSequence seq = star_sequence(u, sequence_terms);
  json js;
  js["terms"] = static_cast<long>(seq.terms.size());
  if (seq.stopped) {
    js["singular_at"] = seq.stopped->index;
    js["pivot_magnitude"] = seq.stopped->pivot_magnitude;
  } else {
    js["singular_at"] = nullptr;
    js["period2"] = seq.terms.size() >= 3 && matches(seq.terms[2].mat(), seq.terms[0].mat(), 10.0);
  }
  j["sequence"] = std::move(js);

  if (twist) {
    json jt;
    jt["twisted"] = check_twisted(u, *twist);
    auto forms = twisted_forms(u, *twist);
    jt["forms"] = json::array({forms[0], forms[1], forms[2]});
    if (jt["twisted"].get<bool>()) jt["closed_forms_n3"] = twisted_sequence_check(u, *twist, 3);
    j["twist"] = std::move(jt);
  }
  return j.dump(2) + "\n";
}

std::string compare_json(const CompareReport& rep) {
  json j;
  j["all_match"] = rep.all_match;
  json cells = json::array();
  for (const auto& c : rep.cells) {
    json jc;
    jc["i"] = c.i;
    jc["j"] = c.j;
    jc["dim_word"] = c.dim_word;
    jc["dim_direct"] = c.dim_direct;
    jc["dims_match"] = c.dims_match;
    jc["blocks_word"] = blocks_to_json(c.blocks_word);
    jc["blocks_direct"] = blocks_to_json(c.blocks_direct);
    jc["blocks_match"] = c.blocks_match;
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

std::string cell_json(int i, int j, long dim, const std::vector<std::pair<long, long>>& blocks) {
  json jc;
  jc["i"] = i;
  jc["j"] = j;
  jc["dim"] = dim;
  jc["blocks"] = blocks_to_json(blocks);
  return jc.dump(2) + "\n";
}

std::string graph_json(int row, const PrincipalGraph& g, const std::string& bratteli_path,
                       const std::string& principal_path) {
  json j;
  j["row"] = row;
  j["stabilized"] = g.stabilized;
  if (g.stabilized) j["stabilization_step"] = g.stabilization_step;
  else j["stabilization_step"] = nullptr;
  j["index_estimate"] = g.index_estimate;
  j["connected"] = g.connected;
  j["even_blocks"] = blocks_to_json(g.even_blocks);
  j["odd_blocks"] = blocks_to_json(g.odd_blocks);
  j["bratteli_dot"] = bratteli_path;
  j["principal_dot"] = principal_path;
  return j.dump(2) + "\n";
}

std::string error_json(ErrorKind kind, const std::string& message) {
  json j;
  j["error"]["kind"] = error_kind_name(kind);
  j["error"]["message"] = message;
  return j.dump() + "\n";
}

}  // namespace vmlat::io
