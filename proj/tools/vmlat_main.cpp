// Command-line front end: validity checks, lattice computation by both
// routes, group fixtures, and graph emission.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vmlat/fixtures.hpp"
#include "vmlat/io.hpp"

namespace {

using namespace vmlat;

// exit codes: 0 success/true, 1 condition false or mismatch, 2 input error,
// 3 numerical failure; errors carry a JSON object on stderr.
int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::input:
    case ErrorKind::mode_mismatch:
      return 2;
    default:
      return 3;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::input, "cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonOpts {
  std::string file;
  double tol = 1e-9;
  int depth = 3;
  long cap = default_entry_cap;
  std::uint64_t seed = 0;
  int row = 0;
};

io::InputFile load(const CommonOpts& o) {
  set_tolerance(o.tol);
  return io::parse_input(slurp(o.file));
}

int cmd_check(const CommonOpts& o) {
  io::InputFile in = load(o);
  VertexOperator u = io::operator_from_input(in);
  std::optional<TwistQ> q = io::twist_from_input(in);
  std::cout << io::check_json(u, q, 5);
  bool ok = check_star(u);
  if (q) ok = ok && check_twisted(u, *q);
  return ok ? 0 : 1;
}

int cmd_lattice(const CommonOpts& o) {
  io::InputFile in = load(o);
  VertexOperator u = io::operator_from_input(in);
  LatticeGrid grid = lattice(make_uprime(u), o.depth, o.cap);
  std::cout << io::grid_json(io::summarize_grid(grid, o.seed));
  return 0;
}

int cmd_oracle(const CommonOpts& o, int i, int j) {
  io::InputFile in = load(o);
  VertexOperator u = io::operator_from_input(in);
  MatrixStarAlgebra alg = relative_commutant_direct(u, i, j, o.cap);
  auto dec = decompose(alg, o.seed);
  std::cout << io::cell_json(i, j, alg.dim(), dec.block_multiset());
  return 0;
}

int cmd_compare(const CommonOpts& o) {
  io::InputFile in = load(o);
  VertexOperator u = io::operator_from_input(in);
  CompareReport rep = theorem_compare(u, o.depth, o.cap, o.seed);
  std::cout << io::compare_json(rep);
  return rep.all_match ? 0 : 1;
}

int cmd_graph(const CommonOpts& o, const std::string& out_prefix) {
  io::InputFile in = load(o);
  VertexOperator u = io::operator_from_input(in);
  LatticeGrid grid = lattice(make_uprime(u), o.depth, o.cap);
  if (o.row < 0 || o.row > grid.depth())
    throw Error(ErrorKind::input, "row out of range for the computed depth");
  BratteliData data = bratteli(grid.row(o.row), grid.base().m(), o.seed);
  PrincipalGraph pg = principal_graph(data);

  std::string bpath = out_prefix + "_bratteli.dot";
  std::string ppath = out_prefix + "_principal.dot";
  std::ofstream(bpath, std::ios::binary) << bratteli_dot(data);
  std::ofstream(ppath, std::ios::binary) << principal_graph_dot(pg);
  std::cout << io::graph_json(o.row, pg, bpath, ppath);
  return 0;
}

int cmd_group(const CommonOpts& o) {
  io::InputFile in = load(o);
  if (!in.group) throw Error(ErrorKind::input, "group command needs a group block");
  VertexOperator u = io::operator_from_input(in);

  CompareReport rep = theorem_compare(u, o.depth, o.cap, o.seed);
  nlohmann::json j;
  j["model"] = in.group->model;
  bool agree = rep.all_match;

  std::optional<OracleGrid> oracle;
  if (in.group->model == "i") {
    std::vector<Matrix> hs = pgl_generators(in.group->generators);
    FiniteGroupClosure g = close_group(hs);
    j["pgl_order"] = g.order();
    std::vector<int> letters;
    for (const Matrix& h : hs) letters.push_back(g.find(h));
    oracle = group_lattice_oracle(g, letters, o.depth);
  }

  nlohmann::json cells = nlohmann::json::array();
  for (const CompareCell& c : rep.cells) {
    nlohmann::json jc;
    jc["i"] = c.i;
    jc["j"] = c.j;
    jc["dim_word"] = c.dim_word;
    jc["dim_direct"] = c.dim_direct;
    bool ok = c.dims_match && c.blocks_match;
    if (oracle) {
      long od = oracle->at(c.i, c.j);
      jc["dim_oracle"] = od;
      ok = ok && od == c.dim_word;
    }
    jc["match"] = ok;
    agree = agree && ok;
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
  j["agree"] = agree;
  std::cout << j.dump(2) << "\n";
  return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertex model standard-invariant toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  int cell_i = 1, cell_j = 0, mode_exit = 0;
  std::string out_prefix = "graph";

  auto add_common = [&](CLI::App* cmd, bool needs_file = true) {
    if (needs_file) cmd->add_option("file", o.file, "input JSON file")->required();
    cmd->add_option("--tol", o.tol, "approx-mode tolerance")->capture_default_str();
    cmd->add_option("--depth", o.depth, "lattice depth")->capture_default_str();
    cmd->add_option("--cap", o.cap, "cell entry cap")->capture_default_str();
    cmd->add_option("--seed", o.seed, "decomposition seed")->capture_default_str();
    cmd->add_option("--row", o.row, "lattice row for graph emission")->capture_default_str();
  };

  CLI::App* check = app.add_subcommand("check", "validity conditions and sequence summary");
  add_common(check);
  CLI::App* lat = app.add_subcommand("lattice", "lattice of end algebras over the doubled operator");
  add_common(lat);
  CLI::App* orc = app.add_subcommand("oracle", "one cell by the direct commutant route");
  add_common(orc);
  orc->add_option("i", cell_i, "cell column")->required();
  orc->add_option("j", cell_j, "cell row")->required();
  CLI::App* cmp = app.add_subcommand("compare", "cross-check the two computation routes");
  add_common(cmp);
  CLI::App* gra = app.add_subcommand("graph", "emit Bratteli and principal graphs as DOT");
  add_common(gra);
  gra->add_option("--out", out_prefix, "output path prefix")->capture_default_str();
  CLI::App* grp = app.add_subcommand("group", "build a group model and run the three-way comparison");
  add_common(grp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) mode_exit = cmd_check(o);
    else if (lat->parsed()) mode_exit = cmd_lattice(o);
    else if (orc->parsed()) mode_exit = cmd_oracle(o, cell_i, cell_j);
    else if (cmp->parsed()) mode_exit = cmd_compare(o);
    else if (gra->parsed()) mode_exit = cmd_graph(o, out_prefix);
    else if (grp->parsed()) mode_exit = cmd_group(o);
  } catch (const Error& e) {
    std::cerr << vmlat::io::error_json(e.kind(), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << vmlat::io::error_json(ErrorKind::internal, e.what());
    return 3;
  }
  return mode_exit;
}
