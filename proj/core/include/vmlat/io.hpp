#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vmlat/algebra_structure.hpp"
#include "vmlat/commuting_square.hpp"
#include "vmlat/group_models.hpp"
#include "vmlat/intertwiner.hpp"
#include "vmlat/vertex_model.hpp"

namespace vmlat::io {

/// Parsed form of an operator input file. Exact scalars are strings like
/// "1", "-3/2", "1/2+3/4i"; approx scalars are [re, im] pairs. `entries` is
/// the row-major (m n) x (m n) matrix of u; alternatively a `group` block
/// names generators from which u is built.
struct InputFile {
  long m = 0, n = 0;
  Mode mode = Mode::exact;
  std::optional<Matrix> entries;
  std::optional<std::vector<Scalar>> twist;
  struct GroupBlock {
    std::string model;  // "i" or "ii"
    std::vector<Matrix> generators;
  };
  std::optional<GroupBlock> group;
};

InputFile parse_input(const std::string& json_text);
std::string write_input(const InputFile& in);

VertexOperator operator_from_input(const InputFile& in);
std::optional<TwistQ> twist_from_input(const InputFile& in);

/// Dimension/block summary of a lattice grid (cells decomposed with the
/// given seed).
struct GridSummary {
  int depth = 0;
  struct Cell {
    int i = 0, j = 0;
    long dim = 0;
    std::vector<std::pair<long, long>> blocks;
    bool operator==(const Cell&) const = default;
  };
  std::vector<Cell> cells;
  bool operator==(const GridSummary&) const = default;
};

GridSummary summarize_grid(const LatticeGrid& grid, std::uint64_t seed);

std::string grid_json(const GridSummary& g);
GridSummary parse_grid_json(const std::string& text);

std::string check_json(const VertexOperator& u, const std::optional<TwistQ>& twist,
                       int sequence_terms);
std::string compare_json(const CompareReport& rep);
std::string cell_json(int i, int j, long dim, const std::vector<std::pair<long, long>>& blocks);
std::string graph_json(int row, const PrincipalGraph& g, const std::string& bratteli_path,
                       const std::string& principal_path);
std::string error_json(ErrorKind kind, const std::string& message);

}  // namespace vmlat::io
