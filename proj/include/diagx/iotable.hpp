#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "diagx/diagnostics.hpp"
#include "diagx/matrix.hpp"
#include "diagx/tolerance.hpp"

namespace diagx {

/// Inter-sector flow table: flows(i, j) is the value sector j purchases
/// from sector i, and gross_outlay(j) bounds column j's total from above.
struct IOTable {
  std::vector<std::string> sectors;
  Matrix flows;
  std::vector<double> gross_outlay;

  std::size_t size() const { return sectors.size(); }
};

/// Parse the sector-table CSV layout:
///   line 1:        sector,<name_1>,...,<name_n>
///   lines 2..n+1:  <name_i>,<flow_i1>,...,<flow_in>
///   line n+2:      gross_outlay,<o_1>,...,<o_n>
/// '#' comment lines and blank lines are skipped; CRLF accepted.  Errors
/// carry the offending line number.
IOTable parse_io_table(const std::string& text);
IOTable read_io_table(const std::string& path);

/// Which total each flow entry is divided by.
enum class Normalization { Column, Row };

/// Expenditure-share matrix a(i, j) = flows(i, j) / gross_outlay(j)
/// (column convention; Row divides by the row sector's outlay instead).
/// Entries land in [0, 1] with per-axis sums at most 1; zero outlay yields
/// a zero column (or row) plus a warning.
struct ShareMatrix {
  Matrix a;
  std::vector<std::string> sectors;
  Normalization normalization = Normalization::Column;
  std::vector<std::string> warnings;
};

ShareMatrix expenditure_share(const IOTable& table,
                              Normalization normalization = Normalization::Column);

/// Drop sectors whose flow row and flow column (diagonal included) are
/// entirely zero; repeats until stable.  Removing every sector raises
/// DegenerateTableError.
struct PruneResult {
  IOTable table;
  std::vector<std::string> removed;
};

PruneResult prune_disconnected(const IOTable& table);

/// Headline summary for one table: dimension, share-matrix rank, nonzero
/// eigenvalue count/distinctness, and the full classification verdict.
struct TableReport {
  std::size_t dimension_original = 0;
  std::size_t dimension = 0;
  std::vector<std::string> sectors;
  std::vector<std::string> pruned;
  std::size_t rank = 0;
  std::size_t nonzero_count = 0;
  bool nonzero_distinct = false;
  Verdict verdict;
  std::vector<std::string> warnings;
};

struct TableOptions {
  bool prune = false;
  Normalization normalization = Normalization::Column;
};

TableReport table_report(const IOTable& table, const TolerancePolicy& policy = {},
                         const TableOptions& options = {});

}  // namespace diagx
