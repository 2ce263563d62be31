#include "diagx/iotable.hpp"

#include <cmath>
#include <set>
#include <string>

#include "diagx/csv.hpp"

namespace diagx {

namespace {

using detail_csv::parse_number;
using detail_csv::split_fields;
using detail_csv::trim;

}  // namespace

IOTable parse_io_table(const std::string& text) {
  const auto lines = detail_csv::logical_lines(text);
  if (lines.empty()) throw ParseError("empty table: no header line");

  const auto header = split_fields(lines[0].second);
  if (trim(header[0]) != "sector") {
    throw ParseError("header must start with 'sector', got '" + trim(header[0]) + "'",
                     lines[0].first);
  }
  if (header.size() < 2) throw ParseError("header names no sectors", lines[0].first);

  IOTable t;
  std::set<std::string> seen;
  for (std::size_t j = 1; j < header.size(); ++j) {
    const std::string name = trim(header[j]);
    if (name.empty()) throw ParseError("empty sector name in header", lines[0].first);
    if (!seen.insert(name).second) {
      throw ParseError("duplicate sector name '" + name + "'", lines[0].first);
    }
    t.sectors.push_back(name);
  }
  const std::size_t n = t.sectors.size();
  if (lines.size() != n + 2) {
    throw ParseError("expected " + std::to_string(n) + " flow rows plus a gross_outlay line (" +
                     std::to_string(n + 2) + " content lines total), found " +
                     std::to_string(lines.size()));
  }

  t.flows = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [no, line] = lines[i + 1];
    const auto fields = split_fields(line);
    if (fields.size() != n + 1) {
      throw ParseError("expected sector name plus " + std::to_string(n) + " flows", no);
    }
    if (trim(fields[0]) != t.sectors[i]) {
      throw ParseError("row " + std::to_string(i + 1) + " is named '" + trim(fields[0]) +
                           "' but the header lists '" + t.sectors[i] + "' here",
                       no);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = parse_number(fields[j + 1], no);
      if (v < 0.0) {
        throw ParseError("negative flow at row '" + t.sectors[i] + "', column '" +
                             t.sectors[j] + "'",
                         no);
      }
      t.flows(i, j) = v;
    }
  }

  const auto& [ono, oline] = lines[n + 1];
  const auto ofields = split_fields(oline);
  if (trim(ofields[0]) != "gross_outlay") {
    throw ParseError("last line must start with 'gross_outlay', got '" + trim(ofields[0]) + "'",
                     ono);
  }
  if (ofields.size() != n + 1) {
    throw ParseError("gross_outlay needs " + std::to_string(n) + " values", ono);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double v = parse_number(ofields[j + 1], ono);
    if (v < 0.0) throw ParseError("negative gross outlay for '" + t.sectors[j] + "'", ono);
    t.gross_outlay.push_back(v);
  }
  for (std::size_t j = 0; j < n; ++j) {
    double colsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) colsum += t.flows(i, j);
    if (colsum - t.gross_outlay[j] > 1e-9 * std::max(1.0, t.gross_outlay[j])) {
      throw ParseError("column '" + t.sectors[j] + "' flows sum to " +
                           std::to_string(colsum) + ", exceeding its gross outlay " +
                           std::to_string(t.gross_outlay[j]),
                       ono);
    }
  }
  return t;
}

IOTable read_io_table(const std::string& path) {
  return parse_io_table(read_text_file(path));
}

ShareMatrix expenditure_share(const IOTable& table, Normalization normalization) {
  const std::size_t n = table.size();
  if (n == 0) throw DegenerateTableError("share matrix of an empty table");
  ShareMatrix s{Matrix(n, n), table.sectors, normalization, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t axis = normalization == Normalization::Column ? j : i;
      const double outlay = table.gross_outlay[axis];
      if (outlay == 0.0) {
        s.a(i, j) = 0.0;
        continue;
      }
      const double share = table.flows(i, j) / outlay;
      if (share < 0.0 || share > 1.0 + 1e-12) {
        throw ParseError("share " + std::to_string(share) + " for flow ('" +
                         table.sectors[i] + "' -> '" + table.sectors[j] +
                         "') falls outside [0, 1] under the chosen normalization");
      }
      s.a(i, j) = std::min(share, 1.0);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (table.gross_outlay[j] == 0.0) {
      s.warnings.push_back("sector '" + table.sectors[j] +
                           "' has zero gross outlay; its shares are zero");
    }
  }
  if (normalization == Normalization::Row) {
    for (std::size_t i = 0; i < n; ++i) {
      double rowsum = 0.0;
      for (std::size_t j = 0; j < n; ++j) rowsum += s.a(i, j);
      if (rowsum > 1.0 + 1e-9) {
        throw ParseError("row '" + table.sectors[i] + "' shares sum to " +
                         std::to_string(rowsum) +
                         "; the table is unsuitable for row normalization");
      }
    }
  }
  return s;
}

PruneResult prune_disconnected(const IOTable& table) {
  IOTable cur = table;
  std::vector<std::string> removed;
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t n = cur.size();
    std::vector<bool> keep(n, true);
    for (std::size_t k = 0; k < n; ++k) {
      bool all_zero = true;
      for (std::size_t j = 0; j < n && all_zero; ++j)
        if (cur.flows(k, j) != 0.0) all_zero = false;
      for (std::size_t i = 0; i < n && all_zero; ++i)
        if (cur.flows(i, k) != 0.0) all_zero = false;
      if (all_zero) {
        keep[k] = false;
        removed.push_back(cur.sectors[k]);
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k)
      if (keep[k]) idx.push_back(k);
    if (idx.empty()) {
      throw DegenerateTableError("pruning removed every sector; the table has no flows");
    }
    IOTable next;
    next.flows = Matrix(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      next.sectors.push_back(cur.sectors[idx[a]]);
      next.gross_outlay.push_back(cur.gross_outlay[idx[a]]);
      for (std::size_t b = 0; b < idx.size(); ++b)
        next.flows(a, b) = cur.flows(idx[a], idx[b]);
    }
    cur = std::move(next);
  }
  return {std::move(cur), std::move(removed)};
}

TableReport table_report(const IOTable& table, const TolerancePolicy& policy,
                         const TableOptions& options) {
  TableReport r;
  r.dimension_original = table.size();

  const IOTable* working = &table;
  PruneResult pruned;
  if (options.prune) {
    pruned = prune_disconnected(table);
    r.pruned = pruned.removed;
    working = &pruned.table;
  }

  const ShareMatrix share = expenditure_share(*working, options.normalization);
  r.dimension = working->size();
  r.sectors = working->sectors;
  r.warnings = share.warnings;

  r.verdict = classify_full(share.a, policy);
  r.rank = r.verdict.evidence.rank;
  r.nonzero_count = r.verdict.evidence.nonzero_count;
  r.nonzero_distinct = r.verdict.evidence.nonzero_distinct;
  return r;
}

}  // namespace diagx
