// Copyright 2026 The FOLP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "folp/mps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace folp {

namespace {

enum class Section {
  kNone,
  kName,
  kObjsense,
  kRows,
  kColumns,
  kRhs,
  kRanges,
  kBounds,
  kEnd,
};

enum class RowType { kObjective, kFree, kLess, kGreater, kEqual };

struct RowInfo {
  RowType type;
  Index index;  // position among constraint rows, -1 for objective/free
};

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

double parse_number(const std::string& token, Index line_number) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') {
    throw MpsParseError("cannot parse number '" + token + "'", line_number);
  }
  return v;
}

struct Parser {
  std::unordered_map<std::string, RowInfo> rows;
  std::vector<std::string> row_order;          // constraint rows, file order
  std::vector<RowType> row_types;              // per constraint row
  std::vector<double> row_rhs;
  std::vector<bool> row_has_range;
  std::vector<double> row_range;

  std::unordered_map<std::string, Index> columns;
  std::vector<std::string> column_order;
  std::vector<double> objective;
  std::vector<double> lower, upper;
  std::vector<bool> lower_touched;
  std::vector<Triplet> entries;  // (constraint row, column, value)

  std::string objective_row_name;
  bool has_objective_row = false;
  double objective_rhs = 0.0;
  bool maximize = false;
  std::string problem_name = "UNNAMED";

  Index column_of(const std::string& name) {
    auto it = columns.find(name);
    if (it != columns.end()) return it->second;
    const Index idx = static_cast<Index>(column_order.size());
    columns.emplace(name, idx);
    column_order.push_back(name);
    objective.push_back(0.0);
    lower.push_back(0.0);
    upper.push_back(kInf);
    lower_touched.push_back(false);
    return idx;
  }
};

void handle_rows_line(Parser& p, const std::vector<std::string>& tokens,
                      Index line_number) {
  if (tokens.size() != 2) {
    throw MpsParseError("ROWS line needs a type and a name", line_number);
  }
  const std::string type = upper(tokens[0]);
  const std::string& name = tokens[1];
  if (p.rows.count(name) != 0) {
    throw MpsParseError("duplicate row '" + name + "'", line_number);
  }
  if (type == "N") {
    if (!p.has_objective_row) {
      p.has_objective_row = true;
      p.objective_row_name = name;
      p.rows.emplace(name, RowInfo{RowType::kObjective, -1});
    } else {
      // Additional free rows carry no constraint; their entries are dropped.
      p.rows.emplace(name, RowInfo{RowType::kFree, -1});
    }
    return;
  }
  RowType rt;
  if (type == "L") rt = RowType::kLess;
  else if (type == "G") rt = RowType::kGreater;
  else if (type == "E") rt = RowType::kEqual;
  else throw MpsParseError("unknown row type '" + tokens[0] + "'", line_number);
  const Index idx = static_cast<Index>(p.row_order.size());
  p.rows.emplace(name, RowInfo{rt, idx});
  p.row_order.push_back(name);
  p.row_types.push_back(rt);
  p.row_rhs.push_back(0.0);
  p.row_has_range.push_back(false);
  p.row_range.push_back(0.0);
}

void handle_columns_line(Parser& p, const std::vector<std::string>& tokens,
                         Index line_number, bool& in_integer_section) {
  for (const std::string& token : tokens) {
    if (upper(token) == "'MARKER'") {
      for (const std::string& t : tokens) {
        const std::string tu = upper(t);
        if (tu == "'INTORG'") in_integer_section = true;
        if (tu == "'INTEND'") in_integer_section = false;
      }
      return;  // integrality is dropped: LP relaxation
    }
  }
  if (tokens.size() < 3 || tokens.size() % 2 == 0) {
    throw MpsParseError("COLUMNS line needs name and row/value pairs",
                        line_number);
  }
  const Index col = p.column_of(tokens[0]);
  for (std::size_t i = 1; i + 1 < tokens.size(); i += 2) {
    const auto it = p.rows.find(tokens[i]);
    if (it == p.rows.end()) {
      throw MpsParseError("reference to undeclared row '" + tokens[i] + "'",
                          line_number);
    }
    const double value = parse_number(tokens[i + 1], line_number);
    switch (it->second.type) {
      case RowType::kObjective:
        p.objective[static_cast<std::size_t>(col)] += value;
        break;
      case RowType::kFree:
        break;
      default:
        p.entries.push_back({it->second.index, col, value});
    }
  }
}

void handle_rhs_line(Parser& p, const std::vector<std::string>& tokens,
                     Index line_number) {
  // First token is the RHS set name unless the line pairs up without it.
  std::size_t first = tokens.size() % 2 == 1 ? 1 : 0;
  if (tokens.size() < 2) {
    throw MpsParseError("RHS line needs row/value pairs", line_number);
  }
  for (std::size_t i = first; i + 1 < tokens.size(); i += 2) {
    const auto it = p.rows.find(tokens[i]);
    if (it == p.rows.end()) {
      throw MpsParseError("reference to undeclared row '" + tokens[i] + "'",
                          line_number);
    }
    const double value = parse_number(tokens[i + 1], line_number);
    switch (it->second.type) {
      case RowType::kObjective:
        // Standard convention: the objective-row RHS is minus the constant.
        p.objective_rhs = value;
        break;
      case RowType::kFree:
        break;
      default:
        p.row_rhs[static_cast<std::size_t>(it->second.index)] = value;
    }
  }
}

void handle_ranges_line(Parser& p, const std::vector<std::string>& tokens,
                        Index line_number) {
  std::size_t first = tokens.size() % 2 == 1 ? 1 : 0;
  if (tokens.size() < 2) {
    throw MpsParseError("RANGES line needs row/value pairs", line_number);
  }
  for (std::size_t i = first; i + 1 < tokens.size(); i += 2) {
    const auto it = p.rows.find(tokens[i]);
    if (it == p.rows.end() || it->second.index < 0) {
      throw MpsParseError("RANGES references non-constraint row '" +
                              tokens[i] + "'",
                          line_number);
    }
    const std::size_t r = static_cast<std::size_t>(it->second.index);
    p.row_has_range[r] = true;
    p.row_range[r] = parse_number(tokens[i + 1], line_number);
  }
}

void handle_bounds_line(Parser& p, const std::vector<std::string>& tokens,
                        Index line_number) {
  if (tokens.size() < 2) {
    throw MpsParseError("BOUNDS line needs a type and a column", line_number);
  }
  const std::string type = upper(tokens[0]);
  const bool needs_value = type == "LO" || type == "UP" || type == "FX";
  // The bound-set name is optional in the wild; detect its absence by the
  // token count (value types take 4 fields with it, free types 3).
  const std::size_t col_field =
      tokens.size() >= (needs_value ? 4u : 3u) ? 2 : 1;
  const std::string& col_name = tokens[col_field];
  if (p.columns.count(col_name) == 0) {
    throw MpsParseError("bound on undeclared column '" + col_name + "'",
                        line_number);
  }
  const std::size_t c = static_cast<std::size_t>(p.columns.at(col_name));
  if (needs_value && tokens.size() < col_field + 2) {
    throw MpsParseError("bound type " + type + " needs a value", line_number);
  }
  const double value =
      needs_value ? parse_number(tokens[col_field + 1], line_number) : 0.0;
  if (type == "LO") {
    p.lower[c] = value;
    p.lower_touched[c] = true;
  } else if (type == "UP") {
    p.upper[c] = value;
    // Classic MPS quirk: a negative upper bound on a column whose lower
    // bound was never set releases the lower bound.
    if (value < 0.0 && !p.lower_touched[c]) p.lower[c] = -kInf;
  } else if (type == "FX") {
    p.lower[c] = value;
    p.upper[c] = value;
    p.lower_touched[c] = true;
  } else if (type == "FR") {
    p.lower[c] = -kInf;
    p.upper[c] = kInf;
    p.lower_touched[c] = true;
  } else if (type == "MI") {
    p.lower[c] = -kInf;
    p.lower_touched[c] = true;
  } else if (type == "PL") {
    p.upper[c] = kInf;
  } else if (type == "BV") {
    p.lower[c] = 0.0;
    p.upper[c] = 1.0;
    p.lower_touched[c] = true;
  } else {
    throw MpsParseError("unknown bound type '" + tokens[0] + "'", line_number);
  }
}

MpsInstance assemble(Parser& p) {
  const Index num_constraints = static_cast<Index>(p.row_order.size());
  const Index n = static_cast<Index>(p.column_order.size());

  // Resolve each row to a (lower, upper) activity interval, then emit
  // Gx >= h rows followed by Ax = b rows. Two-sided rows become two
  // inequality rows.
  struct Interval {
    double lo, hi;
  };
  std::vector<Interval> interval(static_cast<std::size_t>(num_constraints));
  for (Index r = 0; r < num_constraints; ++r) {
    const std::size_t s = static_cast<std::size_t>(r);
    const double rhs = p.row_rhs[s];
    double lo = -kInf, hi = kInf;
    switch (p.row_types[s]) {
      case RowType::kGreater:
        lo = rhs;
        if (p.row_has_range[s]) hi = rhs + std::fabs(p.row_range[s]);
        break;
      case RowType::kLess:
        hi = rhs;
        if (p.row_has_range[s]) lo = rhs - std::fabs(p.row_range[s]);
        break;
      case RowType::kEqual:
        if (p.row_has_range[s] && p.row_range[s] != 0.0) {
          if (p.row_range[s] > 0.0) {
            lo = rhs;
            hi = rhs + p.row_range[s];
          } else {
            lo = rhs + p.row_range[s];
            hi = rhs;
          }
        } else {
          lo = rhs;
          hi = rhs;
        }
        break;
      default:
        break;
    }
    interval[s] = {lo, hi};
  }

  // Output row layout: for each constraint row in file order, a >= row if
  // it has a finite lower activity bound, then (for two-sided rows) the
  // negated upper side appended to the inequality block in file order.
  std::vector<Index> primary_row(static_cast<std::size_t>(num_constraints),
                                 -1);
  std::vector<Index> secondary_row(static_cast<std::size_t>(num_constraints),
                                   -1);
  Index next = 0;
  std::vector<double> rhs_out;
  std::vector<char> negate_primary(static_cast<std::size_t>(num_constraints),
                                   0);
  for (Index r = 0; r < num_constraints; ++r) {
    const std::size_t s = static_cast<std::size_t>(r);
    const Interval iv = interval[s];
    if (iv.lo == iv.hi) continue;  // equality block comes later
    if (iv.lo > -kInf) {
      primary_row[s] = next++;
      rhs_out.push_back(iv.lo);
    } else if (iv.hi < kInf) {
      primary_row[s] = next++;
      negate_primary[s] = 1;
      rhs_out.push_back(-iv.hi);
    }
    // else: a constraint row with no finite side is vacuous; rows default
    // to rhs 0, so this only happens via explicit infinite ranges.
  }
  for (Index r = 0; r < num_constraints; ++r) {
    const std::size_t s = static_cast<std::size_t>(r);
    const Interval iv = interval[s];
    if (iv.lo == iv.hi || iv.lo == -kInf || iv.hi == kInf) continue;
    secondary_row[s] = next++;
    rhs_out.push_back(-iv.hi);
  }
  const Index m1 = next;
  for (Index r = 0; r < num_constraints; ++r) {
    const std::size_t s = static_cast<std::size_t>(r);
    if (interval[s].lo == interval[s].hi) {
      primary_row[s] = next++;
      rhs_out.push_back(interval[s].lo);
    }
  }

  std::vector<Triplet> triplets;
  triplets.reserve(p.entries.size() * 2);
  for (const Triplet& e : p.entries) {
    const std::size_t s = static_cast<std::size_t>(e.row);
    if (primary_row[s] >= 0) {
      const double v = negate_primary[s] ? -e.value : e.value;
      triplets.push_back({primary_row[s], e.col, v});
    }
    if (secondary_row[s] >= 0) {
      triplets.push_back({secondary_row[s], e.col, -e.value});
    }
  }

  MpsInstance out;
  out.name = p.problem_name;
  out.was_maximization = p.maximize;
  LinearProgram& lp = out.lp;
  lp.objective = std::move(p.objective);
  lp.objective_constant = -p.objective_rhs;
  lp.constraint_matrix = SparseMatrix::from_triplets(next, n, triplets);
  lp.right_hand_side = std::move(rhs_out);
  lp.num_inequality_rows = m1;
  lp.variable_lower = std::move(p.lower);
  lp.variable_upper = std::move(p.upper);
  if (out.was_maximization) {
    for (double& v : lp.objective) v = -v;
    lp.objective_constant = -lp.objective_constant;
  }
  return out;
}

}  // namespace

MpsInstance parse_mps(std::string_view text) {
  Parser parser;
  Section section = Section::kNone;
  bool in_integer_section = false;
  bool objsense_pending = false;

  Index line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                       : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_number;
    if (line.empty() || line[0] == '*') continue;
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;

    const bool is_header = !std::isspace(static_cast<unsigned char>(line[0]));
    if (is_header) {
      const std::string keyword = upper(tokens[0]);
      objsense_pending = false;
      if (keyword == "NAME") {
        section = Section::kName;
        if (tokens.size() > 1) parser.problem_name = tokens[1];
      } else if (keyword == "OBJSENSE") {
        section = Section::kObjsense;
        if (tokens.size() > 1) {
          const std::string sense = upper(tokens[1]);
          parser.maximize = sense == "MAX" || sense == "MAXIMIZE";
        } else {
          objsense_pending = true;
        }
      } else if (keyword == "ROWS") {
        section = Section::kRows;
      } else if (keyword == "COLUMNS") {
        section = Section::kColumns;
      } else if (keyword == "RHS") {
        section = Section::kRhs;
      } else if (keyword == "RANGES") {
        section = Section::kRanges;
      } else if (keyword == "BOUNDS") {
        section = Section::kBounds;
      } else if (keyword == "ENDATA") {
        section = Section::kEnd;
        break;
      } else {
        throw MpsParseError("unknown section '" + tokens[0] + "'",
                            line_number);
      }
      continue;
    }

    switch (section) {
      case Section::kObjsense: {
        if (objsense_pending) {
          const std::string sense = upper(tokens[0]);
          parser.maximize = sense == "MAX" || sense == "MAXIMIZE";
          objsense_pending = false;
        }
        break;
      }
      case Section::kRows:
        handle_rows_line(parser, tokens, line_number);
        break;
      case Section::kColumns:
        handle_columns_line(parser, tokens, line_number, in_integer_section);
        break;
      case Section::kRhs:
        handle_rhs_line(parser, tokens, line_number);
        break;
      case Section::kRanges:
        handle_ranges_line(parser, tokens, line_number);
        break;
      case Section::kBounds:
        handle_bounds_line(parser, tokens, line_number);
        break;
      case Section::kName:
      case Section::kNone:
      case Section::kEnd:
        throw MpsParseError("data line outside any section", line_number);
    }
  }
  if (!parser.has_objective_row) {
    throw MpsParseError("no objective (N) row declared", line_number);
  }
  return assemble(parser);
}

MpsInstance parse_mps_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_mps(buffer.str());
}

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string write_mps(const LinearProgram& lp, const std::string& name) {
  const Index m = lp.num_rows();
  const Index n = lp.num_variables();
  std::ostringstream out;
  out << "NAME " << (name.empty() ? "FOLP" : name) << "\n";
  out << "ROWS\n N OBJ\n";
  for (Index r = 0; r < m; ++r) {
    out << (r < lp.num_inequality_rows ? " G R" : " E R") << r << "\n";
  }
  out << "COLUMNS\n";
  for (Index c = 0; c < n; ++c) {
    const std::size_t s = static_cast<std::size_t>(c);
    // Always emit the objective entry so every column is declared.
    out << "    X" << c << " OBJ " << format_value(lp.objective[s]) << "\n";
    const auto start = lp.constraint_matrix.col_start();
    const auto rows = lp.constraint_matrix.col_rows();
    const auto values = lp.constraint_matrix.col_values();
    for (Index k = start[c]; k < start[c + 1]; ++k) {
      out << "    X" << c << " R" << rows[k] << " "
          << format_value(values[k]) << "\n";
    }
  }
  out << "RHS\n";
  if (lp.objective_constant != 0.0) {
    out << "    RHS OBJ " << format_value(-lp.objective_constant) << "\n";
  }
  for (Index r = 0; r < m; ++r) {
    const double q = lp.right_hand_side[static_cast<std::size_t>(r)];
    if (q != 0.0) out << "    RHS R" << r << " " << format_value(q) << "\n";
  }
  out << "BOUNDS\n";
  for (Index c = 0; c < n; ++c) {
    const std::size_t s = static_cast<std::size_t>(c);
    const double lo = lp.variable_lower[s];
    const double hi = lp.variable_upper[s];
    if (lo == 0.0 && hi == kInf) continue;  // the default
    if (lo == hi) {
      out << " FX BND X" << c << " " << format_value(lo) << "\n";
      continue;
    }
    if (lo == -kInf && hi == kInf) {
      out << " FR BND X" << c << "\n";
      continue;
    }
    if (lo == -kInf) {
      out << " MI BND X" << c << "\n";
    } else if (lo != 0.0) {
      out << " LO BND X" << c << " " << format_value(lo) << "\n";
    }
    if (hi < kInf) {
      out << " UP BND X" << c << " " << format_value(hi) << "\n";
    }
  }
  out << "ENDATA\n";
  return out.str();
}

void write_mps_file(const LinearProgram& lp, const std::string& name,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << write_mps(lp, name);
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace folp
