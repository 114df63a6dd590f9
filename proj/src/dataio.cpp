#include "redcalc/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iterator>
#include <map>
#include <optional>
#include <set>

#include "redcalc/error.hpp"

namespace redcalc {

namespace {

struct Record {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
  bool blank = false;
};

class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : text_(std::istreambuf_iterator<char>(in), {}) {
    if (text_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
  }

  std::optional<Record> next() {
    if (pos_ >= text_.size()) return std::nullopt;
    Record rec;
    rec.line = line_;
    std::string field;
    bool quoted_any = false;
    bool in_quotes = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_++];
      if (in_quotes) {
        if (c == '"') {
          if (pos_ < text_.size() && text_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
          } else {
            in_quotes = false;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(c);
        }
        continue;
      }
      if (c == '"') {
        in_quotes = true;
        quoted_any = true;
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\n') {
        ++line_;
        break;
      } else if (c == '\r') {
        if (pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
        ++line_;
        break;
      } else {
        field.push_back(c);
      }
    }
    rec.blank = rec.fields.empty() && field.empty() && !quoted_any;
    rec.fields.push_back(std::move(field));
    return rec;
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string bin_label(std::size_t i) { return "b" + std::to_string(i); }

}  // namespace

DataTable::DataTable(std::vector<std::string> headers, std::vector<std::vector<std::string>> columns)
    : headers_(std::move(headers)), columns_(std::move(columns)) {
  if (headers_.empty() || headers_.size() != columns_.size()) {
    throw Error(ErrorCode::EmptyInput, "table needs one column per header");
  }
  std::set<std::string> seen;
  for (const auto& h : headers_) {
    if (!seen.insert(h).second) throw Error(ErrorCode::DuplicateHeader, h);
  }
  for (const auto& c : columns_) {
    if (c.size() != columns_.front().size()) {
      throw Error(ErrorCode::RaggedRow, "columns differ in length");
    }
  }
  if (columns_.front().empty()) throw Error(ErrorCode::EmptyInput, "table has no data rows");
}

std::size_t DataTable::index_of(const std::string& name) const {
  auto it = std::find(headers_.begin(), headers_.end(), name);
  if (it == headers_.end()) throw Error(ErrorCode::UnknownColumn, name);
  return static_cast<std::size_t>(it - headers_.begin());
}

const std::vector<std::string>& DataTable::column(const std::string& name) const {
  return columns_[index_of(name)];
}

DataTable DataTable::with_column(const std::string& name, std::vector<std::string> cells) const {
  auto columns = columns_;
  columns[index_of(name)] = std::move(cells);
  return DataTable(headers_, std::move(columns));
}

DataTable load_table(std::istream& in) {
  CsvReader reader(in);
  std::optional<Record> header;
  while ((header = reader.next()) && header->blank) {
  }
  if (!header) throw Error(ErrorCode::EmptyInput, "no header row");

  std::vector<std::vector<std::string>> columns(header->fields.size());
  while (auto rec = reader.next()) {
    if (rec->blank) continue;
    if (rec->fields.size() != header->fields.size()) {
      throw Error(ErrorCode::RaggedRow, "row " + std::to_string(rec->line) + " has " +
                                            std::to_string(rec->fields.size()) + " cells, header has " +
                                            std::to_string(header->fields.size()));
    }
    for (std::size_t i = 0; i < rec->fields.size(); ++i) columns[i].push_back(std::move(rec->fields[i]));
  }
  if (columns.front().empty()) throw Error(ErrorCode::EmptyInput, "no data rows after the header");
  return DataTable(std::move(header->fields), std::move(columns));
}

BinningSpec parse_binning(const std::string& text) {
  const auto last = text.rfind(':');
  const auto mid = last == std::string::npos || last == 0 ? std::string::npos : text.rfind(':', last - 1);
  if (mid == std::string::npos) {
    throw Error(ErrorCode::InvalidBinning, "expected column:method:k, got '" + text + "'");
  }
  BinningSpec spec;
  spec.column = text.substr(0, mid);
  const std::string method = text.substr(mid + 1, last - mid - 1);
  if (method == "equal_width") {
    spec.method = BinMethod::equal_width;
  } else if (method == "equal_frequency") {
    spec.method = BinMethod::equal_frequency;
  } else {
    throw Error(ErrorCode::InvalidBinning, "unknown binning method '" + method + "'");
  }
  const std::string k = text.substr(last + 1);
  auto [ptr, ec] = std::from_chars(k.data(), k.data() + k.size(), spec.k);
  if (ec != std::errc() || ptr != k.data() + k.size() || spec.k < 2) {
    throw Error(ErrorCode::InvalidBinning, "bin count must be an integer >= 2, got '" + k + "'");
  }
  return spec;
}

DataTable bin_column(const DataTable& table, const BinningSpec& spec) {
  if (spec.k < 2) throw Error(ErrorCode::InvalidBinning, "k must be >= 2");
  const auto& cells = table.column(spec.column);
  // Empty cells stay empty so contingency() can treat them as missing.
  std::vector<std::optional<double>> values;
  values.reserve(cells.size());
  std::vector<double> sorted;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (cells[r].empty()) {
      values.emplace_back();
      continue;
    }
    auto v = parse_number(cells[r]);
    if (!v) {
      throw Error(ErrorCode::NonNumericColumn,
                  spec.column + " row " + std::to_string(r + 1) + ": '" + cells[r] + "'");
    }
    values.push_back(v);
    sorted.push_back(*v);
  }

  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct;
  std::unique_copy(sorted.begin(), sorted.end(), std::back_inserter(distinct));
  if (distinct.size() < spec.k) {
    throw Error(ErrorCode::TooFewDistinctValues, spec.column + " has " + std::to_string(distinct.size()) +
                                                     " distinct values, need " + std::to_string(spec.k));
  }

  std::vector<std::string> labels;
  labels.reserve(values.size());
  if (spec.method == BinMethod::equal_width) {
    const double lo = sorted.front();
    const double width = (sorted.back() - lo) / static_cast<double>(spec.k);
    std::vector<double> edges;
    for (std::size_t i = 1; i < spec.k; ++i) edges.push_back(lo + width * static_cast<double>(i));
    for (const auto& v : values) {
      if (!v) {
        labels.emplace_back();
        continue;
      }
      const auto bin = static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), *v) - edges.begin());
      labels.push_back(bin_label(bin));
    }
  } else {
    const std::size_t n = sorted.size();
    for (const auto& v : values) {
      if (!v) {
        labels.emplace_back();
        continue;
      }
      const auto below = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), *v) - sorted.begin());
      labels.push_back(bin_label(std::min(spec.k - 1, below * spec.k / n)));
    }
  }
  return table.with_column(spec.column, std::move(labels));
}

Contingency contingency(const DataTable& table, std::span<const std::string> vars, MissingPolicy missing) {
  if (vars.empty()) throw Error(ErrorCode::UnknownColumn, "no columns selected");
  std::vector<const std::vector<std::string>*> cols;
  for (const auto& v : vars) {
    const auto& col = table.column(v);
    bool numeric = true;
    bool integral = true;
    for (const auto& cell : col) {
      auto x = parse_number(cell);
      if (!x) {
        numeric = false;
        break;
      }
      if (std::floor(*x) != *x) integral = false;
    }
    if (numeric && !integral) {
      throw Error(ErrorCode::UnbinnedNumericColumn, v + " holds non-integer numbers; bin it first");
    }
    cols.push_back(&col);
  }

  std::vector<std::size_t> kept_rows;
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    const bool has_missing =
        std::any_of(cols.begin(), cols.end(), [&](const auto* c) { return (*c)[r].empty(); });
    if (missing == MissingPolicy::drop_row && has_missing) continue;
    kept_rows.push_back(r);
  }
  if (kept_rows.empty()) throw Error(ErrorCode::EmptyInput, "every row has a missing cell");

  auto cell_of = [&](std::size_t c, std::size_t r) -> const std::string& {
    static const std::string missing_label = kMissingLabel;
    const auto& s = (*cols[c])[r];
    return s.empty() ? missing_label : s;
  };

  Contingency out;
  out.variables.assign(vars.begin(), vars.end());
  std::vector<std::map<std::string, std::size_t>> lookup(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (auto r : kept_rows) lookup[c].emplace(cell_of(c, r), 0);
    std::vector<std::string> alphabet;
    std::size_t idx = 0;
    for (auto& [label, slot] : lookup[c]) {
      slot = idx++;
      alphabet.push_back(label);
    }
    out.counts.shape.push_back(alphabet.size());
    out.alphabets.push_back(std::move(alphabet));
  }
  std::size_t cells = 1;
  for (auto s : out.counts.shape) cells *= s;
  out.counts.cells.assign(cells, 0);
  for (auto r : kept_rows) {
    std::size_t flat = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      flat = flat * out.counts.shape[c] + lookup[c].at(cell_of(c, r));
    }
    ++out.counts.cells[flat];
  }
  return out;
}

JointDistribution to_distribution(const Contingency& c, double pseudo_count) {
  return from_counts(c.counts, c.variables, c.alphabets, pseudo_count);
}

std::vector<std::pair<std::string, std::string>> load_edges(std::istream& in) {
  std::optional<DataTable> table;
  try {
    table.emplace(load_table(in));
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedEdge, std::string(to_string(e.code())) + ": " + e.detail());
  }
  const auto& h = table->headers();
  if (std::find(h.begin(), h.end(), "source") == h.end() ||
      std::find(h.begin(), h.end(), "target") == h.end()) {
    throw Error(ErrorCode::MalformedEdge, "edge list needs 'source' and 'target' columns");
  }
  const auto& src = table->column("source");
  const auto& dst = table->column("target");
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t r = 0; r < src.size(); ++r) {
    if (src[r].empty() || dst[r].empty()) {
      throw Error(ErrorCode::MalformedEdge, "edge " + std::to_string(r + 1) + " has an empty endpoint");
    }
    edges.emplace_back(src[r], dst[r]);
  }
  return edges;
}

}  // namespace redcalc
