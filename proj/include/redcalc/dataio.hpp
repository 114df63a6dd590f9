#pragma once

// Delimited-text ingestion, numeric binning and contingency tallies.

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "redcalc/probkit.hpp"

namespace redcalc {

// Label substituted for empty cells when missing values are kept.
inline constexpr const char* kMissingLabel = "\xE2\x88\x85";  // U+2205

class DataTable {
 public:
  DataTable(std::vector<std::string> headers, std::vector<std::vector<std::string>> columns);

  const std::vector<std::string>& headers() const noexcept { return headers_; }
  std::size_t row_count() const noexcept { return columns_.front().size(); }
  std::size_t column_count() const noexcept { return headers_.size(); }

  // Throws UnknownColumn.
  std::size_t index_of(const std::string& name) const;
  const std::vector<std::string>& column(const std::string& name) const;
  const std::vector<std::string>& column(std::size_t index) const { return columns_.at(index); }

  DataTable with_column(const std::string& name, std::vector<std::string> cells) const;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> columns_;
};

// Comma-delimited, header first. Double-quoted fields may contain commas,
// doubled quotes and newlines. A UTF-8 byte order mark and CR line endings
// are tolerated; blank lines are skipped.
DataTable load_table(std::istream& in);

enum class BinMethod { equal_width, equal_frequency };

struct BinningSpec {
  std::string column;
  BinMethod method = BinMethod::equal_width;
  std::size_t k = 2;
};

// Parses "column:method:k", method being equal_width or equal_frequency.
BinningSpec parse_binning(const std::string& text);

// Replaces the column by labels b0..b{k-1}. Equal-width edges split
// [min, max] evenly and a value on an edge goes to the higher bin; the
// maximum lands in the last bin. Equal-frequency assigns by rank, keeping
// tied values together.
DataTable bin_column(const DataTable& table, const BinningSpec& spec);

enum class MissingPolicy { as_category, drop_row };

struct Contingency {
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> alphabets;  // sorted distinct values
  CountTable counts;
};

// Tallies co-occurrences of the named columns. Throws UnknownColumn, and
// UnbinnedNumericColumn for a column of numbers that are not all integers.
Contingency contingency(const DataTable& table, std::span<const std::string> vars,
                        MissingPolicy missing = MissingPolicy::as_category);

JointDistribution to_distribution(const Contingency& c, double pseudo_count = 0.0);

// Edge list with header "source,target". Extra columns are ignored.
std::vector<std::pair<std::string, std::string>> load_edges(std::istream& in);

}  // namespace redcalc
