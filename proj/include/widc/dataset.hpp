#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "widc/sample.hpp"

namespace widc {

enum class ColumnKind { Boolean, Categorical, Continuous, Class, Label, Ignore };

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::Boolean;
  std::size_t max_thresholds = 8;        // continuous only
  std::vector<std::string> class_values; // class only; empty means discovered
};

/// Column kinds, one `name=kind` line per column. Kinds: boolean, categorical,
/// continuous[:max_thresholds], class[:v1,v2,...], label, ignore. Exactly one
/// class column, or one or more label columns for multilabel data. `#` starts
/// a comment.
struct DatasetSchema {
  std::vector<ColumnSpec> columns;

  static DatasetSchema parse(std::istream& in);
  static DatasetSchema load(const std::string& path);
  /// Every column boolean except the last, which is the class.
  static DatasetSchema boolean_with_class_last(const std::vector<std::string>& header);
  const ColumnSpec* find(const std::string& name) const;
};

/// How one boolean variable is derived from a raw column.
struct DerivedVariable {
  std::string name;
  std::string source_name;
  std::size_t source_column = 0;
  ColumnKind kind = ColumnKind::Boolean;
  std::string category;  // categorical: value that sets the bit
  double threshold = 0;  // continuous: bit set iff value > threshold
};

class BinarizationMap {
 public:
  std::vector<DerivedVariable> variables;

  std::size_t size() const noexcept { return variables.size(); }
  std::vector<std::string> names() const;
  /// Thresholds of one source column in increasing order.
  std::vector<double> thresholds(std::size_t source_column) const;
  /// Raw row (all columns, header order) to observation. Throws DataError on an
  /// unparseable cell.
  Observation apply(const std::vector<std::string>& row, std::size_t line = 0) const;
  /// Same variables with source columns looked up by name in another header.
  /// Throws DataError when a source column is absent.
  BinarizationMap rebind(const std::vector<std::string>& header) const;
};

nlohmann::json to_json(const BinarizationMap& map);
BinarizationMap binarization_from_json(const nlohmann::json& j);

struct LoadedDataset {
  Sample sample;
  BinarizationMap map;
  std::vector<std::string> header;
  std::vector<std::string> class_names;
  std::vector<std::vector<std::string>> raw_rows;  // rows kept, in sample order
  std::size_t dropped_rows = 0;                    // rows with '?' in a used column
  std::vector<std::string> warnings;
};

/// Comma-separated, header first, `?` for missing. Throws DataError with the
/// 1-based line number on malformed rows, unparseable cells and labels outside
/// a declared class list.
LoadedDataset load_csv(std::istream& in, const DatasetSchema& schema);
LoadedDataset load_csv(const std::string& path, const DatasetSchema& schema);
/// Loads with the schema file when given, otherwise boolean_with_class_last.
LoadedDataset load_csv_auto(const std::string& path, const std::string& schema_path);

/// Re-encodes a headed CSV with an existing map, binding columns by name.
std::vector<Observation> binarize_rows(std::istream& in, const BinarizationMap& map);

std::vector<std::string> split_csv_line(const std::string& line);

/// Booleanized dump: one 0/1 column per variable plus a class column
/// (multilabel classes joined with '|').
void write_sample_csv(std::ostream& os, const Sample& sample, const std::vector<std::string>& variable_names,
                      const std::vector<std::string>& class_names);

bool parse_bool(const std::string& cell, bool& value);

}  // namespace widc
