#include "widc/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "widc/discretize.hpp"
#include "widc/error.hpp"

namespace widc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

bool parse_double(const std::string& cell, double& value) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last && std::isfinite(value);
}

std::string format_threshold(double t) {
  std::ostringstream os;
  os.precision(6);
  os << t;
  return os.str();
}

bool is_used(ColumnKind k) { return k != ColumnKind::Ignore; }

}  // namespace

bool parse_bool(const std::string& cell, bool& value) {
  const std::string s = lower(cell);
  if (s == "1" || s == "true" || s == "t" || s == "yes" || s == "y") {
    value = true;
    return true;
  }
  if (s == "0" || s == "false" || s == "f" || s == "no" || s == "n") {
    value = false;
    return true;
  }
  return false;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(trim(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  out.push_back(trim(cell));
  return out;
}

DatasetSchema DatasetSchema::parse(std::istream& in) {
  DatasetSchema schema;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("expected name=kind", line_no);
    ColumnSpec spec;
    spec.name = trim(line.substr(0, eq));
    std::string kind = trim(line.substr(eq + 1));
    std::string arg;
    if (const auto colon = kind.find(':'); colon != std::string::npos) {
      arg = trim(kind.substr(colon + 1));
      kind = trim(kind.substr(0, colon));
    }
    kind = lower(kind);
    if (spec.name.empty()) throw DataError("empty column name", line_no);
    if (!seen.insert(spec.name).second) throw DataError("column '" + spec.name + "' listed twice", line_no);
    if (kind == "boolean") {
      spec.kind = ColumnKind::Boolean;
    } else if (kind == "categorical") {
      spec.kind = ColumnKind::Categorical;
    } else if (kind == "continuous") {
      spec.kind = ColumnKind::Continuous;
      if (!arg.empty()) {
        double k = 0;
        if (!parse_double(arg, k) || k < 0 || k != std::floor(k)) throw DataError("bad threshold count '" + arg + "'", line_no);
        spec.max_thresholds = static_cast<std::size_t>(k);
      }
    } else if (kind == "class") {
      spec.kind = ColumnKind::Class;
      if (!arg.empty()) {
        for (auto& v : split_csv_line(arg)) {
          if (v.empty()) throw DataError("empty class value", line_no);
          if (std::find(spec.class_values.begin(), spec.class_values.end(), v) != spec.class_values.end())
            throw DataError("class value '" + v + "' listed twice", line_no);
          spec.class_values.push_back(v);
        }
      }
    } else if (kind == "label") {
      spec.kind = ColumnKind::Label;
    } else if (kind == "ignore") {
      spec.kind = ColumnKind::Ignore;
    } else {
      throw DataError("unknown column kind '" + kind + "'", line_no);
    }
    if (!arg.empty() && spec.kind != ColumnKind::Continuous && spec.kind != ColumnKind::Class)
      throw DataError("kind '" + kind + "' takes no argument", line_no);
    schema.columns.push_back(std::move(spec));
  }
  const auto classes = std::count_if(schema.columns.begin(), schema.columns.end(),
                                     [](const ColumnSpec& s) { return s.kind == ColumnKind::Class; });
  const auto labels = std::count_if(schema.columns.begin(), schema.columns.end(),
                                    [](const ColumnSpec& s) { return s.kind == ColumnKind::Label; });
  if (classes > 1) throw DataError("schema names more than one class column");
  if (classes == 1 && labels > 0) throw DataError("schema mixes a class column with label columns");
  if (classes == 0 && labels == 0) throw DataError("schema has no class column");
  return schema;
}

DatasetSchema DatasetSchema::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schema '" + path + "'");
  return parse(in);
}

DatasetSchema DatasetSchema::boolean_with_class_last(const std::vector<std::string>& header) {
  if (header.size() < 2) throw DataError("need at least one attribute and a class column");
  DatasetSchema schema;
  for (std::size_t i = 0; i < header.size(); ++i) {
    ColumnSpec spec;
    spec.name = header[i];
    spec.kind = i + 1 == header.size() ? ColumnKind::Class : ColumnKind::Boolean;
    schema.columns.push_back(std::move(spec));
  }
  return schema;
}

const ColumnSpec* DatasetSchema::find(const std::string& name) const {
  for (const auto& c : columns)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> BinarizationMap::names() const {
  std::vector<std::string> out;
  out.reserve(variables.size());
  for (const auto& v : variables) out.push_back(v.name);
  return out;
}

std::vector<double> BinarizationMap::thresholds(std::size_t source_column) const {
  std::vector<double> out;
  for (const auto& v : variables)
    if (v.kind == ColumnKind::Continuous && v.source_column == source_column) out.push_back(v.threshold);
  return out;
}

Observation BinarizationMap::apply(const std::vector<std::string>& row, std::size_t line) const {
  Observation o(variables.size());
  for (std::size_t k = 0; k < variables.size(); ++k) {
    const auto& v = variables[k];
    if (v.source_column >= row.size()) throw DataError("row too short", line);
    const std::string& cell = row[v.source_column];
    switch (v.kind) {
      case ColumnKind::Boolean: {
        bool b = false;
        if (!parse_bool(cell, b)) throw DataError("cannot parse '" + cell + "' as boolean", line);
        o.set(k, b);
        break;
      }
      case ColumnKind::Categorical:
        o.set(k, cell == v.category);
        break;
      case ColumnKind::Continuous: {
        double x = 0;
        if (!parse_double(cell, x)) throw DataError("cannot parse '" + cell + "' as a number", line);
        o.set(k, x > v.threshold);
        break;
      }
      default:
        throw InternalError("derived variable with a non-attribute kind");
    }
  }
  return o;
}

BinarizationMap BinarizationMap::rebind(const std::vector<std::string>& header) const {
  BinarizationMap out = *this;
  for (auto& v : out.variables) {
    const auto it = std::find(header.begin(), header.end(), v.source_name);
    if (it == header.end()) throw DataError("input lacks column '" + v.source_name + "'", 1);
    v.source_column = static_cast<std::size_t>(it - header.begin());
  }
  return out;
}

nlohmann::json to_json(const BinarizationMap& map) {
  auto arr = nlohmann::json::array();
  for (const auto& v : map.variables) {
    nlohmann::json j{{"name", v.name}, {"source", v.source_name}, {"column", v.source_column}};
    switch (v.kind) {
      case ColumnKind::Boolean:
        j["kind"] = "boolean";
        break;
      case ColumnKind::Categorical:
        j["kind"] = "categorical";
        j["value"] = v.category;
        break;
      case ColumnKind::Continuous:
        j["kind"] = "threshold";
        j["threshold"] = v.threshold;
        break;
      default:
        throw InternalError("derived variable with a non-attribute kind");
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

BinarizationMap binarization_from_json(const nlohmann::json& j) {
  BinarizationMap map;
  try {
    for (const auto& e : j) {
      DerivedVariable v;
      v.name = e.at("name").get<std::string>();
      v.source_name = e.at("source").get<std::string>();
      v.source_column = e.value("column", std::size_t{0});
      const auto kind = e.at("kind").get<std::string>();
      if (kind == "boolean") {
        v.kind = ColumnKind::Boolean;
      } else if (kind == "categorical") {
        v.kind = ColumnKind::Categorical;
        v.category = e.at("value").get<std::string>();
      } else if (kind == "threshold") {
        v.kind = ColumnKind::Continuous;
        v.threshold = e.at("threshold").get<double>();
      } else {
        throw DataError("unknown binarization kind '" + kind + "'");
      }
      map.variables.push_back(std::move(v));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("bad binarization: ") + ex.what());
  }
  return map;
}

LoadedDataset load_csv(std::istream& in, const DatasetSchema& schema) {
  LoadedDataset out;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw DataError("empty file");
  out.header = split_csv_line(line);
  {
    std::set<std::string> names;
    for (const auto& h : out.header) {
      if (h.empty()) throw DataError("empty column name in header", 1);
      if (!names.insert(h).second) throw DataError("duplicate column '" + h + "' in header", 1);
      if (!schema.find(h)) throw DataError("column '" + h + "' has no kind in the schema", 1);
    }
    for (const auto& s : schema.columns)
      if (!names.count(s.name)) throw DataError("schema column '" + s.name + "' is not in the file");
  }
  const std::size_t width = out.header.size();
  std::vector<const ColumnSpec*> specs(width);
  for (std::size_t j = 0; j < width; ++j) specs[j] = schema.find(out.header[j]);

  std::size_t class_col = width;
  std::vector<std::size_t> label_cols;
  for (std::size_t j = 0; j < width; ++j) {
    if (specs[j]->kind == ColumnKind::Class) class_col = j;
    if (specs[j]->kind == ColumnKind::Label) label_cols.push_back(j);
  }

  std::vector<std::size_t> lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto row = split_csv_line(line);
    if (row.size() != width)
      throw DataError("expected " + std::to_string(width) + " fields, found " + std::to_string(row.size()), line_no);
    bool missing = false;
    for (std::size_t j = 0; j < width; ++j)
      if (is_used(specs[j]->kind) && row[j] == "?") missing = true;
    if (missing) {
      ++out.dropped_rows;
      continue;
    }
    // Type checks up front so errors carry the right line.
    for (std::size_t j = 0; j < width; ++j) {
      const auto kind = specs[j]->kind;
      if (kind == ColumnKind::Boolean || kind == ColumnKind::Label) {
        bool b;
        if (!parse_bool(row[j], b)) throw DataError("cannot parse '" + row[j] + "' as boolean", line_no);
      } else if (kind == ColumnKind::Continuous) {
        double x;
        if (!parse_double(row[j], x)) throw DataError("cannot parse '" + row[j] + "' as a number", line_no);
      } else if (kind == ColumnKind::Class) {
        const auto& declared = specs[j]->class_values;
        if (row[j].empty()) throw DataError("empty class label", line_no);
        if (!declared.empty() && std::find(declared.begin(), declared.end(), row[j]) == declared.end())
          throw DataError("unknown class label '" + row[j] + "'", line_no);
      } else if (kind == ColumnKind::Categorical && row[j].empty()) {
        throw DataError("empty categorical value", line_no);
      }
    }
    out.raw_rows.push_back(std::move(row));
    lines.push_back(line_no);
  }
  if (out.dropped_rows > 0)
    out.warnings.push_back("dropped " + std::to_string(out.dropped_rows) + " rows with missing values");
  if (out.raw_rows.empty()) throw DataError("no usable rows");

  // Classes.
  std::vector<std::vector<std::size_t>> row_classes(out.raw_rows.size());
  if (class_col < width) {
    out.class_names = specs[class_col]->class_values;
    if (out.class_names.empty()) {
      std::set<std::string> values;
      for (const auto& r : out.raw_rows) values.insert(r[class_col]);
      out.class_names.assign(values.begin(), values.end());
    }
    if (out.class_names.size() < 2) out.warnings.push_back("only one class value present");
    for (std::size_t i = 0; i < out.raw_rows.size(); ++i) {
      const auto it = std::find(out.class_names.begin(), out.class_names.end(), out.raw_rows[i][class_col]);
      row_classes[i].push_back(static_cast<std::size_t>(it - out.class_names.begin()));
    }
  } else {
    for (auto j : label_cols) out.class_names.push_back(out.header[j]);
    for (std::size_t i = 0; i < out.raw_rows.size(); ++i) {
      for (std::size_t k = 0; k < label_cols.size(); ++k) {
        bool b = false;
        parse_bool(out.raw_rows[i][label_cols[k]], b);
        if (b) row_classes[i].push_back(k);
      }
      if (row_classes[i].empty()) throw DataError("example has no label set", lines[i]);
    }
  }

  // Derived variables, in column order.
  std::set<std::string> names;
  auto add_variable = [&](DerivedVariable v) {
    if (!names.insert(v.name).second) throw DataError("derived variable name '" + v.name + "' is not unique");
    out.map.variables.push_back(std::move(v));
  };
  for (std::size_t j = 0; j < width; ++j) {
    const auto& spec = *specs[j];
    switch (spec.kind) {
      case ColumnKind::Boolean:
        add_variable({spec.name, spec.name, j, ColumnKind::Boolean, {}, 0.0});
        break;
      case ColumnKind::Categorical: {
        std::set<std::string> values;
        for (const auto& r : out.raw_rows) values.insert(r[j]);
        for (const auto& v : values) add_variable({spec.name + "=" + v, spec.name, j, ColumnKind::Categorical, v, 0.0});
        break;
      }
      case ColumnKind::Continuous: {
        std::vector<double> values(out.raw_rows.size());
        std::vector<std::size_t> labels(out.raw_rows.size());
        for (std::size_t i = 0; i < out.raw_rows.size(); ++i) {
          parse_double(out.raw_rows[i][j], values[i]);
          labels[i] = row_classes[i].front();
        }
        const bool constant = std::all_of(values.begin(), values.end(), [&](double x) { return x == values.front(); });
        if (constant) {
          out.warnings.push_back("column '" + spec.name + "' is constant and yields no variables");
          break;
        }
        const auto cuts = discretize(values, labels, spec.max_thresholds);
        if (cuts.empty()) out.warnings.push_back("column '" + spec.name + "' yields no accepted cut");
        for (double t : cuts)
          add_variable({spec.name + ">" + format_threshold(t), spec.name, j, ColumnKind::Continuous, {}, t});
        break;
      }
      default:
        break;
    }
  }

  out.sample = Sample(out.map.size(), out.class_names.size());
  for (std::size_t i = 0; i < out.raw_rows.size(); ++i) {
    Example e;
    e.observation = out.map.apply(out.raw_rows[i], lines[i]);
    e.classes = BitVector(out.class_names.size());
    for (auto k : row_classes[i]) e.classes.set(k);
    e.weight = 1.0;
    out.sample.add(std::move(e));
  }
  out.sample.normalize();
  return out;
}

LoadedDataset load_csv(const std::string& path, const DatasetSchema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return load_csv(in, schema);
}

LoadedDataset load_csv_auto(const std::string& path, const std::string& schema_path) {
  if (!schema_path.empty()) return load_csv(path, DatasetSchema::load(schema_path));
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string header;
  if (!std::getline(in, header)) throw DataError("empty file");
  const auto schema = DatasetSchema::boolean_with_class_last(split_csv_line(header));
  in.clear();
  in.seekg(0);
  return load_csv(in, schema);
}

std::vector<Observation> binarize_rows(std::istream& in, const BinarizationMap& map) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file");
  const BinarizationMap bound = map.rebind(split_csv_line(line));
  std::vector<Observation> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    out.push_back(bound.apply(split_csv_line(line), line_no));
  }
  return out;
}

void write_sample_csv(std::ostream& os, const Sample& sample, const std::vector<std::string>& variable_names,
                      const std::vector<std::string>& class_names) {
  if (variable_names.size() != sample.n()) throw DimensionError("variable name count differs from n");
  if (class_names.size() != sample.c()) throw DimensionError("class name count differs from c");
  for (const auto& v : variable_names) os << v << ',';
  os << "class\n";
  for (const auto& e : sample) {
    for (std::size_t k = 0; k < sample.n(); ++k) os << (e.observation.test(k) ? '1' : '0') << ',';
    bool first = true;
    for (auto k : e.classes.indices()) {
      if (!first) os << '|';
      os << class_names[k];
      first = false;
    }
    os << '\n';
  }
}

}  // namespace widc
