#include "segl/ml.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>

#include "segl/error.hpp"

namespace segl {

Dataset::Dataset(std::vector<std::string> feature_names) : names_(std::move(feature_names)) {
  if (names_.empty()) throw Error(ErrorCode::Schema, "dataset needs at least one feature");
}

void Dataset::add(Sample sample) {
  if (sample.values.size() != names_.size()) {
    throw Error(ErrorCode::Schema, "sample '" + sample.path + "' has " +
                                       std::to_string(sample.values.size()) +
                                       " features, dataset expects " +
                                       std::to_string(names_.size()));
  }
  if (sample.label.empty()) {
    throw Error(ErrorCode::Schema, "sample '" + sample.path + "' has an empty label");
  }
  samples_.push_back(std::move(sample));
}

std::vector<std::string> Dataset::labels() const {
  std::set<std::string> unique;
  for (const Sample& s : samples_) unique.insert(s.label);
  return {unique.begin(), unique.end()};
}

void Dataset::require_classifiable() const {
  if (labels().size() < 2) {
    throw Error(ErrorCode::Schema, "classification needs at least two labels, dataset has " +
                                       std::to_string(labels().size()));
  }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out(names_);
  out.samples_.reserve(indices.size());
  for (std::size_t i : indices) out.samples_.push_back(samples_.at(i));
  return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

void append_field(std::string& out, std::string_view field) {
  const bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!quote) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_double(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_has_content = false;
  std::size_t line = 1;

  auto end_row = [&] {
    if (row_has_content || !row.empty()) {
      row.push_back(std::move(field));
      rows.push_back(std::move(row));
    }
    row.clear();
    field.clear();
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"': in_quotes = true; row_has_content = true; break;
      case ',': row.push_back(std::move(field)); field.clear(); row_has_content = true; break;
      case '\r': break;
      case '\n': end_row(); ++line; break;
      default: field += c; row_has_content = true; break;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::Parse, "unterminated quoted CSV field near line " + std::to_string(line));
  }
  end_row();
  return rows;
}

}  // namespace

std::string to_csv(const Dataset& ds) {
  std::string out = "path,label";
  for (const auto& name : ds.feature_names()) {
    out += ',';
    append_field(out, name);
  }
  out += '\n';
  for (const Sample& s : ds.samples()) {
    append_field(out, s.path);
    out += ',';
    append_field(out, s.label);
    for (double v : s.values) {
      out += ',';
      append_double(out, v);
    }
    out += '\n';
  }
  return out;
}

Dataset dataset_from_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw Error(ErrorCode::Schema, "CSV is empty");
  const auto& header = rows.front();
  if (header.size() < 3 || header[0] != "path" || header[1] != "label") {
    throw Error(ErrorCode::Schema, "CSV header must start with path,label and name at least one feature");
  }
  Dataset ds(std::vector<std::string>(header.begin() + 2, header.end()));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw Error(ErrorCode::Schema, "CSV row " + std::to_string(r + 1) + " has " +
                                         std::to_string(row.size()) + " columns, header has " +
                                         std::to_string(header.size()));
    }
    Sample s{row[0], row[1], {}};
    s.values.reserve(row.size() - 2);
    for (std::size_t c = 2; c < row.size(); ++c) {
      const std::string& cell = row[c];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::Parse, "CSV row " + std::to_string(r + 1) + ", column '" +
                                          header[c] + "': not a finite number: '" + cell + "'");
      }
      s.values.push_back(v);
    }
    ds.add(std::move(s));
  }
  return ds;
}

Dataset load_dataset_csv(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot open dataset " + path.string());
  std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  return dataset_from_csv(text);
}

void save_dataset_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot write dataset " + path.string());
  file << to_csv(ds);
  if (!file) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// Standardization

StandardizationParams standardize_fit(const Dataset& train) {
  if (train.size() == 0) throw Error(ErrorCode::Fit, "cannot standardize an empty training set");
  const std::size_t d = train.dimension();
  const double n = static_cast<double>(train.size());
  StandardizationParams p;
  p.feature_names = train.feature_names();
  p.mean.assign(d, 0.0);
  p.stddev.assign(d, 0.0);
  p.constant.assign(d, false);

  for (const Sample& s : train.samples()) {
    for (std::size_t f = 0; f < d; ++f) p.mean[f] += s.values[f];
  }
  for (double& m : p.mean) m /= n;
  for (const Sample& s : train.samples()) {
    for (std::size_t f = 0; f < d; ++f) {
      const double diff = s.values[f] - p.mean[f];
      p.stddev[f] += diff * diff;
    }
  }
  for (std::size_t f = 0; f < d; ++f) {
    p.stddev[f] = std::sqrt(p.stddev[f] / n);
    // Identical inputs can leave a rounding-level residue in the mean.
    p.constant[f] = p.stddev[f] <= 1e-12 * std::max(1.0, std::abs(p.mean[f]));
  }
  return p;
}

std::vector<double> standardize_apply(const StandardizationParams& params,
                                      std::span<const std::string> names,
                                      std::span<const double> values) {
  if (!std::equal(names.begin(), names.end(), params.feature_names.begin(),
                  params.feature_names.end())) {
    throw Error(ErrorCode::Schema, "feature names do not match the standardization schema");
  }
  if (values.size() != names.size()) {
    throw Error(ErrorCode::Schema, "feature vector length does not match its names");
  }
  std::vector<double> out(values.size());
  for (std::size_t f = 0; f < values.size(); ++f) {
    out[f] = params.constant[f] ? 0.0 : (values[f] - params.mean[f]) / params.stddev[f];
  }
  return out;
}

Dataset standardize_apply(const StandardizationParams& params, const Dataset& ds) {
  Dataset out(ds.feature_names());
  for (const Sample& s : ds.samples()) {
    out.add({s.path, s.label, standardize_apply(params, ds.feature_names(), s.values)});
  }
  return out;
}

}  // namespace segl
