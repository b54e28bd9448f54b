#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "segl/ml.hpp"

namespace segl {

namespace {

std::string cell(const ClassifierResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f \xC2\xB1 %.1f", r.mean_accuracy, r.std_accuracy);
  return buf;
}

// Display width in columns; counts UTF-8 continuation bytes as zero.
std::size_t columns(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

void pad(std::string& out, const std::string& text, std::size_t width) {
  out += text;
  out.append(width > columns(text) ? width - columns(text) : 0, ' ');
}

}  // namespace

std::string format_table(std::span<const NamedReport> reports) {
  std::vector<std::string> classifiers;
  for (const auto& nr : reports) {
    for (const auto& r : nr.report.results) {
      if (std::find(classifiers.begin(), classifiers.end(), r.classifier) == classifiers.end()) {
        classifiers.push_back(r.classifier);
      }
    }
  }

  std::vector<std::vector<std::string>> grid;
  grid.push_back({"Approach \\ Classifier"});
  grid.back().insert(grid.back().end(), classifiers.begin(), classifiers.end());
  for (const auto& nr : reports) {
    std::vector<std::string> row{nr.approach};
    for (const auto& name : classifiers) {
      auto it = std::find_if(nr.report.results.begin(), nr.report.results.end(),
                             [&](const ClassifierResult& r) { return r.classifier == name; });
      row.push_back(it == nr.report.results.end() ? "-" : cell(*it));
    }
    grid.push_back(std::move(row));
  }

  std::vector<std::size_t> width(classifiers.size() + 1, 0);
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], columns(row[c]));
  }

  std::string out;
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c + 1 == row.size()) {
        out += row[c];
      } else {
        pad(out, row[c], width[c] + 3);
      }
    }
    out += '\n';
  }
  if (!reports.empty()) {
    const auto& r = reports.front().report;
    char buf[128];
    std::snprintf(buf, sizeof buf, "accuracy %% (mean \xC2\xB1 std), %d folds x %d repeats, seed %llu\n",
                  r.folds, r.repeats, static_cast<unsigned long long>(r.seed));
    out += buf;
  }
  return out;
}

std::string format_json(std::span<const NamedReport> reports) {
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& nr : reports) {
    for (const auto& r : nr.report.results) {
      nlohmann::ordered_json entry;
      entry["approach"] = nr.approach;
      entry["classifier"] = r.classifier;
      entry["mean"] = r.mean_accuracy;
      entry["std"] = r.std_accuracy;
      entry["folds"] = nr.report.folds;
      entry["repeats"] = nr.report.repeats;
      entry["seed"] = nr.report.seed;
      entry["labels"] = nr.report.labels;
      entry["confusion"] = r.confusion;
      entry["fold_accuracies"] = r.fold_accuracies;
      results.push_back(std::move(entry));
    }
  }
  nlohmann::ordered_json doc;
  doc["results"] = std::move(results);
  return doc.dump(2) + "\n";
}

}  // namespace segl
