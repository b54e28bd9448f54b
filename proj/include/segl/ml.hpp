#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace segl {

struct Sample {
  std::string path;
  std::string label;
  std::vector<double> values;
};

/// Labeled feature rows sharing one column schema.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<std::string> feature_names);

  void add(Sample sample);

  const std::vector<std::string>& feature_names() const noexcept { return names_; }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::size_t dimension() const noexcept { return names_.size(); }

  /// Distinct labels, sorted lexicographically.
  std::vector<std::string> labels() const;

  /// Throws Error(Schema) if fewer than two labels are present.
  void require_classifiable() const;

  Dataset subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<std::string> names_;
  std::vector<Sample> samples_;
};

// CSV schema: path,label,<feature>...
// Doubles are written in shortest round-trip form.
std::string to_csv(const Dataset& ds);
Dataset dataset_from_csv(std::string_view text);
Dataset load_dataset_csv(const std::filesystem::path& path);
void save_dataset_csv(const Dataset& ds, const std::filesystem::path& path);

/// Per-feature z-score parameters fitted on training rows only.
struct StandardizationParams {
  std::vector<std::string> feature_names;
  std::vector<double> mean;
  std::vector<double> stddev;  // population
  std::vector<bool> constant;
};

StandardizationParams standardize_fit(const Dataset& train);
/// Throws Error(Schema) if `names` differs from the fitted schema.
std::vector<double> standardize_apply(const StandardizationParams& params,
                                      std::span<const std::string> names,
                                      std::span<const double> values);
Dataset standardize_apply(const StandardizationParams& params, const Dataset& ds);

/// Majority vote among the k Euclidean-nearest rows. Equal distances are
/// ordered by row index. A vote tie goes to the smaller summed distance, then
/// to the lexicographically smaller label.
std::string knn_classify(const Dataset& train, int k, std::span<const double> query);

struct GaussianClass {
  std::string label;
  double log_prior = 0.0;
  std::vector<double> mean;
  std::vector<double> variance;  // floored at kVarianceFloor
};

struct GaussianNbModel {
  static constexpr double kVarianceFloor = 1e-9;
  std::vector<std::string> feature_names;
  std::vector<GaussianClass> classes;  // lexicographic label order
};

/// Throws Error(Fit) naming the class when one has fewer than two rows.
GaussianNbModel gnb_fit(const Dataset& train);
/// Per-class ln prior + sum of ln Gaussian densities, same order as classes.
std::vector<double> gnb_log_posteriors(const GaussianNbModel& model,
                                       std::span<const double> query);
std::string gnb_classify(const GaussianNbModel& model, std::span<const double> query);

struct ClassifierSpec {
  enum class Kind { Knn, GaussianNb };
  Kind kind = Kind::Knn;
  int k = 3;

  /// "3NN", "5NN", "NaiveBayes".
  std::string display_name() const;
  /// Parses "<k>nn" (odd k >= 1) or "gnb" / "naivebayes", case-insensitive.
  static ClassifierSpec parse(std::string_view text);
};

/// Fits on `train` (already standardized) and predicts each query row.
std::vector<std::string> fit_predict(const ClassifierSpec& spec, const Dataset& train,
                                     const Dataset& test);

/// k disjoint folds covering every index. Each class is shuffled with a
/// generator seeded by `seed` and dealt round-robin, continuing the deal
/// across classes so fold sizes differ by at most one.
std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& ds, int k,
                                                       std::uint64_t seed);

struct CrossValConfig {
  int folds = 10;
  int repeats = 10;
  std::uint64_t seed = 42;
};

struct ClassifierResult {
  std::string classifier;
  double mean_accuracy = 0.0;  // percent
  double std_accuracy = 0.0;   // percent, sample std over repeat x fold
  std::vector<double> fold_accuracies;  // repeat-major
  /// confusion[true][predicted], indexed by CrossValReport::labels.
  std::vector<std::vector<std::uint64_t>> confusion;
};

struct CrossValReport {
  int folds = 0;
  int repeats = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> labels;
  std::vector<ClassifierResult> results;
};

/// Repeat r draws folds with seed ^ r. Standardization is refit on every
/// training split.
CrossValReport cross_validate(const Dataset& ds, std::span<const ClassifierSpec> classifiers,
                              const CrossValConfig& cfg);

struct NamedReport {
  std::string approach;
  CrossValReport report;
};

/// Approaches as rows, classifiers as columns, cells "mean ± std".
std::string format_table(std::span<const NamedReport> reports);
/// JSON document with one record per (approach, classifier).
std::string format_json(std::span<const NamedReport> reports);

}  // namespace segl
