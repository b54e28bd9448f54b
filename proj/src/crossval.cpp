#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "parallel.hpp"
#include "segl/error.hpp"
#include "segl/ml.hpp"

namespace segl {

namespace {

// Uniform draw in [0, bound) from the raw engine output. std::mt19937_64 has a
// fully specified sequence, unlike the standard distributions, so fold
// assignments are identical across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[bounded(rng, i)]);
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& ds, int k,
                                                       std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::Config, "need at least 2 folds, got " + std::to_string(k));
  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < ds.size(); ++i) by_label[ds.samples()[i].label].push_back(i);
  for (const auto& [label, idx] : by_label) {
    if (idx.size() < static_cast<std::size_t>(k)) {
      throw Error(ErrorCode::Config, "class '" + label + "' has " + std::to_string(idx.size()) +
                                         " samples, fewer than " + std::to_string(k) + " folds");
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  std::size_t deal = 0;
  for (auto& [label, idx] : by_label) {
    shuffle(idx, rng);
    for (std::size_t i : idx) folds[deal++ % folds.size()].push_back(i);
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

CrossValReport cross_validate(const Dataset& ds, std::span<const ClassifierSpec> classifiers,
                              const CrossValConfig& cfg) {
  ds.require_classifiable();
  if (classifiers.empty()) throw Error(ErrorCode::Config, "no classifiers requested");
  if (cfg.repeats < 1) {
    throw Error(ErrorCode::Config, "repeats must be >= 1, got " + std::to_string(cfg.repeats));
  }

  CrossValReport report;
  report.folds = cfg.folds;
  report.repeats = cfg.repeats;
  report.seed = cfg.seed;
  report.labels = ds.labels();

  std::map<std::string, std::size_t> label_index;
  for (std::size_t i = 0; i < report.labels.size(); ++i) label_index[report.labels[i]] = i;

  std::vector<std::vector<std::vector<std::size_t>>> plans;
  plans.reserve(static_cast<std::size_t>(cfg.repeats));
  for (int r = 0; r < cfg.repeats; ++r) {
    plans.push_back(stratified_folds(ds, cfg.folds, cfg.seed ^ static_cast<std::uint64_t>(r)));
  }

  // predictions[unit][classifier][j] for the j-th held-out sample of the unit.
  const std::size_t units = static_cast<std::size_t>(cfg.repeats) * cfg.folds;
  std::vector<std::vector<std::vector<std::string>>> predictions(units);
  detail::parallel_for(units, [&](std::size_t u) {
    const auto& folds = plans[u / cfg.folds];
    const auto& held_out = folds[u % cfg.folds];
    std::vector<std::size_t> train_idx;
    train_idx.reserve(ds.size() - held_out.size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
      if (f != u % cfg.folds) train_idx.insert(train_idx.end(), folds[f].begin(), folds[f].end());
    }
    std::sort(train_idx.begin(), train_idx.end());

    const Dataset train_raw = ds.subset(train_idx);
    const StandardizationParams params = standardize_fit(train_raw);
    const Dataset train = standardize_apply(params, train_raw);
    const Dataset test = standardize_apply(params, ds.subset(held_out));
    for (const ClassifierSpec& spec : classifiers) {
      predictions[u].push_back(fit_predict(spec, train, test));
    }
  });

  const std::size_t n_labels = report.labels.size();
  for (std::size_t c = 0; c < classifiers.size(); ++c) {
    ClassifierResult result;
    result.classifier = classifiers[c].display_name();
    result.confusion.assign(n_labels, std::vector<std::uint64_t>(n_labels, 0));
    for (std::size_t u = 0; u < units; ++u) {
      const auto& held_out = plans[u / cfg.folds][u % cfg.folds];
      std::size_t correct = 0;
      for (std::size_t j = 0; j < held_out.size(); ++j) {
        const std::string& truth = ds.samples()[held_out[j]].label;
        const std::string& guess = predictions[u][c][j];
        correct += truth == guess;
        ++result.confusion[label_index.at(truth)][label_index.at(guess)];
      }
      result.fold_accuracies.push_back(100.0 * static_cast<double>(correct) /
                                       static_cast<double>(held_out.size()));
    }
    const double n = static_cast<double>(result.fold_accuracies.size());
    double sum = 0.0;
    for (double a : result.fold_accuracies) sum += a;
    result.mean_accuracy = sum / n;
    double ss = 0.0;
    for (double a : result.fold_accuracies) ss += (a - result.mean_accuracy) * (a - result.mean_accuracy);
    result.std_accuracy = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    report.results.push_back(std::move(result));
  }
  return report;
}

}  // namespace segl
