#include "segl/ml.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "segl/error.hpp"

namespace segl {

// ---------------------------------------------------------------------------
// k-nearest neighbors

std::string knn_classify(const Dataset& train, int k, std::span<const double> query) {
  if (k < 1 || static_cast<std::size_t>(k) > train.size()) {
    throw Error(ErrorCode::Config, "k = " + std::to_string(k) + " invalid for " +
                                       std::to_string(train.size()) + " training samples");
  }
  if (query.size() != train.dimension()) {
    throw Error(ErrorCode::Schema, "query has " + std::to_string(query.size()) +
                                       " features, training set has " +
                                       std::to_string(train.dimension()));
  }

  struct Neighbor {
    double dist2;
    std::size_t index;
  };
  std::vector<Neighbor> all;
  all.reserve(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto& v = train.samples()[i].values;
    double d2 = 0.0;
    for (std::size_t f = 0; f < query.size(); ++f) {
      const double diff = v[f] - query[f];
      d2 += diff * diff;
    }
    all.push_back({d2, i});
  }
  auto closer = [](const Neighbor& a, const Neighbor& b) {
    return a.dist2 != b.dist2 ? a.dist2 < b.dist2 : a.index < b.index;
  };
  std::partial_sort(all.begin(), all.begin() + k, all.end(), closer);

  struct Tally {
    int votes = 0;
    double distance = 0.0;
  };
  std::map<std::string, Tally> tally;  // ordered: lexicographic tie-break
  for (int n = 0; n < k; ++n) {
    Tally& t = tally[train.samples()[all[n].index].label];
    ++t.votes;
    t.distance += std::sqrt(all[n].dist2);
  }

  auto best = tally.begin();
  for (auto it = std::next(tally.begin()); it != tally.end(); ++it) {
    const Tally& a = it->second;
    const Tally& b = best->second;
    if (a.votes > b.votes || (a.votes == b.votes && a.distance < b.distance)) best = it;
  }
  return best->first;
}

// ---------------------------------------------------------------------------
// Gaussian naive Bayes

GaussianNbModel gnb_fit(const Dataset& train) {
  GaussianNbModel model;
  model.feature_names = train.feature_names();
  const std::size_t d = train.dimension();
  const double n = static_cast<double>(train.size());

  for (const std::string& label : train.labels()) {
    GaussianClass c;
    c.label = label;
    c.mean.assign(d, 0.0);
    c.variance.assign(d, 0.0);
    std::size_t count = 0;
    for (const Sample& s : train.samples()) {
      if (s.label != label) continue;
      ++count;
      for (std::size_t f = 0; f < d; ++f) c.mean[f] += s.values[f];
    }
    if (count < 2) {
      throw Error(ErrorCode::Fit, "naive Bayes needs at least 2 samples of class '" + label +
                                      "', got " + std::to_string(count));
    }
    for (double& m : c.mean) m /= static_cast<double>(count);
    for (const Sample& s : train.samples()) {
      if (s.label != label) continue;
      for (std::size_t f = 0; f < d; ++f) {
        const double diff = s.values[f] - c.mean[f];
        c.variance[f] += diff * diff;
      }
    }
    for (double& v : c.variance) {
      v = std::max(v / static_cast<double>(count), GaussianNbModel::kVarianceFloor);
    }
    c.log_prior = std::log(static_cast<double>(count) / n);
    model.classes.push_back(std::move(c));
  }
  if (model.classes.empty()) throw Error(ErrorCode::Fit, "naive Bayes fit on an empty dataset");
  return model;
}

std::vector<double> gnb_log_posteriors(const GaussianNbModel& model,
                                       std::span<const double> query) {
  if (query.size() != model.feature_names.size()) {
    throw Error(ErrorCode::Schema, "query length does not match the naive Bayes model");
  }
  constexpr double kLogTwoPi = 1.8378770664093454836;  // ln(2 pi)
  std::vector<double> out;
  out.reserve(model.classes.size());
  for (const GaussianClass& c : model.classes) {
    double lp = c.log_prior;
    for (std::size_t f = 0; f < query.size(); ++f) {
      const double diff = query[f] - c.mean[f];
      lp -= 0.5 * (kLogTwoPi + std::log(c.variance[f]) + diff * diff / c.variance[f]);
    }
    out.push_back(lp);
  }
  return out;
}

std::string gnb_classify(const GaussianNbModel& model, std::span<const double> query) {
  const auto lp = gnb_log_posteriors(model, query);
  std::size_t best = 0;
  for (std::size_t c = 1; c < lp.size(); ++c) {
    if (lp[c] > lp[best]) best = c;
  }
  return model.classes[best].label;
}

// ---------------------------------------------------------------------------
// Classifier specs

std::string ClassifierSpec::display_name() const {
  if (kind == Kind::GaussianNb) return "NaiveBayes";
  return std::to_string(k) + "NN";
}

ClassifierSpec ClassifierSpec::parse(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "gnb" || lower == "naivebayes" || lower == "nb") {
    return {Kind::GaussianNb, 0};
  }
  if (lower.size() > 2 && lower.ends_with("nn")) {
    int k = 0;
    const char* first = lower.data();
    const char* last = lower.data() + lower.size() - 2;
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec == std::errc() && ptr == last && k >= 1 && k % 2 == 1) return {Kind::Knn, k};
  }
  throw Error(ErrorCode::Config, "unknown classifier '" + std::string(text) +
                                     "' (expected <odd k>nn such as 3nn, or gnb)");
}

std::vector<std::string> fit_predict(const ClassifierSpec& spec, const Dataset& train,
                                     const Dataset& test) {
  std::vector<std::string> out;
  out.reserve(test.size());
  if (spec.kind == ClassifierSpec::Kind::GaussianNb) {
    const GaussianNbModel model = gnb_fit(train);
    for (const Sample& s : test.samples()) out.push_back(gnb_classify(model, s.values));
  } else {
    for (const Sample& s : test.samples()) out.push_back(knn_classify(train, spec.k, s.values));
  }
  return out;
}

}  // namespace segl
