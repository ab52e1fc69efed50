#include "ordolex/gnb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>

#include "ordolex/errors.hpp"

namespace ordolex {

namespace {

constexpr double kVarSmoothing = 1e-9;
constexpr double kLog2Pi = 1.8378770664093454836;

}  // namespace

GnbModel gnb_fit(const std::vector<GnbExample>& data,
                 std::vector<std::string> feature_names) {
  if (data.empty()) throw DegenerateClass("no training data");
  const std::size_t n_features = data.front().values.size();
  if (n_features == 0) throw DimensionMismatch("zero-dimensional features");

  std::map<std::string, std::vector<const GnbExample*>> by_class;
  for (const auto& ex : data) {
    if (ex.values.size() != n_features)
      throw DimensionMismatch("ragged feature rows");
    for (double v : ex.values)
      if (!std::isfinite(v))
        throw NonFiniteFeature("non-finite feature value in class '" +
                               ex.label + "'");
    by_class[ex.label].push_back(&ex);
  }
  if (by_class.size() < 2) throw DegenerateClass("need >= 2 classes");
  for (const auto& [label, members] : by_class)
    if (members.size() < 2)
      throw DegenerateClass("class '" + label + "' has fewer than 2 examples");

  // Floor: 1e-9 x the largest total-data feature variance.
  std::vector<double> total_mean(n_features, 0.0);
  for (const auto& ex : data)
    for (std::size_t f = 0; f < n_features; ++f) total_mean[f] += ex.values[f];
  for (double& m : total_mean) m /= static_cast<double>(data.size());
  double max_total_var = 0.0;
  for (std::size_t f = 0; f < n_features; ++f) {
    double ss = 0.0;
    for (const auto& ex : data) {
      const double d = ex.values[f] - total_mean[f];
      ss += d * d;
    }
    max_total_var = std::max(max_total_var, ss / static_cast<double>(data.size()));
  }
  double floor = kVarSmoothing * max_total_var;
  if (floor <= 0.0) floor = 1e-12;

  GnbModel model;
  model.feature_names = std::move(feature_names);
  if (model.feature_names.empty())
    for (std::size_t f = 0; f < n_features; ++f)
      model.feature_names.push_back("f" + std::to_string(f + 1));
  if (model.feature_names.size() != n_features)
    throw DimensionMismatch("feature name count does not match data");

  for (const auto& [label, members] : by_class) {
    const auto nc = static_cast<double>(members.size());
    model.classes.push_back(label);  // std::map iterates lexicographically
    model.priors.push_back(nc / static_cast<double>(data.size()));

    std::vector<double> mean(n_features, 0.0), var(n_features, 0.0);
    for (const auto* ex : members)
      for (std::size_t f = 0; f < n_features; ++f) mean[f] += ex->values[f];
    for (double& m : mean) m /= nc;
    for (const auto* ex : members)
      for (std::size_t f = 0; f < n_features; ++f) {
        const double d = ex->values[f] - mean[f];
        var[f] += d * d;
      }
    for (double& v : var) v = std::max(v / nc, floor);  // population variance
    model.means.push_back(std::move(mean));
    model.variances.push_back(std::move(var));
  }
  return model;
}

GnbPrediction gnb_predict(const GnbModel& model, std::span<const double> x) {
  const std::size_t n_features = model.feature_names.size();
  if (x.size() != n_features)
    throw DimensionMismatch("expected " + std::to_string(n_features) +
                            " features, got " + std::to_string(x.size()));

  const std::size_t n_classes = model.classes.size();
  std::vector<double> log_post(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    double lp = std::log(model.priors[c]);
    for (std::size_t f = 0; f < n_features; ++f) {
      const double var = model.variances[c][f];
      const double d = x[f] - model.means[c][f];
      lp += -0.5 * (kLog2Pi + std::log(var)) - d * d / (2.0 * var);
    }
    log_post[c] = lp;
  }

  const double max_lp = *std::max_element(log_post.begin(), log_post.end());
  double total = 0.0;
  GnbPrediction pred;
  pred.posteriors.resize(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    pred.posteriors[c] = std::exp(log_post[c] - max_lp);
    total += pred.posteriors[c];
  }
  std::size_t best = 0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    pred.posteriors[c] /= total;
    if (log_post[c] > log_post[best]) best = c;  // ties keep the earlier class
  }
  pred.label = model.classes[best];
  return pred;
}

nlohmann::json gnb_to_json(const GnbModel& model) {
  return nlohmann::json{{"classes", model.classes},
                        {"priors", model.priors},
                        {"means", model.means},
                        {"variances", model.variances},
                        {"feature_names", model.feature_names}};
}

GnbModel gnb_from_json(const nlohmann::json& j) {
  GnbModel model;
  j.at("classes").get_to(model.classes);
  j.at("priors").get_to(model.priors);
  j.at("means").get_to(model.means);
  j.at("variances").get_to(model.variances);
  j.at("feature_names").get_to(model.feature_names);
  if (model.priors.size() != model.classes.size() ||
      model.means.size() != model.classes.size() ||
      model.variances.size() != model.classes.size())
    throw DimensionMismatch("inconsistent model dimensions");
  return model;
}

}  // namespace ordolex
