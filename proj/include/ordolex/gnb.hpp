#pragma once

#include <nlohmann/json_fwd.hpp>
#include <span>
#include <string>
#include <vector>

namespace ordolex {

struct GnbExample {
  std::vector<double> values;
  std::string label;
};

struct GnbModel {
  std::vector<std::string> classes;  // sorted lexicographically at fit
  std::vector<double> priors;        // class frequencies, sum to 1
  std::vector<std::vector<double>> means;      // [class][feature]
  std::vector<std::vector<double>> variances;  // [class][feature], >= floor
  std::vector<std::string> feature_names;
};

// Per-class population moments with a variance floor of
// 1e-9 * max_f Var(feature f over all training rows). Throws DegenerateClass
// for a class with fewer than 2 examples, NonFiniteFeature on non-finite
// values, DimensionMismatch on ragged rows.
GnbModel gnb_fit(const std::vector<GnbExample>& data,
                 std::vector<std::string> feature_names = {});

struct GnbPrediction {
  std::string label;
  std::vector<double> posteriors;  // aligned with model.classes, sum to 1
};

// Log-space posterior; argmax ties break to the earliest class.
GnbPrediction gnb_predict(const GnbModel& model, std::span<const double> x);

nlohmann::json gnb_to_json(const GnbModel& model);
GnbModel gnb_from_json(const nlohmann::json& j);

}  // namespace ordolex
