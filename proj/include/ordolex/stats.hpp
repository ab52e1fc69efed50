#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ordolex {

// Regularized incomplete beta I_x(a,b) by continued fraction (modified Lentz).
// Absolute error <= 1e-10 on the admissible domain. Throws DomainError
// outside 0 <= x <= 1, a > 0, b > 0.
double reg_inc_beta(double x, double a, double b);

// Natural log of I_x(a,b), stable deep in the lower tail where the linear
// form underflows. Relative error in log10(I) <= 1e-6.
double log_reg_inc_beta(double x, double a, double b);

// Upper tail of the F distribution via the beta mapping
// x = df2/(df2 + df1*f), P(F > f) = I_x(df2/2, df1/2).
double f_sf(double f, double df1, double df2);
double log10_f_sf(double f, double df1, double df2);

struct TestResult {
  double statistic = 0.0;
  double df1 = 0.0;
  std::optional<double> df2;  // absent for the t-test
  double p_value = 1.0;
  double log10_p = 0.0;  // finite even when p_value underflows to 0
};

// Two-sided equal-variance (Student) t-test. Throws DegenerateSample when a
// sample has fewer than 2 values or the pooled variance is zero.
TestResult t_test_ind(std::span<const double> a, std::span<const double> b);

// One subject per language: a between-group label and two repeated measures.
struct SubjectMeasures {
  std::string group;
  double within_a = 0.0;
  double within_b = 0.0;
};

struct MixedAnovaResult {
  TestResult between;      // main effect of the grouping factor
  TestResult within;       // main effect of the repeated measure
  TestResult interaction;  // group x measure
};

// Split-plot decomposition for a 2-level within factor. Unbalanced groups use
// the unweighted-marginal (Type III) test for the within main effect; with
// equal group sizes all three effects match the textbook cell-mean
// decomposition exactly. Throws DegenerateDesign with fewer than 2 groups or
// any group smaller than 2 subjects.
MixedAnovaResult mixed_anova(const std::vector<SubjectMeasures>& data);

struct OlsFit {
  std::vector<std::string> column_names;  // predictors, intercept excluded
  std::vector<double> coefficients;       // intercept first, then columns
  double rss = 0.0;
  double tss = 0.0;
  int n = 0;
  int p = 0;  // predictors, intercept excluded
  double f_statistic = 0.0;
  double f_p_value = 1.0;
  double log10_f_p = 0.0;
};

// Least squares with an implicit intercept, via column-pivoted Householder QR
// (rank tolerance 1e-10 relative to the largest pivot). Throws Underdetermined
// when n <= p + 1 and RankDeficient naming the dependent columns otherwise.
OlsFit ols_fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
               std::vector<std::string> column_names = {});

struct FChange {
  double f = 0.0;
  double p = 1.0;
  double log10_p = 0.0;
};

// F test for the improvement of `full` over `reduced`. Requires strict
// nesting: same n, column names of `reduced` a proper subset of `full`.
FChange f_change(const OlsFit& reduced, const OlsFit& full);

}  // namespace ordolex
