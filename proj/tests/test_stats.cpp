#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ordolex/errors.hpp"
#include "ordolex/stats.hpp"

using namespace ordolex;

TEST_CASE("reg_inc_beta boundary and symmetric values") {
  CHECK(reg_inc_beta(0.0, 2.5, 3.5) == 0.0);
  CHECK(reg_inc_beta(1.0, 2.5, 3.5) == 1.0);
  CHECK(reg_inc_beta(0.5, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(reg_inc_beta(0.5, 2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
  // closed form for a=1: I_x(1,b) = 1 - (1-x)^b
  CHECK(reg_inc_beta(0.3, 1.0, 4.0) ==
        doctest::Approx(1.0 - std::pow(0.7, 4.0)).epsilon(1e-12));
}

TEST_CASE("reg_inc_beta domain errors") {
  CHECK_THROWS_AS(reg_inc_beta(-0.1, 1, 1), DomainError);
  CHECK_THROWS_AS(reg_inc_beta(1.1, 1, 1), DomainError);
  CHECK_THROWS_AS(reg_inc_beta(0.5, 0, 1), DomainError);
  CHECK_THROWS_AS(reg_inc_beta(0.5, 1, -2), DomainError);
}

TEST_CASE("reg_inc_beta reflection identity and monotonicity") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ab(0.2, 20.0);
  for (int iter = 0; iter < 200; ++iter) {
    const double a = ab(rng), b = ab(rng);
    double prev = -1.0;
    for (int i = 0; i <= 40; ++i) {
      const double x = i / 40.0;
      const double v = reg_inc_beta(x, a, b);
      CHECK(v + reg_inc_beta(1.0 - x, b, a) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(v >= prev - 1e-12);  // monotone non-decreasing in x
      prev = v;
    }
  }
}

TEST_CASE("log_reg_inc_beta agrees with the linear form and reaches deep tails") {
  CHECK(log_reg_inc_beta(0.0, 2, 3) == -std::numeric_limits<double>::infinity());
  CHECK(log_reg_inc_beta(1.0, 2, 3) == 0.0);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> ab(0.5, 30.0), xs(0.01, 0.99);
  for (int iter = 0; iter < 200; ++iter) {
    const double a = ab(rng), b = ab(rng), x = xs(rng);
    const double lin = reg_inc_beta(x, a, b);
    if (lin > 1e-280) {
      CHECK(log_reg_inc_beta(x, a, b) ==
            doctest::Approx(std::log(lin)).epsilon(1e-9));
    }
  }
  // a tail far below double range stays finite and ordered
  const double lp1 = log_reg_inc_beta(1e-4, 200.0, 0.5);
  const double lp2 = log_reg_inc_beta(1e-5, 200.0, 0.5);
  CHECK(std::isfinite(lp1));
  CHECK(lp2 < lp1);
  CHECK(lp1 < -600.0 * std::log(10.0));  // far beyond linear-domain reach
}

TEST_CASE("f_sf endpoints") {
  CHECK(f_sf(0.0, 3, 10) == 1.0);
  CHECK(f_sf(std::numeric_limits<double>::infinity(), 3, 10) == 0.0);
  CHECK_THROWS_AS(f_sf(1.0, 0, 10), DomainError);
}

TEST_CASE("log10_f_sf matches 60-digit references in deep tails") {
  // frozen from mpmath betainc at 60 decimal digits
  struct Case {
    double f, df1, df2, log10p;
  };
  const Case cases[] = {
      {586.46, 1, 1484, -108.72831645752647},
      {130.93, 2, 1472, -52.334176137486487},
      {45.85, 1, 104, -9.1077295366272622},
      {220.49, 6, 955, -175.68588246884287},
      {9.69, 2, 940, -4.1655192785759991},
      {1200.0, 3, 300, -165.96718009174659},
  };
  for (const auto& c : cases) {
    const double got = log10_f_sf(c.f, c.df1, c.df2);
    CHECK(std::fabs(got - c.log10p) <= 1e-6 * std::fabs(c.log10p));
    if (c.log10p > -300.0)  // representable: linear and log routes agree
      CHECK(std::log10(f_sf(c.f, c.df1, c.df2)) ==
            doctest::Approx(got).epsilon(1e-9));
  }
}

TEST_CASE("t_test_ind identical samples") {
  const double a[] = {1.0, 2.0, 3.0};
  TestResult r = t_test_ind(a, a);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == 1.0);  // exact: I_1 = 1
  CHECK(r.df1 == doctest::Approx(4.0));
}

TEST_CASE("t_test_ind frozen pooled-variance oracle") {
  // a = {1,2,3}, b = {1,2,3,4,5}: t = -sqrt(15)/4, df = 6,
  // p frozen from direct evaluation of the pooled-variance formulas.
  const double a[] = {1, 2, 3};
  const double b[] = {1, 2, 3, 4, 5};
  TestResult r = t_test_ind(a, b);
  CHECK(r.statistic == doctest::Approx(-std::sqrt(15.0) / 4.0).epsilon(1e-14));
  CHECK(r.df1 == doctest::Approx(6.0));
  CHECK(r.p_value == doctest::Approx(0.3703147228597593).epsilon(1e-12));
}

TEST_CASE("t_test_ind symmetry and guards") {
  const double a[] = {1.0, 2.0, 3.5, 7.0};
  const double b[] = {0.5, 4.0, 5.0};
  TestResult ab = t_test_ind(a, b);
  TestResult ba = t_test_ind(b, a);
  CHECK(ab.statistic == doctest::Approx(-ba.statistic).epsilon(1e-14));
  CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-14));

  const double single[] = {1.0};
  const double flat[] = {2.0, 2.0, 2.0};
  CHECK_THROWS_AS(t_test_ind(single, b), DegenerateSample);
  CHECK_THROWS_AS(t_test_ind(flat, flat), DegenerateSample);
}

namespace {

struct SplitPlotOracle {
  double f_between, f_within, f_inter;
};

// Textbook cell-mean decomposition for the balanced two-measure design,
// independent of the difference-score implementation route.
SplitPlotOracle textbook_splitplot(const std::vector<std::vector<double>>& g1,
                                   const std::vector<std::vector<double>>& g2) {
  const std::vector<const std::vector<std::vector<double>>*> groups = {&g1, &g2};
  const double W = 2.0;
  double grand = 0.0;
  double n_total = 0.0;
  for (const auto* g : groups)
    for (const auto& subj : *g) {
      grand += subj[0] + subj[1];
      n_total += 1.0;
    }
  grand /= n_total * W;

  double w_mean[2] = {0, 0};
  for (const auto* g : groups)
    for (const auto& subj : *g) {
      w_mean[0] += subj[0];
      w_mean[1] += subj[1];
    }
  w_mean[0] /= n_total;
  w_mean[1] /= n_total;

  double ss_groups = 0, ss_subj = 0, ss_within = 0, ss_inter = 0, ss_err = 0;
  for (const auto* g : groups) {
    const double ng = static_cast<double>(g->size());
    double gm = 0;
    for (const auto& subj : *g) gm += subj[0] + subj[1];
    gm /= ng * W;
    ss_groups += W * ng * (gm - grand) * (gm - grand);
    double cell[2] = {0, 0};
    for (const auto& subj : *g) {
      cell[0] += subj[0];
      cell[1] += subj[1];
    }
    cell[0] /= ng;
    cell[1] /= ng;
    for (int w = 0; w < 2; ++w)
      ss_inter += ng * std::pow(cell[w] - gm - w_mean[w] + grand, 2);
    for (const auto& subj : *g) {
      const double sm = (subj[0] + subj[1]) / 2.0;
      ss_subj += W * (sm - gm) * (sm - gm);
      for (int w = 0; w < 2; ++w)
        ss_err += std::pow(subj[w] - sm - cell[w] + gm, 2);
    }
  }
  for (int w = 0; w < 2; ++w)
    ss_within += n_total * (w_mean[w] - grand) * (w_mean[w] - grand);

  const double df_g = 1.0, df_sw = n_total - 2.0, df_w = 1.0,
               df_e = n_total - 2.0;
  return {(ss_groups / df_g) / (ss_subj / df_sw),
          (ss_within / df_w) / (ss_err / df_e),
          (ss_inter / df_g) / (ss_err / df_e)};
}

}  // namespace

TEST_CASE("mixed_anova all-identical data gives F = 0, p = 1") {
  std::vector<SubjectMeasures> data;
  for (int i = 0; i < 3; ++i) data.push_back({"SV", 5.0, 5.0});
  for (int i = 0; i < 3; ++i) data.push_back({"VS", 5.0, 5.0});
  MixedAnovaResult r = mixed_anova(data);
  for (const TestResult* t : {&r.between, &r.within, &r.interaction}) {
    CHECK(t->statistic == 0.0);
    CHECK(t->p_value == 1.0);
  }
}

TEST_CASE("mixed_anova matches the textbook split-plot decomposition") {
  // 2 groups x 4 subjects, constructed by hand
  const std::vector<std::vector<double>> g1 = {
      {6.1, 5.2}, {6.4, 5.6}, {5.9, 5.1}, {6.6, 5.5}};
  const std::vector<std::vector<double>> g2 = {
      {5.0, 6.2}, {4.8, 6.6}, {5.3, 6.1}, {5.1, 6.8}};
  std::vector<SubjectMeasures> data;
  for (const auto& s : g1) data.push_back({"SV", s[0], s[1]});
  for (const auto& s : g2) data.push_back({"VS", s[0], s[1]});

  SplitPlotOracle oracle = textbook_splitplot(g1, g2);
  MixedAnovaResult r = mixed_anova(data);
  CHECK(r.between.statistic == doctest::Approx(oracle.f_between).epsilon(1e-10));
  CHECK(r.within.statistic == doctest::Approx(oracle.f_within).epsilon(1e-10));
  CHECK(r.interaction.statistic == doctest::Approx(oracle.f_inter).epsilon(1e-10));
  CHECK(r.between.df1 == doctest::Approx(1.0));
  CHECK(*r.between.df2 == doctest::Approx(6.0));
  CHECK(r.within.df1 == doctest::Approx(1.0));
  CHECK(*r.within.df2 == doctest::Approx(6.0));
}

TEST_CASE("mixed_anova degenerate designs") {
  CHECK_THROWS_AS(mixed_anova({{"SV", 1, 2}, {"SV", 2, 3}}), DegenerateDesign);
  CHECK_THROWS_AS(mixed_anova({{"SV", 1, 2}, {"SV", 2, 3}, {"VS", 1, 1}}),
                  DegenerateDesign);
  CHECK_THROWS_AS(mixed_anova({{"SV", 1, 2}}), DegenerateDesign);
}

namespace {

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& cols) {
  Eigen::MatrixXd m(cols.front().size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cols[j][i];
  return m;
}

}  // namespace

TEST_CASE("ols_fit recovers an exact linear relation") {
  Eigen::MatrixXd x = to_matrix({{1.0, 2.0, 4.0}});
  Eigen::VectorXd y(3);
  y << 2.0, 4.0, 8.0;  // y = 2x exactly
  OlsFit fit = ols_fit(x, y);
  CHECK(fit.rss == doctest::Approx(0.0).epsilon(1e-18));
  CHECK(fit.coefficients[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(fit.coefficients[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("ols_fit frozen simple-regression oracle") {
  // y = {1,2,3,4}, x = {1,2,3,5}; closed-form values:
  // slope = 6.5/8.75, intercept = 2.5 - slope*2.75, rss = 5 - slope*6.5
  Eigen::MatrixXd x = to_matrix({{1.0, 2.0, 3.0, 5.0}});
  Eigen::VectorXd y(4);
  y << 1.0, 2.0, 3.0, 4.0;
  OlsFit fit = ols_fit(x, y, {"x"});
  CHECK(fit.coefficients[1] == doctest::Approx(6.5 / 8.75).epsilon(1e-12));
  CHECK(fit.coefficients[0] ==
        doctest::Approx(2.5 - (6.5 / 8.75) * 2.75).epsilon(1e-12));
  CHECK(fit.rss == doctest::Approx(5.0 - (6.5 / 8.75) * 6.5).epsilon(1e-10));
  CHECK(fit.tss == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(fit.f_statistic == doctest::Approx(56.33333333333333).epsilon(1e-9));
  CHECK(fit.f_p_value == doctest::Approx(0.017292370176009184).epsilon(1e-9));
}

TEST_CASE("ols_fit residuals are orthogonal to the design") {
  std::mt19937 rng(7);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int iter = 0; iter < 30; ++iter) {
    const int n = 20, p = 4;
    Eigen::MatrixXd x(n, p);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < p; ++j) x(i, j) = noise(rng);
      y(i) = 1.5 + x(i, 0) - 2.0 * x(i, 2) + noise(rng);
    }
    OlsFit fit = ols_fit(x, y);
    Eigen::VectorXd beta =
        Eigen::Map<const Eigen::VectorXd>(fit.coefficients.data(), p + 1);
    Eigen::MatrixXd a(n, p + 1);
    a.col(0).setOnes();
    a.rightCols(p) = x;
    Eigen::VectorXd resid = y - a * beta;
    for (int j = 0; j < p + 1; ++j) {
      const double dot = std::fabs(resid.dot(a.col(j)));
      CHECK(dot <= 1e-8 * resid.norm() * a.col(j).norm() + 1e-12);
    }
  }
}

TEST_CASE("adding a column never increases rss") {
  std::mt19937 rng(21);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int iter = 0; iter < 30; ++iter) {
    const int n = 16;
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < 3; ++j) x(i, j) = noise(rng);
      y(i) = 0.5 * x(i, 0) + noise(rng);
    }
    OlsFit small = ols_fit(x.leftCols(2), y);
    OlsFit big = ols_fit(x, y);
    CHECK(big.rss <= small.rss + 1e-10);
  }
}

TEST_CASE("ols_fit rank and dimension guards") {
  {
    // duplicated column is rank deficient; the message names it
    Eigen::MatrixXd x = to_matrix({{1, 2, 3, 4, 4.5}, {1, 2, 3, 4, 4.5}});
    Eigen::VectorXd y(5);
    y << 1, 2, 3, 4, 5;
    try {
      ols_fit(x, y, {"left", "right"});
      FAIL("expected RankDeficient");
    } catch (const RankDeficient& e) {
      const std::string what = e.what();
      CHECK((what.find("left") != std::string::npos ||
             what.find("right") != std::string::npos));
    }
  }
  {
    Eigen::MatrixXd x = to_matrix({{1, 2}});
    Eigen::VectorXd y(2);
    y << 1, 2;
    CHECK_THROWS_AS(ols_fit(x, y), Underdetermined);
  }
}

TEST_CASE("f_change guards and noise columns") {
  std::mt19937 rng(8);
  std::normal_distribution<double> noise(0.0, 1.0);
  const int n = 24;
  Eigen::MatrixXd x(n, 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = noise(rng);
    x(i, 1) = noise(rng);
    x(i, 2) = noise(rng);  // pure noise, unrelated to y
    y(i) = 2.0 * x(i, 0) - x(i, 1) + 0.3 * noise(rng);
  }
  OlsFit reduced = ols_fit(x.leftCols(2), y, {"a", "b"});
  OlsFit full = ols_fit(x, y, {"a", "b", "z"});
  FChange fc = f_change(reduced, full);
  CHECK(fc.p > 0.05);  // the noise column adds nothing (seed-checked)
  // closed form recomputed from the raw rss values
  const double expect =
      ((reduced.rss - full.rss) / 1.0) / (full.rss / (n - 3 - 1));
  CHECK(fc.f == doctest::Approx(expect).epsilon(1e-12));

  CHECK_THROWS_AS(f_change(full, full), NotNested);
  CHECK_THROWS_AS(f_change(full, reduced), NotNested);
  OlsFit other = ols_fit(x.leftCols(2), y, {"a", "q"});
  CHECK_THROWS_AS(f_change(other, full), NotNested);
}
