#include "ordolex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_set>

#include "ordolex/errors.hpp"

namespace ordolex {

namespace {

constexpr double kLn10 = 2.302585092994045684;

// Continued fraction for I_x(a,b), modified Lentz. Converges for
// x < (a+1)/(a+b+2); callers use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
// on the other side.
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;

  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) return h;
  }
  return h;  // converged to working precision in practice
}

void check_beta_domain(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0) || !(x <= 1.0))
    throw DomainError("reg_inc_beta requires 0 <= x <= 1, a > 0, b > 0");
}

double log_beta_prefactor(double x, double a, double b) {
  return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
         a * std::log(x) + b * std::log1p(-x);
}

TestResult make_f_test(double f, double df1, double df2) {
  TestResult r;
  r.statistic = f;
  r.df1 = df1;
  r.df2 = df2;
  r.p_value = f_sf(f, df1, df2);
  r.log10_p = log10_f_sf(f, df1, df2);
  return r;
}

}  // namespace

double reg_inc_beta(double x, double a, double b) {
  check_beta_domain(x, a, b);
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double lbt = log_beta_prefactor(x, a, b);
  if (x < (a + 1.0) / (a + b + 2.0))
    return std::exp(lbt) * betacf(a, b, x) / a;
  return 1.0 - std::exp(lbt) * betacf(b, a, 1.0 - x) / b;
}

double log_reg_inc_beta(double x, double a, double b) {
  check_beta_domain(x, a, b);
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x == 1.0) return 0.0;
  const double lbt = log_beta_prefactor(x, a, b);
  if (x < (a + 1.0) / (a + b + 2.0))
    return lbt + std::log(betacf(a, b, x) / a);
  const double upper = std::exp(lbt) * betacf(b, a, 1.0 - x) / b;
  return std::log1p(-std::min(upper, 1.0));
}

double f_sf(double f, double df1, double df2) {
  if (!(df1 > 0.0) || !(df2 > 0.0) || std::isnan(f))
    throw DomainError("f_sf requires positive degrees of freedom");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  const double x = df2 / (df2 + df1 * f);
  return reg_inc_beta(x, df2 / 2.0, df1 / 2.0);
}

double log10_f_sf(double f, double df1, double df2) {
  if (!(df1 > 0.0) || !(df2 > 0.0) || std::isnan(f))
    throw DomainError("f_sf requires positive degrees of freedom");
  if (f <= 0.0) return 0.0;
  if (std::isinf(f)) return -std::numeric_limits<double>::infinity();
  const double x = df2 / (df2 + df1 * f);
  return log_reg_inc_beta(x, df2 / 2.0, df1 / 2.0) / kLn10;
}

TestResult t_test_ind(std::span<const double> a, std::span<const double> b) {
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  if (a.size() < 2 || b.size() < 2)
    throw DegenerateSample("t-test needs >= 2 values per sample");

  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / na;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / nb;
  double ssa = 0.0, ssb = 0.0;
  for (double v : a) ssa += (v - ma) * (v - ma);
  for (double v : b) ssb += (v - mb) * (v - mb);

  const double df = na + nb - 2.0;
  const double pooled = (ssa + ssb) / df;
  if (pooled <= 0.0) throw DegenerateSample("zero pooled variance");

  const double t = (ma - mb) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  const double x = df / (df + t * t);

  TestResult r;
  r.statistic = t;
  r.df1 = df;
  r.p_value = reg_inc_beta(x, df / 2.0, 0.5);
  r.log10_p = log_reg_inc_beta(x, df / 2.0, 0.5) / kLn10;
  return r;
}

MixedAnovaResult mixed_anova(const std::vector<SubjectMeasures>& data) {
  std::map<std::string, std::vector<const SubjectMeasures*>> groups;
  for (const auto& s : data) groups[s.group].push_back(&s);

  const auto g_count = static_cast<double>(groups.size());
  const auto n_total = static_cast<double>(data.size());
  if (groups.size() < 2)
    throw DegenerateDesign("mixed ANOVA needs >= 2 groups");
  for (const auto& [name, members] : groups)
    if (members.size() < 2)
      throw DegenerateDesign("group '" + name + "' has fewer than 2 subjects");

  // Between stratum: one-way ANOVA on subject means.
  double grand_subj = 0.0;
  for (const auto& s : data) grand_subj += (s.within_a + s.within_b) / 2.0;
  grand_subj /= n_total;

  double ss_groups = 0.0, ss_subj_within = 0.0;
  // Within stratum via difference scores (exact for a 2-level factor).
  double sse_d = 0.0, sum_group_dmeans = 0.0, sum_inv_n = 0.0, grand_d = 0.0;
  std::vector<std::pair<double, double>> group_d;  // (mean diff, n)

  for (const auto& [name, members] : groups) {
    const auto ng = static_cast<double>(members.size());
    double gm = 0.0, dm = 0.0;
    for (const auto* s : members) {
      gm += (s->within_a + s->within_b) / 2.0;
      dm += s->within_a - s->within_b;
    }
    gm /= ng;
    dm /= ng;
    ss_groups += ng * (gm - grand_subj) * (gm - grand_subj);
    for (const auto* s : members) {
      const double sm = (s->within_a + s->within_b) / 2.0;
      const double d = s->within_a - s->within_b;
      ss_subj_within += (sm - gm) * (sm - gm);
      sse_d += (d - dm) * (d - dm);
      grand_d += d;
    }
    sum_group_dmeans += dm;
    sum_inv_n += 1.0 / ng;
    group_d.emplace_back(dm, ng);
  }
  grand_d /= n_total;

  const double df_between = g_count - 1.0;
  const double df_error = n_total - g_count;

  auto f_ratio = [](double num, double den) {
    if (num <= 0.0) return 0.0;
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
  };

  MixedAnovaResult r;
  r.between = make_f_test(
      f_ratio(ss_groups / df_between, ss_subj_within / df_error), df_between,
      df_error);

  // Type III within main effect: unweighted mean of group difference means.
  const double sigma2_d = sse_d / df_error;
  const double mu_d = sum_group_dmeans / g_count;
  const double var_mu = sigma2_d * sum_inv_n / (g_count * g_count);
  r.within = make_f_test(f_ratio(mu_d * mu_d, var_mu), 1.0, df_error);

  double ss_inter_d = 0.0;
  for (const auto& [dm, ng] : group_d)
    ss_inter_d += ng * (dm - grand_d) * (dm - grand_d);
  r.interaction = make_f_test(
      f_ratio(ss_inter_d / df_between, sigma2_d), df_between, df_error);
  return r;
}

OlsFit ols_fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
               std::vector<std::string> column_names) {
  const auto n = static_cast<int>(design.rows());
  const auto p = static_cast<int>(design.cols());
  if (y.size() != n) throw DimensionMismatch("design/response row mismatch");
  if (column_names.empty())
    for (int j = 0; j < p; ++j)
      column_names.push_back("x" + std::to_string(j + 1));
  if (static_cast<int>(column_names.size()) != p)
    throw DimensionMismatch("column name count does not match design");
  if (n <= p + 1)
    throw Underdetermined("need n > p + 1 observations (n=" +
                          std::to_string(n) + ", p=" + std::to_string(p) + ")");

  Eigen::MatrixXd a(n, p + 1);
  a.col(0).setOnes();
  a.rightCols(p) = design;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  qr.setThreshold(1e-10);
  qr.compute(a);
  if (qr.rank() < p + 1) {
    // pivoted positions at or past the numerical rank hold the dependent
    // columns; indices()(pos) is the source column for pivoted position pos
    const auto& perm = qr.colsPermutation().indices();
    std::string offending;
    for (int pos = static_cast<int>(qr.rank()); pos < p + 1; ++pos) {
      const int orig = perm(pos);
      if (!offending.empty()) offending += ", ";
      offending += (orig == 0) ? "(intercept)" : column_names[orig - 1];
    }
    throw RankDeficient("design is rank deficient; dependent columns: " +
                        offending);
  }

  OlsFit fit;
  fit.column_names = std::move(column_names);
  Eigen::VectorXd beta = qr.solve(y);
  fit.coefficients.assign(beta.data(), beta.data() + beta.size());
  fit.rss = (y - a * beta).squaredNorm();
  fit.tss = (y.array() - y.mean()).matrix().squaredNorm();
  fit.n = n;
  fit.p = p;

  const double df2 = n - p - 1;
  const double num = (fit.tss - fit.rss) / p;
  const double den = fit.rss / df2;
  if (num <= 0.0)
    fit.f_statistic = 0.0;
  else if (den <= 0.0)
    fit.f_statistic = std::numeric_limits<double>::infinity();
  else
    fit.f_statistic = num / den;
  fit.f_p_value = f_sf(fit.f_statistic, p, df2);
  fit.log10_f_p = log10_f_sf(fit.f_statistic, p, df2);
  return fit;
}

FChange f_change(const OlsFit& reduced, const OlsFit& full) {
  if (reduced.n != full.n)
    throw NotNested("models fit on different observation counts");
  std::unordered_set<std::string_view> full_cols(full.column_names.begin(),
                                                 full.column_names.end());
  for (const auto& name : reduced.column_names)
    if (!full_cols.contains(name))
      throw NotNested("reduced column '" + name + "' absent from full model");
  const int dp = full.p - reduced.p;
  if (dp <= 0) throw NotNested("full model adds no predictors");

  const double df2 = full.n - full.p - 1;
  const double num = (reduced.rss - full.rss) / dp;
  const double den = full.rss / df2;

  FChange fc;
  if (num <= 0.0)
    fc.f = 0.0;
  else if (den <= 0.0)
    fc.f = std::numeric_limits<double>::infinity();
  else
    fc.f = num / den;
  fc.p = f_sf(fc.f, dp, df2);
  fc.log10_p = log10_f_sf(fc.f, dp, df2);
  return fc;
}

}  // namespace ordolex
