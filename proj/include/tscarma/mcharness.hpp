#pragma once

// Monte Carlo experiments: accuracy of path means/variances against the
// stationary values, i.i.d. increments of the truncated series, and the
// density/boxplot summaries used for plotting.

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "tscarma/carmasim.hpp"

namespace tscarma {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Each index runs
/// exactly once; the first exception is rethrown after all workers stop.
void parallel_for(std::int64_t count, int jobs, const std::function<void(std::int64_t)>& fn);

struct AccuracyReport {
  std::string config_echo;
  std::int64_t replications = 0;
  std::vector<double> at_times;
  std::vector<double> mean_accuracy;  // empirical − theoretical
  std::vector<double> mean_se;
  std::vector<double> var_accuracy;
  std::vector<double> var_se;
  double theoretical_mean = 0.0;
  double theoretical_variance = 0.0;
  // samples[i][r]: value at at_times[i] in replication r.
  std::vector<std::vector<double>> samples;
};

struct SampleSummary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double mean_se = 0.0;
  double var_se = 0.0;
};

/// Mean and variance with standard errors; the variance error uses the
/// delta method with the fourth central moment.
SampleSummary summarize(const std::vector<double>& x);

AccuracyReport run_accuracy_experiment(const TemperingModel& model, const CarmaSpec& spec,
                                       const SeriesConfig& config, const std::vector<double>& times,
                                       std::int64_t replications, int parallelism,
                                       SimulationOptions options = {});

/// Same with an explicit scheme (the default follows the model).
AccuracyReport run_accuracy_experiment(const TemperingModel& model, const CarmaSpec& spec,
                                       const SeriesConfig& config, const std::vector<double>& times,
                                       std::int64_t replications, int parallelism, Scheme scheme,
                                       SimulationOptions options);

/// Sum of the truncated series over (0, 1]: i.i.d. draws of L_1^{(n)}.
AccuracyReport run_iid_experiment(const TemperingModel& model, std::int64_t n, std::int64_t sample_size,
                                  std::uint64_t seed = 0, int parallelism = 1,
                                  bool allow_case_ii = false);

struct Histogram {
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> density;
};

Histogram make_histogram(const std::vector<double>& samples, int bins);
void write_histogram_csv(std::ostream& os, const Histogram& h);

/// `bin_left,bin_right,density`.
std::string emit_density_data(const std::vector<double>& samples, int bins);

struct Boxplot {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
  std::int64_t outlier_count = 0;
};

Boxplot make_boxplot(const std::vector<double>& samples);
void write_boxplot_csv(std::ostream& os, const Boxplot& b);

/// `t,mean_acc,mean_se,var_acc,var_se`.
void write_report_csv(std::ostream& os, const AccuracyReport& report);

}  // namespace tscarma
