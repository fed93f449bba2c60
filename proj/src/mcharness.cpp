#include "tscarma/mcharness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "tscarma/csv.hpp"
#include "tscarma/errors.hpp"

namespace tscarma {

void parallel_for(std::int64_t count, int jobs, const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  const int workers = static_cast<int>(std::min<std::int64_t>(std::max(jobs, 1), count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&]() {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

SampleSummary summarize(const std::vector<double>& x) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) throw ValidationError("summarize: need at least two samples");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  SampleSummary s;
  s.mean = mean;
  s.variance = m2 / (n - 1.0);
  const double mu2 = m2 / n;
  const double mu4 = m4 / n;
  s.mean_se = std::sqrt(s.variance / n);
  s.var_se = std::sqrt(std::max(mu4 - mu2 * mu2, 0.0) / n);
  return s;
}

namespace {

std::string echo(const TemperingModel& model, const SeriesConfig& c, std::int64_t reps) {
  std::ostringstream os;
  os << "model=" << model.name() << " alpha=" << csv::format(model.alpha(), 12)
     << " p=" << csv::format(model.p(), 12) << " T=" << csv::format(c.T, 12)
     << " kappa=" << csv::format(c.kappa, 12) << " n=" << c.n << " seed=" << c.seed
     << " replications=" << reps;
  return os.str();
}

void fill_accuracy(AccuracyReport& r) {
  for (const auto& col : r.samples) {
    const SampleSummary s = summarize(col);
    r.mean_accuracy.push_back(s.mean - r.theoretical_mean);
    r.mean_se.push_back(s.mean_se);
    r.var_accuracy.push_back(s.variance - r.theoretical_variance);
    r.var_se.push_back(s.var_se);
  }
}

}  // namespace

AccuracyReport run_accuracy_experiment(const TemperingModel& model, const CarmaSpec& spec,
                                       const SeriesConfig& config, const std::vector<double>& times,
                                       std::int64_t replications, int parallelism,
                                       SimulationOptions options) {
  return run_accuracy_experiment(model, spec, config, times, replications, parallelism,
                                 default_scheme(model), options);
}

AccuracyReport run_accuracy_experiment(const TemperingModel& model, const CarmaSpec& spec,
                                       const SeriesConfig& config, const std::vector<double>& times,
                                       std::int64_t replications, int parallelism, Scheme scheme,
                                       SimulationOptions options) {
  if (replications < 2) throw ValidationError("accuracy experiment: replications must be >= 2");
  if (times.empty()) throw ValidationError("accuracy experiment: need at least one time");
  std::vector<double> grid = times;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const PathSimulator sim(model, spec, config, scheme, options);
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(replications));
  parallel_for(replications, parallelism, [&](std::int64_t r) {
    rows[static_cast<std::size_t>(r)] = sim.simulate_values(grid, static_cast<std::uint64_t>(r));
  });

  AccuracyReport rep;
  rep.config_echo = echo(model, config, replications);
  rep.replications = replications;
  rep.at_times = grid;
  const StationaryMoments sm = stationary_moments(model, sim.decomposition());
  rep.theoretical_mean = sm.mean;
  rep.theoretical_variance = sm.variance;
  rep.samples.assign(grid.size(), std::vector<double>(static_cast<std::size_t>(replications)));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t i = 0; i < grid.size(); ++i) rep.samples[i][r] = rows[r][i];
  fill_accuracy(rep);
  return rep;
}

AccuracyReport run_iid_experiment(const TemperingModel& model, std::int64_t n, std::int64_t sample_size,
                                  std::uint64_t seed, int parallelism, bool allow_case_ii) {
  if (sample_size < 2) throw ValidationError("iid experiment: sample_size must be >= 2");
  SeriesConfig cfg;
  cfg.T = 1.0;
  cfg.kappa = 0.0;
  cfg.n = n;
  cfg.seed = seed;
  cfg.allow_case_ii = allow_case_ii;

  std::vector<double> draws(static_cast<std::size_t>(sample_size));
  parallel_for(sample_size, parallelism, [&](std::int64_t r) {
    SeriesConfig c = cfg;
    c.stream_index = static_cast<std::uint64_t>(r);
    const JumpSkeleton sk = sample_skeleton(model, c);
    double sum = sk.drift * c.T;
    for (const auto& j : sk.jumps) sum += j.size;
    draws[static_cast<std::size_t>(r)] = sum;
  });

  const TruncatedMoments tm = truncated_moments(model, n);
  AccuracyReport rep;
  rep.config_echo = echo(model, cfg, sample_size);
  rep.replications = sample_size;
  rep.at_times = {1.0};
  rep.theoretical_mean = tm.m1;
  rep.theoretical_variance = tm.m2;
  rep.samples = {std::move(draws)};
  fill_accuracy(rep);
  return rep;
}

Histogram make_histogram(const std::vector<double>& samples, int bins) {
  if (samples.empty()) throw ValidationError("histogram: empty sample set");
  if (bins < 1) throw ValidationError("histogram: bins must be >= 1");
  for (double v : samples) {
    if (!std::isfinite(v)) throw ValidationError("histogram: non-finite sample");
  }
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *lo_it;
  double hi = *hi_it;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bins;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(bins), 0);
  for (double v : samples) {
    auto b = static_cast<std::int64_t>((v - lo) / width);
    b = std::clamp<std::int64_t>(b, 0, bins - 1);
    ++counts[static_cast<std::size_t>(b)];
  }
  Histogram h;
  const auto total = static_cast<double>(samples.size());
  for (int b = 0; b < bins; ++b) {
    const double left = lo + width * b;
    const double right = (b + 1 == bins) ? hi : lo + width * (b + 1);
    h.left.push_back(left);
    h.right.push_back(right);
    h.density.push_back(static_cast<double>(counts[static_cast<std::size_t>(b)]) / (total * (right - left)));
  }
  return h;
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
  os << "bin_left,bin_right,density\n";
  for (std::size_t i = 0; i < h.left.size(); ++i) csv::write_row(os, {h.left[i], h.right[i], h.density[i]}, 17);
}

std::string emit_density_data(const std::vector<double>& samples, int bins) {
  std::ostringstream os;
  write_histogram_csv(os, make_histogram(samples, bins));
  return os.str();
}

namespace {

double quantile_sorted(const std::vector<double>& s, double q) {
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(i);
  if (i + 1 >= s.size()) return s.back();
  return s[i] + frac * (s[i + 1] - s[i]);
}

}  // namespace

Boxplot make_boxplot(const std::vector<double>& samples) {
  if (samples.empty()) throw ValidationError("boxplot: empty sample set");
  std::vector<double> s = samples;
  std::sort(s.begin(), s.end());
  Boxplot b;
  b.min = s.front();
  b.max = s.back();
  b.q1 = quantile_sorted(s, 0.25);
  b.median = quantile_sorted(s, 0.5);
  b.q3 = quantile_sorted(s, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo = b.q1 - 1.5 * iqr;
  const double hi = b.q3 + 1.5 * iqr;
  for (double v : s) b.outlier_count += (v < lo || v > hi) ? 1 : 0;
  return b;
}

void write_boxplot_csv(std::ostream& os, const Boxplot& b) {
  os << "min,q1,median,q3,max,outlier_count\n";
  os << csv::format(b.min) << ',' << csv::format(b.q1) << ',' << csv::format(b.median) << ','
     << csv::format(b.q3) << ',' << csv::format(b.max) << ',' << b.outlier_count << '\n';
}

void write_report_csv(std::ostream& os, const AccuracyReport& report) {
  os << "t,mean_acc,mean_se,var_acc,var_se\n";
  for (std::size_t i = 0; i < report.at_times.size(); ++i) {
    csv::write_row(os, {report.at_times[i], report.mean_accuracy[i], report.mean_se[i],
                        report.var_accuracy[i], report.var_se[i]},
                   17);
  }
}

}  // namespace tscarma
