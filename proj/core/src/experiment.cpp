#include "olsrsim/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "olsrsim/scenario.hpp"

namespace olsrsim {

RunError::RunError(MetricKind m, double rate, std::size_t rep, std::uint64_t s,
                   const std::string& cause)
    : std::runtime_error(fmt::format("run metric={} rate={} replication={} seed={}: {}",
                                     to_string(m), rate, rep, s, cause)),
      metric(m),
      rate_pps(rate),
      replication(rep),
      seed(s) {}

std::vector<SummaryRow> summarize(const std::vector<RunRow>& rows) {
  const auto cols = numeric_columns();
  std::vector<SummaryRow> out;
  std::vector<std::vector<const RunRow*>> members;
  for (const RunRow& r : rows) {
    std::size_t g = 0;
    while (g < out.size() && !(out[g].metric == r.metric && out[g].rate_pps == r.rate_pps)) ++g;
    if (g == out.size()) {
      out.push_back(SummaryRow{r.metric, r.rate_pps, 0, {}, {}});
      members.emplace_back();
    }
    members[g].push_back(&r);
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    const auto& m = members[g];
    out[g].runs = m.size();
    for (const auto& col : cols) {
      double sum = 0.0;
      for (const RunRow* r : m) sum += col.get(*r);
      const double mean = sum / static_cast<double>(m.size());
      double sd = 0.0;
      if (!std::isfinite(mean)) {
        sd = std::nan("");
      } else if (m.size() > 1) {
        double ss = 0.0;
        for (const RunRow* r : m) ss += (col.get(*r) - mean) * (col.get(*r) - mean);
        sd = std::sqrt(ss / static_cast<double>(m.size() - 1));
      }
      out[g].mean.push_back(mean);
      out[g].sd.push_back(sd);
    }
  }
  return out;
}

std::vector<RunRow> run_sweep(const SweepConfig& sweep, const ProgressFn& progress) {
  sweep.validate();
  struct Job {
    MetricKind metric;
    double rate;
    std::size_t replication;
  };
  std::vector<Job> jobs;
  for (MetricKind m : sweep.metrics) {
    for (double rate : sweep.rates) {
      for (std::size_t r = 0; r < sweep.replications; ++r) jobs.push_back({m, rate, r});
    }
  }

  std::vector<std::optional<RunRow>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      RunConfig cfg = sweep.base;
      cfg.metric = job.metric;
      cfg.rate_pps = job.rate;
      cfg.seed = sweep.seed_for(job.replication);
      try {
        results[i] = run_single(cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
      const std::size_t finished = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, jobs.size());
      }
    }
  };

  const std::size_t n_workers = std::min(sweep.workers, jobs.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  std::vector<RunRow> rows;
  rows.reserve(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (errors[i]) {
      const Job& job = jobs[i];
      const auto seed = sweep.seed_for(job.replication);
      try {
        std::rethrow_exception(errors[i]);
      } catch (const DegenerateTopology&) {
        throw;
      } catch (const InvariantViolation&) {
        throw;
      } catch (const std::exception& e) {
        throw RunError(job.metric, job.rate, job.replication, seed, e.what());
      }
    }
    rows.push_back(*results[i]);
  }
  return rows;
}

std::string render_runs_csv(const std::vector<RunRow>& rows) {
  std::string out = runs_csv_header() + "\n";
  for (const RunRow& r : rows) out += to_csv_line(r) + "\n";
  return out;
}

std::string render_summary_csv(const std::vector<SummaryRow>& summary) {
  const auto cols = numeric_columns();
  std::string out = "metric,rate_pps,runs";
  for (const auto& c : cols) out += fmt::format(",{}_mean,{}_sd", c.name, c.name);
  out += "\n";
  for (const auto& s : summary) {
    out += fmt::format("{},{},{}", to_string(s.metric), format_number(s.rate_pps), s.runs);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out += "," + format_number(s.mean[i]) + "," + format_number(s.sd[i]);
    }
    out += "\n";
  }
  return out;
}

std::string render_summary_long(const std::vector<SummaryRow>& summary) {
  const auto cols = numeric_columns();
  std::string out = "metric,rate_pps,measure,mean,sd\n";
  for (const auto& s : summary) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out += fmt::format("{},{},{},{},{}\n", to_string(s.metric), format_number(s.rate_pps),
                         cols[i].name, format_number(s.mean[i]), format_number(s.sd[i]));
    }
  }
  return out;
}

std::string render_figure(const std::vector<SummaryRow>& summary, std::string_view column) {
  const auto cols = numeric_columns();
  std::size_t col = cols.size();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i].name == column) col = i;
  }
  if (col == cols.size()) throw std::invalid_argument(fmt::format("no column '{}'", column));

  std::vector<MetricKind> metrics;
  std::vector<double> rates;
  for (const auto& s : summary) {
    if (std::find(metrics.begin(), metrics.end(), s.metric) == metrics.end()) {
      metrics.push_back(s.metric);
    }
    if (std::find(rates.begin(), rates.end(), s.rate_pps) == rates.end()) {
      rates.push_back(s.rate_pps);
    }
  }
  std::sort(rates.begin(), rates.end());

  std::string out = "# rate_pps";
  for (MetricKind m : metrics) out += fmt::format(" {}", to_string(m));
  out += fmt::format("\n# column: {} (mean over replications)\n", column);
  for (double rate : rates) {
    out += format_number(rate);
    for (MetricKind m : metrics) {
      auto it = std::find_if(summary.begin(), summary.end(), [&](const SummaryRow& s) {
        return s.metric == m && s.rate_pps == rate;
      });
      out += " " + (it == summary.end() ? std::string("nan") : format_number(it->mean[col]));
    }
    out += "\n";
  }
  return out;
}

namespace {
void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << content;
}
}  // namespace

void write_sweep_outputs(const std::vector<RunRow>& rows, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto summary = summarize(rows);
  write_file(out_dir / "runs.csv", render_runs_csv(rows));
  write_file(out_dir / "summary.csv", render_summary_csv(summary));
  write_file(out_dir / "summary_long.csv", render_summary_long(summary));
  write_file(out_dir / "fig_throughput.dat", render_figure(summary, "throughput_bps"));
  write_file(out_dir / "fig_e2ed.dat", render_figure(summary, "e2ed_ms_mean"));
  write_file(out_dir / "fig_nrl.dat", render_figure(summary, "nrl"));
  write_file(out_dir / "fig_opcost.dat", render_figure(summary, "op_cost_total"));
}

}  // namespace olsrsim
