#pragma once

#include <array>
#include <optional>

#include "qbic/search.hpp"
#include "qbic/simgen.hpp"

namespace qbic {

struct ExperimentSpec {
  DgpSpec dgp;                       // dgp.n and dgp.seed are overridden per run
  int replications = 2000;
  SearchSpec search;
  std::vector<Eigen::Index> n_list;  // nonempty, increasing
  bool init_around_truth = true;     // U(theta* - 1, theta* + 1) starts
  std::uint64_t master_seed = 0;
  int threads = 0;                   // 0 -> hardware concurrency
  std::optional<Vector> theta_ref;   // reference for rate_check (misspecified DGPs)

  void validate() const;
  int n_models(Eigen::Index n) const;  // candidate count at sample size n
};

constexpr std::array<Criterion, 3> kAllCriteria{Criterion::QBIC, Criterion::BIC,
                                                Criterion::fAIC};

// Selection counts per criterion and sample size; every row sums to the
// replication count.
struct FrequencyTable {
  std::vector<Eigen::Index> n_list;
  int replications = 0;
  // counts[criterion][n_index][model_id - 1]
  std::array<std::vector<std::vector<long>>, 3> counts;

  long count(Criterion c, int n_index, int model_id) const;
  double frequency(Criterion c, int n_index, int model_id) const;
};

// Mean/sd of theta_hat per candidate and sample size, plus boundary and
// failure tallies.
struct EstimatorStats {
  struct Cell {
    Vector mean;
    Vector sd;
    long boundary_hits = 0;
    long failures = 0;
    long count = 0;  // replications contributing to mean/sd
  };
  std::vector<Eigen::Index> n_list;
  std::vector<std::vector<Cell>> cells;  // [n_index][model_id - 1]

  const Cell& cell(int n_index, int model_id) const;
};

struct ExperimentResult {
  FrequencyTable freq;
  EstimatorStats stats;
};

// Runs the full paired design: one dataset per replication, every candidate
// fitted once, all three criteria scored on the same fits. Replication r of
// sample size n uses the stream mix(mix(master_seed, n), r), so the output is
// identical for any thread count.
ExperimentResult run_experiment(const ExperimentSpec& spec);

EstimatorStats::Cell estimator_summary(const ExperimentSpec& spec, int model_id,
                                       Eigen::Index n);

// Least-squares slope of log RMSE(theta_hat - theta_ref) against log n.
double rate_check(const ExperimentSpec& spec, int model_id);

// CSV / JSON emission; files named {scenario}_{table}_{n}.csv in out_dir.
void write_frequency_csv(const ExperimentResult& result, Scenario scenario,
                         const std::string& out_dir);
void write_estimator_csv(const ExperimentResult& result, Scenario scenario,
                         const std::string& out_dir);
void write_summary_json(const ExperimentResult& result, const ExperimentSpec& spec,
                        const std::string& out_dir);

}  // namespace qbic
