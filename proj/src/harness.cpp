#include "qbic/harness.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

#include <nlohmann/json.hpp>

namespace qbic {

void ExperimentSpec::validate() const {
  if (replications < 1) throw Error("ExperimentSpec: replications must be >= 1");
  if (n_list.empty()) throw Error("ExperimentSpec: n_list must be nonempty");
  for (size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw Error("ExperimentSpec: n_list must be increasing");
  DgpSpec d = dgp;
  d.n = n_list.front();
  d.validate();
}

int ExperimentSpec::n_models(Eigen::Index n) const {
  if (search.mode == SearchMode::ExhaustiveSubsets) return 15;  // p = 4 grid
  return std::min<int>(search.max_order, static_cast<int>(n) - 1);
}

long FrequencyTable::count(Criterion c, int n_index, int model_id) const {
  return counts[static_cast<int>(c)].at(n_index).at(model_id - 1);
}

double FrequencyTable::frequency(Criterion c, int n_index, int model_id) const {
  return static_cast<double>(count(c, n_index, model_id)) / replications;
}

const EstimatorStats::Cell& EstimatorStats::cell(int n_index, int model_id) const {
  return cells.at(n_index).at(model_id - 1);
}

namespace {

struct ReplicationRecord {
  std::array<int, 3> winner{0, 0, 0};
  std::vector<Vector> theta;       // per candidate; empty when the fit failed
  std::vector<char> boundary;      // per candidate
  std::vector<char> failed;        // per candidate
};

FitConfig base_config_for(const ExperimentSpec& spec, std::uint64_t rep_seed,
                          Eigen::Index design_p) {
  FitConfig cfg = spec.search.fit_config;
  if (spec.init_around_truth) {
    Vector center = Vector::Zero(design_p);
    const Eigen::Index k = std::min<Eigen::Index>(design_p, spec.dgp.theta_star.size());
    center.head(k) = spec.dgp.theta_star.head(k);
    if (spec.search.mode == SearchMode::ExhaustiveSubsets)
      center = spec.dgp.theta_star;
    cfg.init = FitInit::uniform_around(center, 1.0, mix_seed(rep_seed, 0x1717ULL));
  }
  return cfg;
}

// Fit every candidate once, score all three criteria, pick a winner per
// criterion. Exhaustive mode uses the global argmin, hierarchical mode the
// first-rise stopping scan.
ReplicationRecord run_one(const ExperimentSpec& spec, Eigen::Index n,
                          std::uint64_t rep_seed,
                          const std::vector<CandidateModel>& candidates) {
  DgpSpec d = spec.dgp;
  d.n = n;
  d.seed = rep_seed;
  if (d.scenario == Scenario::LagChain)
    d.design_cols = static_cast<int>(candidates.size());
  const Dataset data = make_dataset(d);

  const FitConfig base = base_config_for(spec, rep_seed, data.p());
  const int m = static_cast<int>(candidates.size());

  ReplicationRecord rec;
  rec.theta.resize(m);
  rec.boundary.assign(m, 0);
  rec.failed.assign(m, 0);

  std::vector<CriterionReport> reports;
  reports.reserve(m);
  for (int i = 0; i < m; ++i) {
    const int id = i + 1;
    FitConfig cfg = base;
    if (cfg.init.kind == FitInit::Kind::UniformAround) {
      Vector center(candidates[i].dim());
      for (int k = 0; k < candidates[i].dim(); ++k)
        center[k] = cfg.init.value[candidates[i].columns[k]];
      cfg.init.value = center;
      cfg.init.seed = mix_seed(base.init.seed, static_cast<std::uint64_t>(id));
    }
    try {
      const FitResult fit = fit_qmle(data, candidates[i], cfg);
      reports.push_back(make_report(id, fit, data.n()));
      rec.theta[i] = fit.theta_hat;
      rec.boundary[i] = fit.boundary_hit ? 1 : 0;
      if (reports.back().excluded) rec.failed[i] = 1;
    } catch (const Error& e) {
      CriterionReport r;
      r.model_id = id;
      r.p_m = candidates[i].dim();
      r.excluded = true;
      r.note = e.what();
      reports.push_back(r);
      rec.failed[i] = 1;
    }
  }

  for (Criterion c : kAllCriteria) {
    const int ci = static_cast<int>(c);
    if (spec.search.mode == SearchMode::ExhaustiveSubsets) {
      rec.winner[ci] = select_best(reports, c);
    } else {
      std::vector<double> values(m);
      bool any = false;
      for (int i = 0; i < m; ++i) {
        values[i] = reports[i].excluded ? std::numeric_limits<double>::infinity()
                                        : reports[i].value(c);
        any = any || !reports[i].excluded;
      }
      if (!any) throw NoValidCandidate("forward scan: every candidate excluded");
      rec.winner[ci] = forward_stop_index(values) + 1;
    }
  }
  return rec;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const int threads = spec.threads > 0
                          ? spec.threads
                          : std::max(1u, std::thread::hardware_concurrency());

  ExperimentResult out;
  out.freq.n_list = spec.n_list;
  out.freq.replications = spec.replications;
  out.stats.n_list = spec.n_list;

  for (size_t ni = 0; ni < spec.n_list.size(); ++ni) {
    const Eigen::Index n = spec.n_list[ni];
    const int m = spec.n_models(n);
    std::vector<CandidateModel> candidates;
    if (spec.search.mode == SearchMode::ExhaustiveSubsets) {
      candidates = enumerate_candidates(4, SearchMode::ExhaustiveSubsets,
                                        spec.search.family);
    } else {
      candidates = enumerate_candidates(m, SearchMode::HierarchicalForward,
                                        spec.search.family, m);
    }

    const std::uint64_t n_seed = mix_seed(spec.master_seed, static_cast<std::uint64_t>(n));
    std::vector<ReplicationRecord> records(spec.replications);
    std::atomic<int> next{0};
    auto worker = [&]() {
      while (true) {
        const int r = next.fetch_add(1);
        if (r >= spec.replications) break;
        records[r] = run_one(spec, n, mix_seed(n_seed, static_cast<std::uint64_t>(r)),
                             candidates);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // deterministic aggregation in replication order
    for (Criterion c : kAllCriteria)
      out.freq.counts[static_cast<int>(c)].push_back(std::vector<long>(m, 0));
    std::vector<EstimatorStats::Cell> row(m);
    std::vector<Vector> sum(m), sumsq(m);
    for (int i = 0; i < m; ++i) {
      sum[i] = Vector::Zero(candidates[i].dim());
      sumsq[i] = Vector::Zero(candidates[i].dim());
    }
    for (const auto& rec : records) {
      for (Criterion c : kAllCriteria)
        ++out.freq.counts[static_cast<int>(c)][ni][rec.winner[static_cast<int>(c)] - 1];
      for (int i = 0; i < m; ++i) {
        if (rec.failed[i] || rec.theta[i].size() == 0) {
          ++row[i].failures;
          continue;
        }
        sum[i] += rec.theta[i];
        sumsq[i] += rec.theta[i].cwiseProduct(rec.theta[i]);
        ++row[i].count;
        if (rec.boundary[i]) ++row[i].boundary_hits;
      }
    }
    for (int i = 0; i < m; ++i) {
      const double cnt = static_cast<double>(std::max<long>(row[i].count, 1));
      row[i].mean = sum[i] / cnt;
      Vector var = sumsq[i] / cnt - row[i].mean.cwiseProduct(row[i].mean);
      row[i].sd = var.cwiseMax(0.0).cwiseSqrt();
    }
    out.stats.cells.push_back(std::move(row));
  }
  return out;
}

EstimatorStats::Cell estimator_summary(const ExperimentSpec& spec, int model_id,
                                       Eigen::Index n) {
  ExperimentSpec one = spec;
  one.n_list = {n};
  const ExperimentResult res = run_experiment(one);
  return res.stats.cell(0, model_id);
}

double rate_check(const ExperimentSpec& spec, int model_id) {
  spec.validate();
  if (spec.n_list.size() < 3 ||
      spec.n_list.back() < 4 * spec.n_list.front())
    throw Error("rate_check: n_list needs >= 3 entries spanning a factor of 4");

  Vector theta_ref;
  if (spec.theta_ref) {
    theta_ref = *spec.theta_ref;
  } else if (spec.dgp.scenario == Scenario::ProbitAR) {
    throw MissingReference("rate_check: misspecified scenario needs an explicit theta_ref");
  }

  const auto candidates =
      spec.search.mode == SearchMode::ExhaustiveSubsets
          ? enumerate_candidates(4, SearchMode::ExhaustiveSubsets, spec.search.family)
          : enumerate_candidates(spec.search.max_order, SearchMode::HierarchicalForward,
                                 spec.search.family, spec.search.max_order);
  if (model_id < 1 || model_id > static_cast<int>(candidates.size()))
    throw Error("rate_check: model_id out of range");
  const CandidateModel& model = candidates[model_id - 1];

  if (theta_ref.size() == 0) {
    theta_ref.resize(model.dim());
    for (int k = 0; k < model.dim(); ++k) {
      const int c = model.columns[k];
      theta_ref[k] = c < spec.dgp.theta_star.size() ? spec.dgp.theta_star[c] : 0.0;
    }
  }
  if (theta_ref.size() != model.dim())
    throw Error("rate_check: theta_ref dimension mismatch");

  std::vector<double> log_n, log_rmse;
  for (Eigen::Index n : spec.n_list) {
    const std::uint64_t n_seed = mix_seed(spec.master_seed, static_cast<std::uint64_t>(n));
    double sse = 0.0;
    long cnt = 0;
    for (int r = 0; r < spec.replications; ++r) {
      const std::uint64_t rep_seed = mix_seed(n_seed, static_cast<std::uint64_t>(r));
      DgpSpec d = spec.dgp;
      d.n = n;
      d.seed = rep_seed;
      if (d.scenario == Scenario::LagChain) d.design_cols = spec.search.max_order;
      const Dataset data = make_dataset(d);
      FitConfig cfg = base_config_for(spec, rep_seed, data.p());
      if (cfg.init.kind == FitInit::Kind::UniformAround) {
        Vector center(model.dim());
        for (int k = 0; k < model.dim(); ++k)
          center[k] = cfg.init.value[model.columns[k]];
        cfg.init.value = center;
        cfg.init.seed = mix_seed(cfg.init.seed, static_cast<std::uint64_t>(model_id));
      }
      try {
        const FitResult fit = fit_qmle(data, model, cfg);
        sse += (fit.theta_hat - theta_ref).squaredNorm();
        ++cnt;
      } catch (const Error&) {
        // failed fits are excluded from the RMSE
      }
    }
    if (cnt == 0) throw Error("rate_check: no successful fits at n=" + std::to_string(n));
    log_n.push_back(std::log(static_cast<double>(n)));
    log_rmse.push_back(0.5 * std::log(sse / static_cast<double>(cnt)));
  }

  const size_t k = log_n.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < k; ++i) {
    mx += log_n[i];
    my += log_rmse[i];
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < k; ++i) {
    sxy += (log_n[i] - mx) * (log_rmse[i] - my);
    sxx += (log_n[i] - mx) * (log_n[i] - mx);
  }
  return sxy / sxx;
}

void write_frequency_csv(const ExperimentResult& result, Scenario scenario,
                         const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  for (size_t ni = 0; ni < result.freq.n_list.size(); ++ni) {
    const auto path = fs::path(out_dir) / (scenario_to_string(scenario) + "_frequency_" +
                                           std::to_string(result.freq.n_list[ni]) + ".csv");
    std::ofstream f(path);
    f << "criterion,n,model,count\n";
    for (Criterion c : kAllCriteria) {
      const auto& row = result.freq.counts[static_cast<int>(c)][ni];
      for (size_t m = 0; m < row.size(); ++m)
        f << criterion_to_string(c) << ',' << result.freq.n_list[ni] << ',' << m + 1 << ','
          << row[m] << '\n';
    }
  }
}

void write_estimator_csv(const ExperimentResult& result, Scenario scenario,
                         const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  for (size_t ni = 0; ni < result.stats.n_list.size(); ++ni) {
    const auto path = fs::path(out_dir) / (scenario_to_string(scenario) + "_estimators_" +
                                           std::to_string(result.stats.n_list[ni]) + ".csv");
    std::ofstream f(path);
    f << "model,n,coordinate,mean,sd,boundary_hits,failures\n";
    const auto& row = result.stats.cells[ni];
    for (size_t m = 0; m < row.size(); ++m)
      for (Eigen::Index k = 0; k < row[m].mean.size(); ++k)
        f << m + 1 << ',' << result.stats.n_list[ni] << ',' << k + 1 << ','
          << row[m].mean[k] << ',' << row[m].sd[k] << ',' << row[m].boundary_hits << ','
          << row[m].failures << '\n';
  }
}

void write_summary_json(const ExperimentResult& result, const ExperimentSpec& spec,
                        const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  nlohmann::json j;
  j["scenario"] = scenario_to_string(spec.dgp.scenario);
  j["replications"] = spec.replications;
  j["master_seed"] = spec.master_seed;
  j["n_list"] = spec.n_list;
  for (Criterion c : kAllCriteria) {
    nlohmann::json freq;
    for (size_t ni = 0; ni < result.freq.n_list.size(); ++ni)
      freq[std::to_string(result.freq.n_list[ni])] =
          result.freq.counts[static_cast<int>(c)][ni];
    j["selection_counts"][criterion_to_string(c)] = freq;
  }
  std::ofstream f(fs::path(out_dir) /
                  (scenario_to_string(spec.dgp.scenario) + "_summary.json"));
  f << j.dump(2) << '\n';
}

}  // namespace qbic
