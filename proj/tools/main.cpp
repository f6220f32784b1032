#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qbic/harness.hpp"
#include "qbic/io.hpp"
#include "qbic/oracle.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

// exit codes: 0 success, 2 I/O error, 3 selection impossible,
// 4 unsupported request, 5 numerical failure
constexpr int kExitIo = 2;
constexpr int kExitNoCandidate = 3;
constexpr int kExitUnsupported = 4;
constexpr int kExitNumerical = 5;

std::string default_out_dir() {
  if (const char* env = std::getenv("QBIC_OUT_DIR")) return env;
  return ".";
}

std::vector<int> parse_columns(const std::string& s, int p) {
  std::vector<int> out;
  if (s.empty()) {
    for (int i = 0; i < p; ++i) out.push_back(i);
    return out;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok) - 1);
  return out;
}

std::vector<std::string> parse_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

qbic::Dataset dataset_from_table(const qbic::RawTable& table, const std::string& ycol) {
  qbic::Dataset data;
  const auto& y = table.column(ycol);
  data.y = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
  std::vector<int> xcols;
  for (size_t c = 0; c < table.names.size(); ++c)
    if (table.names[c] != ycol) xcols.push_back(static_cast<int>(c));
  data.X.resize(y.size(), xcols.size());
  for (size_t k = 0; k < xcols.size(); ++k) {
    data.column_names.push_back(table.names[xcols[k]]);
    for (size_t r = 0; r < y.size(); ++r) data.X(r, k) = table.columns[xcols[k]][r];
  }
  data.validate();
  return data;
}

json report_to_json(const qbic::CriterionReport& r) {
  json j;
  j["model_id"] = r.model_id;
  j["p_m"] = r.p_m;
  j["loglik"] = r.loglik;
  if (r.excluded) {
    j["excluded"] = true;
    j["note"] = r.note;
  } else {
    j["qbic"] = r.qbic;
    j["bic"] = r.bic;
    j["faic"] = r.faic;
    j["logdet_penalty"] = r.logdet_penalty;
  }
  j["boundary_hit"] = r.boundary_hit;
  return j;
}

int cmd_fit(const std::string& csv, const std::string& family, const std::string& ycol,
            const std::string& columns, double theta_bound, int max_iter) {
  qbic::RawTable table = qbic::load_csv(csv, {ycol});
  qbic::Dataset data = dataset_from_table(table, ycol);
  qbic::CandidateModel model;
  model.family = qbic::family_from_string(family);
  model.columns = parse_columns(columns, static_cast<int>(data.p()));
  qbic::FitConfig cfg;
  cfg.theta_bound = theta_bound;
  cfg.max_iter = max_iter;
  const qbic::FitResult fit = qbic::fit_qmle(data, model, cfg);

  json j;
  j["theta_hat"] = std::vector<double>(fit.theta_hat.data(),
                                       fit.theta_hat.data() + fit.theta_hat.size());
  j["loglik"] = fit.loglik;
  j["score_norm"] = fit.score_norm;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  j["boundary_hit"] = fit.boundary_hit;
  std::cout << j.dump(2) << '\n';

  std::cerr << std::setprecision(6) << "coef";
  for (int k = 0; k < model.dim(); ++k)
    std::cerr << "  " << data.column_names[model.columns[k]] << "="
              << fit.theta_hat[k];
  std::cerr << "\nloglik=" << fit.loglik << " iterations=" << fit.iterations
            << (fit.converged ? " converged" : " NOT converged") << '\n';
  if (!fit.converged) {
    std::cerr << "fit did not converge (score_norm=" << fit.score_norm
              << (fit.boundary_hit ? ", boundary hit" : "") << ")\n";
    return kExitNumerical;
  }
  return 0;
}

int cmd_select(const std::string& csv, const std::string& family, const std::string& ycol,
               const std::string& criterion, const std::string& out_dir,
               const std::string& seasonal_col, int seasonal_lag,
               const std::string& predictor_list, int predictor_lag, bool do_normalize) {
  qbic::RawTable table = qbic::load_csv(csv);
  qbic::Dataset data;
  if (!seasonal_col.empty()) {
    // real-data style pipeline: indicator response + normalized lagged predictors
    std::vector<std::string> predictors = parse_names(predictor_list);
    if (predictors.empty())
      for (const auto& n : table.names)
        if (n != seasonal_col) predictors.push_back(n);
    if (do_normalize) table = qbic::normalize(table, predictors);
    const auto response = qbic::seasonal_indicator(table.column(seasonal_col), seasonal_lag);
    data = qbic::build_lagged_design(table, response, predictors, predictor_lag);
  } else {
    data = dataset_from_table(table, ycol);
  }

  qbic::SearchSpec spec;
  spec.mode = qbic::SearchMode::ExhaustiveSubsets;
  spec.criterion = qbic::criterion_from_string(criterion);
  spec.family = qbic::family_from_string(family);
  const qbic::SelectionResult res = qbic::select_exhaustive(data, spec);

  fs::create_directories(out_dir);
  std::ofstream csv_out(fs::path(out_dir) / "selection.csv");
  csv_out << "model_id,p_m,loglik,qbic,bic,faic,logdet_penalty,boundary_hit,excluded\n"
          << std::setprecision(12);
  json jreports = json::array();
  for (const auto& r : res.reports) {
    csv_out << r.model_id << ',' << r.p_m << ',' << r.loglik << ',' << r.qbic << ','
            << r.bic << ',' << r.faic << ',' << r.logdet_penalty << ','
            << (r.boundary_hit ? 1 : 0) << ',' << (r.excluded ? 1 : 0) << '\n';
    jreports.push_back(report_to_json(r));
  }
  json j;
  j["criterion"] = criterion;
  j["winner"] = res.winner;
  j["reports"] = jreports;
  std::ofstream(fs::path(out_dir) / "selection.json") << j.dump(2) << '\n';

  // ranked human-readable table
  auto ranked = res.reports;
  const qbic::Criterion crit = spec.criterion;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](const auto& a, const auto& b) {
                     if (a.excluded != b.excluded) return !a.excluded;
                     return a.value(crit) < b.value(crit);
                   });
  std::cout << std::setw(6) << "model" << std::setw(5) << "p" << std::setw(14) << "QBIC"
            << std::setw(14) << "BIC" << std::setw(14) << "fAIC" << '\n'
            << std::setprecision(4) << std::fixed;
  for (const auto& r : ranked) {
    if (r.excluded) {
      std::cout << std::setw(6) << r.model_id << std::setw(5) << r.p_m
                << "   excluded: " << r.note << '\n';
      continue;
    }
    std::cout << std::setw(6) << r.model_id << std::setw(5) << r.p_m << std::setw(14)
              << r.qbic << std::setw(14) << r.bic << std::setw(14) << r.faic
              << (r.model_id == res.winner ? "  *" : "") << '\n';
  }
  return 0;
}

qbic::Vector paper_theta(qbic::Scenario s) {
  if (s == qbic::Scenario::LagChain) {
    qbic::Vector t(4);
    t << 3, -1, 2, 1;
    return t;
  }
  qbic::Vector t(4);
  t << 0, -3, 0, 1;
  return t;
}

int cmd_simulate(const std::string& scenario, Eigen::Index n, int reps,
                 std::uint64_t seed, const std::string& out_dir, int threads) {
  qbic::ExperimentSpec spec;
  spec.dgp.scenario = qbic::scenario_from_string(scenario);
  spec.dgp.theta_star = paper_theta(spec.dgp.scenario);
  spec.dgp.lag_p = 4;
  spec.replications = reps;
  spec.master_seed = seed;
  spec.threads = threads;
  spec.n_list = {n};
  spec.search.mode = spec.dgp.scenario == qbic::Scenario::LagChain
                         ? qbic::SearchMode::HierarchicalForward
                         : qbic::SearchMode::ExhaustiveSubsets;
  spec.search.max_order = std::min<int>(12, static_cast<int>(n) - 1);
  spec.search.family = qbic::Family::BernoulliLogit;

  const qbic::ExperimentResult result = qbic::run_experiment(spec);
  qbic::write_frequency_csv(result, spec.dgp.scenario, out_dir);
  qbic::write_estimator_csv(result, spec.dgp.scenario, out_dir);
  qbic::write_summary_json(result, spec, out_dir);

  std::cout << "scenario " << scenario << "  n=" << n << "  R=" << reps << '\n';
  for (qbic::Criterion c : qbic::kAllCriteria) {
    std::cout << std::setw(5) << qbic::criterion_to_string(c) << ":";
    const auto& row = result.freq.counts[static_cast<int>(c)][0];
    for (long v : row) std::cout << ' ' << v;
    std::cout << '\n';
  }
  return 0;
}

int cmd_oracle(const std::string& family, int p, Eigen::Index n, std::uint64_t seed,
               const std::string& prior_kind, double prior_width, int points,
               double radius) {
  if (p > 3) throw qbic::UnsupportedDimension("oracle supports p <= 3");
  const qbic::Family fam = qbic::family_from_string(family);

  // synthetic instance: intercept-free normal covariates, unit-ish effects
  qbic::Rng rng(seed);
  qbic::Dataset data;
  data.X.resize(n, p);
  for (Eigen::Index j = 0; j < n; ++j)
    for (int k = 0; k < p; ++k) data.X(j, k) = (k == 0 && p > 1) ? 1.0 : rng.normal();
  qbic::Vector theta_star(p);
  for (int k = 0; k < p; ++k) theta_star[k] = (k % 2 == 0) ? 1.0 : 0.5;
  data.y.resize(n);
  if (fam == qbic::Family::BernoulliLogit) {
    data.y = qbic::gen_response(data.X, theta_star, qbic::Link::Logit, rng);
  } else {
    const qbic::Vector eta = data.X * theta_star;
    for (Eigen::Index j = 0; j < n; ++j) data.y[j] = eta[j] + rng.normal();
  }

  qbic::CandidateModel model;
  model.family = fam;
  for (int k = 0; k < p; ++k) model.columns.push_back(k);

  qbic::Prior prior = prior_kind == "gaussian"
                          ? qbic::Prior::gaussian(qbic::Vector::Zero(p),
                                                  prior_width * qbic::Matrix::Identity(p, p))
                          : qbic::Prior::uniform_box(prior_width);
  qbic::QuadratureSpec qspec;
  qspec.points_per_dim = points;
  qspec.radius_in_se = radius;

  const qbic::FitResult fit = qbic::fit_qmle(data, model, {});
  const double quad = qbic::log_marginal_quadrature(data, model, prior, qspec);
  const double expansion = qbic::laplace_expansion(fit, prior);

  json j;
  j["quadrature"] = quad;
  j["expansion"] = expansion;
  j["gap"] = quad - expansion;
  j["n"] = n;
  j["p"] = p;
  j["seed"] = seed;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_gen(const std::string& scenario, Eigen::Index n, std::uint64_t seed,
            const std::string& out_path, int design_cols) {
  qbic::DgpSpec spec;
  spec.scenario = qbic::scenario_from_string(scenario);
  spec.theta_star = paper_theta(spec.scenario);
  spec.lag_p = 4;
  spec.design_cols = design_cols;
  spec.n = n;
  spec.seed = seed;
  qbic::write_dataset_csv(qbic::make_dataset(spec), out_path);
  std::cout << "wrote " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QMLE fitting and QBIC/BIC/fAIC model selection for GLMs on dependent data"};
  app.require_subcommand(1);

  std::string csv, family = "logit", ycol = "y", columns, criterion = "qbic";
  std::string out_dir = default_out_dir();
  std::string scenario = "paper1", prior_kind = "uniform", out_path = "dataset.csv";
  std::string seasonal_col, predictor_list;
  double theta_bound = 50.0, prior_width = 50.0, radius = 8.0;
  int max_iter = 100, reps = 10000, p = 1, points = 48, threads = 0;
  int seasonal_lag = 12, predictor_lag = 0, design_cols = 0;
  bool do_normalize = false;
  Eigen::Index n = 200;
  std::uint64_t seed = 1;

  auto* fit = app.add_subcommand("fit", "fit one candidate by QMLE");
  fit->add_option("--csv", csv)->required();
  fit->add_option("--family", family);
  fit->add_option("--response", ycol);
  fit->add_option("--columns", columns, "1-based covariate indices, comma separated");
  fit->add_option("--theta-bound", theta_bound);
  fit->add_option("--max-iter", max_iter);

  auto* select = app.add_subcommand("select", "score every covariate subset");
  select->add_option("--csv", csv)->required();
  select->add_option("--family", family);
  select->add_option("--response", ycol);
  select->add_option("--criterion", criterion);
  select->add_option("--out-dir", out_dir);
  select->add_option("--seasonal-response", seasonal_col,
                     "build the response as a seasonal-difference indicator of this column");
  select->add_option("--seasonal-lag", seasonal_lag);
  select->add_option("--predictors", predictor_list, "comma separated predictor columns");
  select->add_option("--predictor-lag", predictor_lag);
  select->add_flag("--normalize", do_normalize, "z-score the predictors first");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo selection frequencies");
  simulate->add_option("--scenario", scenario, "paper1|paper2|paper3");
  simulate->add_option("--n", n);
  simulate->add_option("--reps", reps);
  simulate->add_option("--seed", seed);
  simulate->add_option("--out-dir", out_dir);
  simulate->add_option("--threads", threads);

  auto* oracle = app.add_subcommand("oracle", "quadrature vs Laplace expansion gap");
  oracle->add_option("--family", family);
  oracle->add_option("--p", p);
  oracle->add_option("--n", n);
  oracle->add_option("--seed", seed);
  oracle->add_option("--prior", prior_kind, "uniform|gaussian");
  oracle->add_option("--prior-width", prior_width,
                     "box half-width, or variance for the gaussian prior");
  oracle->add_option("--points", points);
  oracle->add_option("--radius", radius);

  auto* gen = app.add_subcommand("gen", "export one synthetic dataset as CSV");
  gen->add_option("--scenario", scenario);
  gen->add_option("--n", n);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path);
  gen->add_option("--design-cols", design_cols);

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed())
      return cmd_fit(csv, family, ycol, columns, theta_bound, max_iter);
    if (select->parsed())
      return cmd_select(csv, family, ycol, criterion, out_dir, seasonal_col, seasonal_lag,
                        predictor_list, predictor_lag, do_normalize);
    if (simulate->parsed())
      return cmd_simulate(scenario, n, reps, seed, out_dir, threads);
    if (oracle->parsed())
      return cmd_oracle(family, p, n, seed, prior_kind, prior_width, points, radius);
    if (gen->parsed()) return cmd_gen(scenario, n, seed, out_path, design_cols);
  } catch (const qbic::NoValidCandidate& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoCandidate;
  } catch (const qbic::UnsupportedDimension& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const qbic::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const qbic::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const qbic::SingularInformation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const qbic::InitializationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const qbic::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const std::string msg = e.what();
    return msg.find("cannot open file") != std::string::npos ? kExitIo : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
