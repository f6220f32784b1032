#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbic/harness.hpp"
#include "qbic/io.hpp"
#include "qbic/oracle.hpp"

namespace py = pybind11;
using namespace qbic;

namespace {

Dataset make_dataset_py(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                        const std::vector<std::string>& names) {
  Dataset d;
  d.y = y;
  d.X = X;
  d.column_names = names;
  d.validate();
  return d;
}

CandidateModel make_model(const std::vector<int>& columns, const std::string& family) {
  CandidateModel m;
  m.columns = columns;
  m.family = family_from_string(family);
  return m;
}

}  // namespace

PYBIND11_MODULE(_qbic, m) {
  m.doc() = "QMLE fitting and QBIC/BIC/fAIC model selection for GLMs on dependent data";

  py::register_exception<SingularInformation>(m, "SingularInformation");
  py::register_exception<NoValidCandidate>(m, "NoValidCandidate");
  py::register_exception<UnsupportedDimension>(m, "UnsupportedDimension");

  py::class_<Dataset>(m, "Dataset")
      .def(py::init(&make_dataset_py), py::arg("y"), py::arg("X"),
           py::arg("column_names") = std::vector<std::string>{})
      .def_readonly("y", &Dataset::y)
      .def_readonly("X", &Dataset::X)
      .def_readonly("column_names", &Dataset::column_names);

  py::class_<CandidateModel>(m, "CandidateModel")
      .def(py::init(&make_model), py::arg("columns"), py::arg("family") = "logit")
      .def_readonly("columns", &CandidateModel::columns)
      .def_property_readonly("family", [](const CandidateModel& c) {
        return family_to_string(c.family);
      });

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("theta_hat", &FitResult::theta_hat)
      .def_readonly("loglik", &FitResult::loglik)
      .def_readonly("score_norm", &FitResult::score_norm)
      .def_readonly("info_hat", &FitResult::info_hat)
      .def_readonly("iterations", &FitResult::iterations)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("boundary_hit", &FitResult::boundary_hit);

  py::class_<CriterionReport>(m, "CriterionReport")
      .def_readonly("model_id", &CriterionReport::model_id)
      .def_readonly("p_m", &CriterionReport::p_m)
      .def_readonly("loglik", &CriterionReport::loglik)
      .def_readonly("qbic", &CriterionReport::qbic)
      .def_readonly("bic", &CriterionReport::bic)
      .def_readonly("faic", &CriterionReport::faic)
      .def_readonly("logdet_penalty", &CriterionReport::logdet_penalty)
      .def_readonly("boundary_hit", &CriterionReport::boundary_hit)
      .def_readonly("excluded", &CriterionReport::excluded);

  m.def("cumulant", [](const std::string& f, double eta) {
    return cumulant(family_from_string(f), eta);
  });
  m.def("cumulant_deriv", [](const std::string& f, double eta, int order) {
    return cumulant_deriv(family_from_string(f), eta, order);
  });

  m.def("quasi_loglik", &quasi_loglik);
  m.def("quasi_score", &quasi_score);
  m.def("observed_information", &observed_information);
  m.def(
      "fit_qmle",
      [](const Dataset& data, const CandidateModel& model, int max_iter,
         double theta_bound) {
        FitConfig cfg;
        cfg.max_iter = max_iter;
        cfg.theta_bound = theta_bound;
        return fit_qmle(data, model, cfg);
      },
      py::arg("data"), py::arg("model"), py::arg("max_iter") = 100,
      py::arg("theta_bound") = 50.0);
  m.def("robust_covariance", &robust_covariance, py::arg("data"), py::arg("model"),
        py::arg("fit"), py::arg("bandwidth") = 0);

  m.def("qbic", &qbic_value);
  m.def("bic", &bic_value);
  m.def("faic", &faic_value);

  m.def(
      "enumerate_candidates",
      [](int p, const std::string& mode, const std::string& family, int max_order) {
        const SearchMode sm = mode == "exhaustive" ? SearchMode::ExhaustiveSubsets
                                                   : SearchMode::HierarchicalForward;
        auto models = enumerate_candidates(p, sm, family_from_string(family), max_order);
        std::vector<std::vector<int>> out;
        for (const auto& m2 : models) out.push_back(m2.columns);
        return out;
      },
      py::arg("p"), py::arg("mode") = "exhaustive", py::arg("family") = "logit",
      py::arg("max_order") = 12);

  m.def(
      "select_exhaustive",
      [](const Dataset& data, const std::string& family, const std::string& criterion) {
        SearchSpec spec;
        spec.mode = SearchMode::ExhaustiveSubsets;
        spec.family = family_from_string(family);
        spec.criterion = criterion_from_string(criterion);
        const SelectionResult res = select_exhaustive(data, spec);
        return py::make_tuple(res.winner, res.reports);
      },
      py::arg("data"), py::arg("family") = "logit", py::arg("criterion") = "qbic");

  m.def(
      "select_forward",
      [](const Dataset& data, const std::string& family, const std::string& criterion,
         int max_order) {
        SearchSpec spec;
        spec.mode = SearchMode::HierarchicalForward;
        spec.family = family_from_string(family);
        spec.criterion = criterion_from_string(criterion);
        spec.max_order = max_order;
        const SelectionResult res = select_forward(data, spec);
        return py::make_tuple(res.winner, res.reports);
      },
      py::arg("data"), py::arg("family") = "logit", py::arg("criterion") = "qbic",
      py::arg("max_order") = 12);

  m.def(
      "laplace_expansion",
      [](const FitResult& fit, double box_half_width) {
        return laplace_expansion(fit, Prior::uniform_box(box_half_width));
      },
      py::arg("fit"), py::arg("box_half_width") = 50.0);

  m.def(
      "log_marginal_quadrature",
      [](const Dataset& data, const CandidateModel& model, double box_half_width,
         int points_per_dim, double radius_in_se) {
        QuadratureSpec spec;
        spec.points_per_dim = points_per_dim;
        spec.radius_in_se = radius_in_se;
        return log_marginal_quadrature(data, model, Prior::uniform_box(box_half_width),
                                       spec);
      },
      py::arg("data"), py::arg("model"), py::arg("box_half_width") = 50.0,
      py::arg("points_per_dim") = 48, py::arg("radius_in_se") = 8.0);

  m.def(
      "make_dataset",
      [](const std::string& scenario, Eigen::Index n, const Eigen::VectorXd& theta_star,
         std::uint64_t seed, int lag_p, int design_cols) {
        DgpSpec spec;
        spec.scenario = scenario_from_string(scenario);
        spec.n = n;
        spec.theta_star = theta_star;
        spec.seed = seed;
        spec.lag_p = lag_p;
        spec.design_cols = design_cols;
        return make_dataset(spec);
      },
      py::arg("scenario"), py::arg("n"), py::arg("theta_star"), py::arg("seed") = 0,
      py::arg("lag_p") = 4, py::arg("design_cols") = 0);
}
