#include "qbic/criteria.hpp"

#include <cmath>

namespace qbic {

Criterion criterion_from_string(const std::string& name) {
  if (name == "qbic" || name == "QBIC") return Criterion::QBIC;
  if (name == "bic" || name == "BIC") return Criterion::BIC;
  if (name == "faic" || name == "fAIC") return Criterion::fAIC;
  throw Error("unknown criterion '" + name + "' (expected qbic|bic|faic)");
}

std::string criterion_to_string(Criterion c) {
  switch (c) {
    case Criterion::QBIC: return "QBIC";
    case Criterion::BIC: return "BIC";
    case Criterion::fAIC: return "fAIC";
  }
  return "?";
}

double CriterionReport::value(Criterion c) const {
  switch (c) {
    case Criterion::QBIC: return qbic;
    case Criterion::BIC: return bic;
    case Criterion::fAIC: return faic;
  }
  return 0.0;
}

double qbic_value(const FitResult& fit) {
  return -2.0 * fit.loglik + logdet_psd(fit.info_hat);
}

double bic_value(const FitResult& fit, Eigen::Index n) {
  if (n < 1) throw Error("bic: n must be >= 1");
  return -2.0 * fit.loglik +
         static_cast<double>(fit.theta_hat.size()) * std::log(static_cast<double>(n));
}

double faic_value(const FitResult& fit) {
  return -2.0 * fit.loglik + 2.0 * static_cast<double>(fit.theta_hat.size());
}

CriterionReport make_report(int model_id, const FitResult& fit, Eigen::Index n) {
  CriterionReport r;
  r.model_id = model_id;
  r.p_m = static_cast<int>(fit.theta_hat.size());
  r.loglik = fit.loglik;
  r.boundary_hit = fit.boundary_hit;
  try {
    r.logdet_penalty = logdet_psd(fit.info_hat);
  } catch (const SingularInformation& e) {
    r.excluded = true;
    r.note = e.what();
    return r;
  }
  r.qbic = -2.0 * r.loglik + r.logdet_penalty;
  r.bic = bic_value(fit, n);
  r.faic = faic_value(fit);
  return r;
}

int select_best(const std::vector<CriterionReport>& reports, Criterion criterion) {
  if (reports.empty()) throw Error("select_best: empty report list");
  const CriterionReport* best = nullptr;
  for (const auto& r : reports) {
    if (r.excluded) continue;
    if (!best || r.value(criterion) < best->value(criterion) ||
        (r.value(criterion) == best->value(criterion) &&
         (r.model_id < best->model_id ||
          (r.model_id == best->model_id && r.p_m < best->p_m)))) {
      best = &r;
    }
  }
  if (!best) throw NoValidCandidate("select_best: all candidates excluded");
  return best->model_id;
}

}  // namespace qbic
