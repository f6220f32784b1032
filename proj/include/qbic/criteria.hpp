#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbic/glm.hpp"

namespace qbic {

enum class Criterion { QBIC, BIC, fAIC };

Criterion criterion_from_string(const std::string& name);
std::string criterion_to_string(Criterion c);

// Criterion values for one candidate. `excluded` marks candidates whose
// information matrix was singular; their criterion fields are unset.
struct CriterionReport {
  int model_id = 0;     // 1-based id within the enumeration
  int p_m = 0;
  double loglik = 0.0;
  double qbic = 0.0;
  double bic = 0.0;
  double faic = 0.0;
  double logdet_penalty = 0.0;
  bool boundary_hit = false;
  bool excluded = false;
  std::string note;  // reason when excluded

  double value(Criterion c) const;
};

double qbic_value(const FitResult& fit);                  // -2 H + log det(info_hat)
double bic_value(const FitResult& fit, Eigen::Index n);   // -2 H + p_m log n
double faic_value(const FitResult& fit);                  // -2 H + 2 p_m

// All three criteria for one fitted candidate.
CriterionReport make_report(int model_id, const FitResult& fit, Eigen::Index n);

// model_id of the minimum-criterion report; ties broken by smallest model_id,
// then smallest p_m. Excluded reports are skipped; boundary fits are kept.
int select_best(const std::vector<CriterionReport>& reports, Criterion criterion);

}  // namespace qbic
