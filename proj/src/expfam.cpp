#include "qbic/expfam.hpp"

#include <cmath>

#include "qbic/errors.hpp"

namespace qbic {

Family family_from_string(const std::string& name) {
  if (name == "gaussian") return Family::Gaussian;
  if (name == "logit") return Family::BernoulliLogit;
  if (name == "poisson") return Family::Poisson;
  throw Error("unknown family '" + name + "' (expected gaussian|logit|poisson)");
}

std::string family_to_string(Family f) {
  switch (f) {
    case Family::Gaussian: return "gaussian";
    case Family::BernoulliLogit: return "logit";
    case Family::Poisson: return "poisson";
  }
  return "?";
}

double sigmoid(double eta) {
  if (eta >= 0.0) {
    return 1.0 / (1.0 + std::exp(-eta));
  }
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

double cumulant(Family f, double eta) {
  if (!std::isfinite(eta)) throw Error("cumulant: eta must be finite");
  switch (f) {
    case Family::Gaussian:
      return 0.5 * eta * eta;
    case Family::BernoulliLogit:
      // log(1+e^eta) = max(eta,0) + log1p(exp(-|eta|))
      return std::max(eta, 0.0) + std::log1p(std::exp(-std::fabs(eta)));
    case Family::Poisson:
      return std::exp(eta);
  }
  throw Error("cumulant: bad family");
}

double cumulant_deriv(Family f, double eta, int order) {
  if (!std::isfinite(eta)) throw Error("cumulant_deriv: eta must be finite");
  if (order < 1 || order > 3) throw Error("cumulant_deriv: order must be 1, 2, or 3");
  switch (f) {
    case Family::Gaussian:
      if (order == 1) return eta;
      if (order == 2) return 1.0;
      return 0.0;
    case Family::BernoulliLogit: {
      const double mu = sigmoid(eta);
      if (order == 1) return mu;
      if (order == 2) return mu * (1.0 - mu);
      return mu * (1.0 - mu) * (1.0 - 2.0 * mu);
    }
    case Family::Poisson:
      return std::exp(eta);
  }
  throw Error("cumulant_deriv: bad family");
}

}  // namespace qbic
