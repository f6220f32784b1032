#pragma once

#include <string>

namespace qbic {

// Canonical-link exponential families available as working models.
enum class Family { Gaussian, BernoulliLogit, Poisson };

Family family_from_string(const std::string& name);
std::string family_to_string(Family f);

// Cumulant function b(eta) of the working model.
//   Gaussian:       eta^2 / 2
//   BernoulliLogit: log(1 + e^eta), evaluated overflow-safe
//   Poisson:        e^eta
double cumulant(Family f, double eta);

// order-th derivative of b at eta, order in {1,2,3}.
double cumulant_deriv(Family f, double eta, int order);

// Logistic function, overflow-safe; equals cumulant_deriv(BernoulliLogit, eta, 1).
double sigmoid(double eta);

}  // namespace qbic
