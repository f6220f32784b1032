#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qbic/errors.hpp"
#include "qbic/expfam.hpp"

namespace qbic {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Response vector and full covariate matrix with named columns.
struct Dataset {
  Vector y;                              // length n
  Matrix X;                              // n x p
  std::vector<std::string> column_names; // size p (may be empty -> x1..xp)

  Eigen::Index n() const { return y.size(); }
  Eigen::Index p() const { return X.cols(); }

  void validate() const;
};

// One working model: an ordered subset of covariate columns plus a family.
struct CandidateModel {
  std::vector<int> columns;  // 0-based indices into Dataset.X, distinct
  Family family = Family::BernoulliLogit;

  int dim() const { return static_cast<int>(columns.size()); }
  void validate(Eigen::Index p) const;

  // n x p_m design restricted to this model's columns.
  Matrix design(const Dataset& data) const;
};

}  // namespace qbic
