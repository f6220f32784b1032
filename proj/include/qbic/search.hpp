#pragma once

#include <utility>

#include "qbic/criteria.hpp"

namespace qbic {

enum class SearchMode { ExhaustiveSubsets, HierarchicalForward };

struct SearchSpec {
  SearchMode mode = SearchMode::ExhaustiveSubsets;
  Criterion criterion = Criterion::QBIC;
  FitConfig fit_config;
  int max_order = 12;          // hierarchical only
  Family family = Family::BernoulliLogit;
};

struct SelectionResult {
  int winner = 0;  // 1-based model id
  std::vector<CriterionReport> reports;
  std::vector<FitResult> fits;  // aligned with reports (empty entry when excluded)
};

// ExhaustiveSubsets: all 2^p - 1 nonempty subsets, decreasing size then
// lexicographic (p=4 reproduces the Model 1..15 numbering). Guarded at p > 20.
// HierarchicalForward: nested prefixes {1}, {1,2}, ... up to max_order.
std::vector<CandidateModel> enumerate_candidates(int p, SearchMode mode, Family family,
                                                 int max_order = 12);

// index (0-based) at which a forward search over the value sequence stops:
// first k with value[k] < value[k+1]; last index if the sequence keeps falling.
int forward_stop_index(const std::vector<double>& values);

SelectionResult select_exhaustive(const Dataset& data, const SearchSpec& spec);
SelectionResult select_forward(const Dataset& data, const SearchSpec& spec);

}  // namespace qbic
