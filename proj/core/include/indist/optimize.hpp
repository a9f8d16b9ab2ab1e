// Deterministic derivative-free minimization (Nelder-Mead) for the small
// angle-search problems in this library.
#pragma once

#include <functional>
#include <vector>

namespace indist {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Minimizes f starting from `start` with an axis-aligned initial simplex of
/// the given step. Runs until the simplex collapses below `xtol` and the
/// value spread falls below `ftol`, or `max_iter` iterations.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, double step = 0.25,
                             double xtol = 1e-10, double ftol = 1e-12,
                             int max_iter = 20000);

}  // namespace indist
