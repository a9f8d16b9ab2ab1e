#include "indist/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace indist {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, double step, double xtol,
                             double ftol, int max_iter) {
  const size_t n = start.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty start point");

  struct Vertex {
    std::vector<double> x;
    double value;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({start, f(start)});
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> x = start;
    x[i] += step;
    simplex.push_back({x, f(x)});
  }

  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.value < b.value; });
  };
  order();

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    // convergence: simplex diameter and value spread
    double diameter = 0.0;
    for (size_t i = 1; i <= n; ++i)
      for (size_t d = 0; d < n; ++d)
        diameter = std::max(diameter, std::abs(simplex[i].x[d] - simplex[0].x[d]));
    if (diameter < xtol && simplex[n].value - simplex[0].value < ftol) break;

    std::vector<double> centroid(n, 0.0);
    for (size_t i = 0; i < n; ++i)
      for (size_t d = 0; d < n; ++d) centroid[d] += simplex[i].x[d] / double(n);

    auto affine = [&](double t) {
      std::vector<double> x(n);
      for (size_t d = 0; d < n; ++d)
        x[d] = centroid[d] + t * (simplex[n].x[d] - centroid[d]);
      return x;
    };

    const auto reflected = affine(-1.0);
    const double fr = f(reflected);
    if (fr < simplex[0].value) {
      const auto expanded = affine(-2.0);
      const double fe = f(expanded);
      simplex[n] = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
    } else if (fr < simplex[n - 1].value) {
      simplex[n] = {reflected, fr};
    } else {
      const auto contracted = affine(fr < simplex[n].value ? -0.5 : 0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, simplex[n].value)) {
        simplex[n] = {contracted, fc};
      } else {  // shrink toward the best vertex
        for (size_t i = 1; i <= n; ++i) {
          for (size_t d = 0; d < n; ++d)
            simplex[i].x[d] = simplex[0].x[d] + 0.5 * (simplex[i].x[d] - simplex[0].x[d]);
          simplex[i].value = f(simplex[i].x);
        }
      }
    }
    order();
  }

  return {simplex[0].x, simplex[0].value, iter};
}

}  // namespace indist
