#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace capret {

/// Uniform grid of `steps` points from min to max inclusive.
struct TauGrid {
  double min;
  double max;
  int steps;

  std::vector<double> points() const;
  double spacing() const { return (max - min) / (steps - 1); }
};

struct Optimum {
  double tau;             ///< refined maximizer
  double value;           ///< objective at tau
  std::size_t grid_index; ///< index of the best grid point (ties toward smaller tau)
  double grid_tau;        ///< grid point at grid_index
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                               double tolerance = 1e-10, int max_iterations = 200);

/// Coarse grid scan followed by golden-section refinement between the
/// neighbours of the best grid point. The refined point is kept only if it
/// does not lose to the grid point.
Optimum maximize_on_grid(const std::function<double(double)>& f, const TauGrid& grid);

}  // namespace capret
