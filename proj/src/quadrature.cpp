#include "capret/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "capret/errors.hpp"

namespace capret {

std::vector<Piece> partition(double lo, double hi, std::span<const double> breaks, int intervals) {
  if (!(hi >= lo)) {
    throw ArgumentError("integration range is reversed");
  }
  if (intervals < 2) {
    throw ArgumentError("quadrature needs at least two intervals");
  }
  std::vector<double> edges{lo};
  for (double b : breaks) {
    if (b > lo && b < hi) {
      edges.push_back(b);
    }
  }
  edges.push_back(hi);
  std::sort(edges.begin() + 1, edges.end() - 1);
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<Piece> pieces;
  const double span = hi - lo;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double len = edges[i + 1] - edges[i];
    int n = span > 0.0 ? static_cast<int>(std::ceil(intervals * len / span)) : 2;
    n = std::max(2, n + (n % 2));
    pieces.push_back({edges[i], edges[i + 1], n});
  }
  if (pieces.empty()) {
    pieces.push_back({lo, hi, 2});
  }
  return pieces;
}

}  // namespace capret
