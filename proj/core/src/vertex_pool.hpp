#pragma once

#include "gmtkit/geom.hpp"

#include <array>
#include <cmath>
#include <map>
#include <vector>

namespace gmt::detail {

// Merges points within `tol` of an existing point (tol 0: exact matches). Lookup order is
// deterministic: the earliest inserted point within tolerance wins.
class VertexPool {
 public:
  explicit VertexPool(double tol) : tol_(tol), cell_(tol > 0 ? tol * 4 : 1.0) {}

  VertexId insert(const Point& p) {
    const Key k = key(p);
    VertexId best = -1;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          auto it = grid_.find({k[0] + dx, k[1] + dy, k[2] + dz});
          if (it == grid_.end()) continue;
          for (VertexId id : it->second)
            if ((points_[id] - p).norm() <= tol_ && (best < 0 || id < best)) best = id;
        }
    if (best >= 0) return best;
    const auto id = static_cast<VertexId>(points_.size());
    points_.push_back(p);
    grid_[k].push_back(id);
    return id;
  }

  const std::vector<Point>& points() const { return points_; }

 private:
  using Key = std::array<long long, 3>;
  Key key(const Point& p) const {
    return {static_cast<long long>(std::floor(p[0] / cell_)),
            static_cast<long long>(std::floor(p[1] / cell_)),
            static_cast<long long>(std::floor(p[2] / cell_))};
  }

  double tol_;
  double cell_;
  std::vector<Point> points_;
  std::map<Key, std::vector<VertexId>> grid_;
};

}  // namespace gmt::detail
