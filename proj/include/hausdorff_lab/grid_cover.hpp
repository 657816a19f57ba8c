#pragma once

// Origin-anchored grid covers of point clouds.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "hausdorff_lab/core_sets.hpp"

namespace hausdorff_lab {

/// Points within this many cell widths of a cell face are treated as lying on
/// the face.
inline constexpr double kFaceSnap = 1e-9;

/// Number of closed grid cells [k*eps, (k+1)*eps]^d needed to cover the cloud.
///
/// A point strictly inside a cell forces that cell. A point on a face lies in
/// several closed cells; it reuses an already occupied one when possible and
/// otherwise takes the cell on the upper side of each face. Face points are
/// processed in lexicographic order, which makes the count the minimum closed
/// cover in dimension 1 (Cantor endpoints at triadic scales give exactly 2^k).
inline std::size_t occupied_cell_count(const PointCloud& cloud, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be positive");
  const std::size_t d = cloud.dim();
  using Cell = std::vector<std::int64_t>;
  std::set<Cell> occupied;
  struct FacePoint {
    Cell cell;
    std::uint32_t faces;
  };
  std::vector<FacePoint> on_faces;

  Cell cell(d);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    std::uint32_t faces = 0;
    for (std::size_t k = 0; k < d; ++k) {
      const double u = p[k] / eps;
      const double r = std::round(u);
      if (std::abs(u - r) <= kFaceSnap * std::max(1.0, std::abs(u))) {
        cell[k] = static_cast<std::int64_t>(r);
        if (k < 32) faces |= std::uint32_t{1} << k;
      } else {
        cell[k] = static_cast<std::int64_t>(std::floor(u));
      }
    }
    if (faces == 0) {
      occupied.insert(cell);
    } else {
      on_faces.push_back({cell, faces});
    }
  }

  std::sort(on_faces.begin(), on_faces.end(),
            [](const FacePoint& a, const FacePoint& b) { return a.cell < b.cell; });
  for (const auto& fp : on_faces) {
    bool covered = false;
    // Enumerate the 2^f candidate cells: for each face coordinate, the cell
    // above (index r) or below (index r - 1).
    for (std::uint32_t sub = fp.faces;; sub = (sub - 1) & fp.faces) {
      Cell c = fp.cell;
      for (std::size_t k = 0; k < d && k < 32; ++k) {
        if (sub & (std::uint32_t{1} << k)) --c[k];
      }
      if (occupied.count(c)) {
        covered = true;
        break;
      }
      if (sub == 0) break;
    }
    if (!covered) occupied.insert(fp.cell);
  }
  return occupied.size();
}

}  // namespace hausdorff_lab
