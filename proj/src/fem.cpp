#include "mbas/fem.hpp"

#include <vector>

namespace mbas {

namespace {

// Exact Q1 element matrices for a square cell of side h, vertices ordered
// counterclockwise from the lower-left corner.
constexpr double kMassElem[4][4] = {
    {4, 2, 1, 2}, {2, 4, 2, 1}, {1, 2, 4, 2}, {2, 1, 2, 4}};  // times h^2/36
constexpr double kStiffElem[4][4] = {
    {4, -1, -2, -1}, {-1, 4, -1, -2}, {-2, -1, 4, -1}, {-1, -2, -1, 4}};  // times 1/6

SpMat assemble(const Grid& grid, const double elem[4][4], double scale) {
  const int n = grid.cells_per_side();
  const Index stride = grid.interior_per_side();
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(grid.node_count()) * 9);

  for (int ey = 0; ey < n; ++ey) {
    for (int ex = 0; ex < n; ++ex) {
      // Counterclockwise corner coordinates of cell (ex, ey).
      const int gx[4] = {ex, ex + 1, ex + 1, ex};
      const int gy[4] = {ey, ey, ey + 1, ey + 1};
      Index dof[4];
      for (int a = 0; a < 4; ++a) {
        const bool interior = gx[a] > 0 && gx[a] < n && gy[a] > 0 && gy[a] < n;
        dof[a] = interior ? (gy[a] - 1) * stride + (gx[a] - 1) : -1;
      }
      for (int a = 0; a < 4; ++a) {
        if (dof[a] < 0) continue;
        for (int b = 0; b < 4; ++b) {
          if (dof[b] < 0) continue;
          trips.emplace_back(dof[a], dof[b], scale * elem[a][b]);
        }
      }
    }
  }

  SpMat A(grid.node_count(), grid.node_count());
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  return A;
}

}  // namespace

SpMat assemble_mass(const Grid& grid) {
  const double h = grid.h();
  return assemble(grid, kMassElem, h * h / 36.0);
}

SpMat assemble_stiffness(const Grid& grid) {
  return assemble(grid, kStiffElem, 1.0 / 6.0);
}

Vec assemble_target(const Grid& grid) {
  const int n = grid.cells_per_side();
  const double h = grid.h();
  const Index stride = grid.interior_per_side();
  Vec y = Vec::Zero(grid.node_count());
  for (int iy = 1; iy < n; ++iy) {
    for (int ix = 1; ix < n; ++ix) {
      const double x = ix * h;
      const double yy = iy * h;
      if (x < 0.5 && yy < 0.5) {
        const double fx = 2 * x - 1;
        const double fy = 2 * yy - 1;
        y[(iy - 1) * stride + (ix - 1)] = fx * fx * fy * fy;
      }
    }
  }
  return y;
}

}  // namespace mbas
