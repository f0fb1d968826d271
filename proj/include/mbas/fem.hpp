// Q1 finite-element assembly on the uniform unit-square mesh.
//
// Interior nodes are ordered lexicographically by (row, column) of the grid
// points, i.e. index = (iy-1)*(n-1) + (ix-1) for the node at (ix*h, iy*h).
// Element matrices come from exact integration of the bilinear basis, so the
// assembled matrices are exact up to floating-point summation.

#pragma once

#include "mbas/types.hpp"

namespace mbas {

// Consistent mass matrix, SPD, <= 9 nonzeros per row. Fully interior rows
// sum to h^2 (partition of unity).
SpMat assemble_mass(const Grid& grid);

// Stiffness matrix of the Dirichlet Laplacian, SPD; entries are independent
// of h in 2D.
SpMat assemble_stiffness(const Grid& grid);

// Nodal interpolation of the target state
//   (2x-1)^2 (2y-1)^2 on (0,1/2)x(0,1/2), 0 elsewhere.
Vec assemble_target(const Grid& grid);

}  // namespace mbas
