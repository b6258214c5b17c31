#pragma once

namespace orbidx {

struct Tolerances {
  double group = 1e-9;        // matrix identity, orthogonality, fixed points
  double newton = 1e-12;      // zero residual, boundary bisection
  double dedup = 1e-6;        // zero clustering and boundary proximity
  double degenerate = 1e-9;   // |det| and root-derivative floor
  double field = 1e-9;        // nonvanishing floor for |F|
  double equivariance = 1e-8;
  int equivariance_samples = 64;
  int max_order = 512;
  int boundary_samples = 1024;  // sign-scan samples per boundary piece
  int grid_density = 8;         // Newton seeds per unit length
};

}  // namespace orbidx
