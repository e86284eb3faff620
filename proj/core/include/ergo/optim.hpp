#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ergo/matrix.hpp"

namespace ergo {

struct NelderMeadOptions {
  double tol = 1e-9;      // spread |f_worst - f_best| at convergence
  int max_iter = 0;       // 0 -> 200 + 80 * n
  double step = 0.35;     // initial simplex edge
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts = {});

// Unitary from d(d-1) angles: ordered product of complex Givens rotations over
// the planes (i, j), i < j, two angles (theta, phi) per plane. Diagonal phases
// are irrelevant for projector sets, so this covers every local basis choice.
std::size_t basis_angle_count(std::size_t d);
ComplexMatrix unitary_from_angles(std::size_t d, const double* angles);

// scalar golden-section minimizer on [lo, hi]
double golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                       double tol = 1e-10);

}  // namespace ergo
