#include "ergo/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ergo {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  const int max_iter = opts.max_iter > 0 ? opts.max_iter : 200 + 80 * static_cast<int>(n);

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opts.step;
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];
    if (fv[worst] - fv[best] < opts.tol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k)
        x[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      return x;
    };

    const std::vector<double> xr = blend(-1.0);  // reflection
    const double fr = f(xr);
    if (fr < fv[order[0]]) {
      const std::vector<double> xe = blend(-2.0);  // expansion
      const double fe = f(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      const std::vector<double> xc = blend(outside ? -0.5 : 0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, fv[worst])) {
        simplex[worst] = xc;
        fv[worst] = fc;
      } else {
        // shrink toward best
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < n; ++k)
            simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
          fv[i] = f(simplex[i]);
        }
      }
    }
  }

  const auto it = std::min_element(fv.begin(), fv.end());
  NelderMeadResult out;
  out.x = simplex[static_cast<std::size_t>(it - fv.begin())];
  out.value = *it;
  out.iterations = iter;
  return out;
}

std::size_t basis_angle_count(std::size_t d) { return d * (d - 1); }

ComplexMatrix unitary_from_angles(std::size_t d, const double* angles) {
  ComplexMatrix u = ComplexMatrix::identity(d);
  std::size_t idx = 0;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double theta = angles[idx++];
      const double phi = angles[idx++];
      const double c = std::cos(theta), s = std::sin(theta);
      const cx ep{std::cos(phi), std::sin(phi)};
      // right-multiply U by the Givens rotation on the (i, j) plane
      for (std::size_t r = 0; r < d; ++r) {
        const cx ui = u(r, i), uj = u(r, j);
        u(r, i) = ui * c + uj * s * ep;
        u(r, j) = -ui * s * std::conj(ep) + uj * c;
      }
    }
  }
  return u;
}

double golden_minimize(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace ergo
