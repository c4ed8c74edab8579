#include "hmcf/interpolation.hpp"

namespace hmcf::interp {

double lagrange(std::span<const double> xs, std::span<const double> ys, double x) {
  const std::size_t n = xs.size();
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double w = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k) w *= (x - xs[j]) / (xs[k] - xs[j]);
    }
    sum += w * ys[k];
  }
  return sum;
}

double lagrange_uniform(std::span<const double> v, double s) {
  // Barycentric form; the weights of equally spaced nodes are (-1)^k C(n-1, k).
  const std::size_t n = v.size();
  double num = 0.0;
  double den = 0.0;
  double w = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = s - static_cast<double>(k);
    if (d == 0.0) return v[k];
    const double c = w / d;
    num += c * v[k];
    den += c;
    w = -w * static_cast<double>(n - 1 - k) / static_cast<double>(k + 1);
  }
  return num / den;
}

}  // namespace hmcf::interp
