#include "geokernels/gegenbauer.hpp"

#include <cmath>
#include <algorithm>

#include "geokernels/errors.hpp"

namespace geokernels {

namespace {

void check_argument(double alpha, double t) {
  if (!(alpha > 0.0)) throw DomainError("Gegenbauer alpha must be positive");
  if (!(std::abs(t) <= 1.0 + 1e-9)) throw DomainError("Gegenbauer argument outside [-1, 1]");
}

}  // namespace

void gegenbauer_all(double alpha, double t, std::span<double> out) {
  check_argument(alpha, t);
  t = std::clamp(t, -1.0, 1.0);
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 2.0 * alpha * t;
  // l C_l = 2t(l + α − 1) C_{l−1} − (l + 2α − 2) C_{l−2}
  for (std::size_t l = 2; l < out.size(); ++l) {
    const double dl = static_cast<double>(l);
    out[l] = (2.0 * t * (dl + alpha - 1.0) * out[l - 1] - (dl + 2.0 * alpha - 2.0) * out[l - 2]) / dl;
  }
}

double gegenbauer(int l, double alpha, double t) {
  if (l < 0) throw DomainError("Gegenbauer degree must be nonnegative");
  check_argument(alpha, t);
  t = std::clamp(t, -1.0, 1.0);
  double prev = 1.0;
  if (l == 0) return prev;
  double cur = 2.0 * alpha * t;
  for (int k = 2; k <= l; ++k) {
    const double next = (2.0 * t * (k + alpha - 1.0) * cur - (k + 2.0 * alpha - 2.0) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace geokernels
