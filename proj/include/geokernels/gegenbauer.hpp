#pragma once

#include <span>

namespace geokernels {

/// Gegenbauer polynomial C_l^α(t) by the three-term recurrence.
/// Throws DomainError for l < 0, α <= 0 or |t| > 1 + 1e-9.
double gegenbauer(int l, double alpha, double t);

/// C_0^α(t), ..., C_{out.size()-1}^α(t) in one pass.
void gegenbauer_all(double alpha, double t, std::span<double> out);

}  // namespace geokernels
