#ifndef BREQUANT_DIVERGENCE_HPP
#define BREQUANT_DIVERGENCE_HPP

#include <utility>

#include "brequant/models.hpp"

namespace brequant {

/// Bayes risk error divergence d(p || a) = J(p, a) - J(p): the detection
/// performance lost by acting with weight a when the true prior is p.
/// Nonnegative, zero iff p = a where J is strictly concave; the Bregman
/// divergence generated by -J.
double bre_divergence(const DetectionModel& model, const SimplexPoint& p,
                      const SimplexPoint& a);

/// Chart-coordinate form of bre_divergence.
double bre_divergence_chart(const DetectionModel& model, const double* p,
                            const double* a);

/// The single decision weight minimizing the worst-case divergence over the
/// whole simplex: the peak of J. Returns the weight and the worst-case
/// divergence, which by convexity of d(.||a) in its first argument is
/// attained at a simplex vertex.
std::pair<SimplexPoint, double> minimax_weight(const DetectionModel& model);

} // namespace brequant

#endif
