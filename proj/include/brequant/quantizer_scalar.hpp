#ifndef BREQUANT_QUANTIZER_SCALAR_HPP
#define BREQUANT_QUANTIZER_SCALAR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "brequant/models.hpp"

namespace brequant {

/// A K-cell quantizer of the prior interval [0,1] for binary detection:
/// K-1 increasing cell boundaries and K decision weights, interleaved as
/// 0 < a_1 < b_1 < a_2 < ... < b_{K-1} < a_K < 1. Each cell is a single
/// interval, closed on the right: cell k is (b_{k-1}, b_k] with b_0 = 0
/// and b_K = 1, except cell 1 which also contains 0.
struct ScalarQuantizer {
    std::vector<double> boundaries; // size K-1
    std::vector<double> weights;    // size K
    int cell_count() const { return static_cast<int>(weights.size()); }
};

/// Outcome of a quantizer design run.
struct DesignReport {
    int iterations = 0;
    bool converged = false;
    double max_divergence = 0.0;       // worst divergence over the domain
    std::vector<double> cell_maxima;   // worst divergence per cell
};

struct ScalarDesignOptions {
    double tol = 1e-10;        // max parameter change at convergence
    int max_iterations = 10000;
    int multistart = 1;        // extra starts use perturbed uniform boundaries
    std::uint64_t seed = 0;
};

/// Decision weight minimizing the worst divergence over a fixed cell
/// [b_lo, b_hi]: the unique a with J'(a) equal to the secant slope of J
/// over the cell, found by bisection on the monotone J'. At the result the
/// divergences to both cell endpoints are equal.
double centroid(const DetectionModel& model, double b_lo, double b_hi);

/// Cell boundary between adjacent weights a_k < a_k1: the abscissa where
/// the tangents of J at the two weights intersect, in closed form. The two
/// one-sided divergences at the boundary are equal exactly.
double boundary(const DetectionModel& model, double a_k, double a_k1);

/// Minimax quantizer design by alternating the centroid and boundary
/// conditions from a uniform initial partition. K = 1 reduces to the
/// global minimax weight. Non-convergence is reported in the DesignReport,
/// never thrown.
std::pair<ScalarQuantizer, DesignReport>
design_minimax(const DetectionModel& model, int cells,
               const ScalarDesignOptions& opts = {});

/// Result of the minimum-mean-divergence baseline design.
struct MeanDesignResult {
    ScalarQuantizer quantizer;
    DesignReport report;        // max_divergence fields still reported
    double mean_divergence = 0.0;
};

/// Baseline quantizer minimizing the mean divergence under a uniform prior
/// density. Shares the boundary condition with the minimax design; the
/// per-cell weight minimizes the integrated divergence, computed by
/// adaptive quadrature inside a golden-section search.
MeanDesignResult design_mean_bre(const DetectionModel& model, int cells,
                                 const ScalarDesignOptions& opts = {});

/// Cell index (0-based) and decision weight for a prior p0 in [0,1].
std::pair<int, double> quantize(const ScalarQuantizer& q, double p0);

/// Worst divergence of each cell, evaluated at the cell endpoints only
/// (the maximum over a cell is attained there, d(.||a) being convex), and
/// the overall maximum.
DesignReport max_divergence(const DetectionModel& model, const ScalarQuantizer& q);

} // namespace brequant

#endif
