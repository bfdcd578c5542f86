#ifndef BREQUANT_ANALYSIS_HPP
#define BREQUANT_ANALYSIS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "brequant/quantizer_scalar.hpp"
#include "brequant/quantizer_simplex.hpp"

namespace brequant {

/// One distortion sample: cell count K and the designed worst divergence.
struct SweepEntry {
    int cells = 0;
    double max_divergence = 0.0;
    bool converged = false;
};

struct SweepResult {
    std::vector<SweepEntry> entries;
};

/// Least-squares line through (ln K, ln D).
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int k_min_used = 0;
};

struct SweepOptions {
    ScalarDesignOptions scalar;
    SimplexDesignOptions simplex;
    bool parallel = true;
};

/// Design a quantizer for each K in ascending `cell_counts` and record the
/// achieved worst divergence. Individual failures are flagged per entry;
/// the sweep itself never aborts. Entries are independent and may be
/// computed in parallel; aggregation order is deterministic.
SweepResult sweep(const DetectionModel& model, const std::vector<int>& cell_counts,
                  const SweepOptions& opts = {});

/// Fit the distortion decay exponent over converged entries with K >= k_min.
/// Throws InsufficientDataError with fewer than three usable entries.
SlopeFit loglog_slope(const SweepResult& s, int k_min);

/// Exhaustive reference design for K <= 3: boundaries enumerated on a grid,
/// per-cell weights by bisection, minimal worst divergence returned.
std::pair<ScalarQuantizer, double>
grid_oracle_scalar(const DetectionModel& model, int cells, double grid_step);

/// Brute-force minimax centroid of a cell: minimum over in-cell barycentric
/// grid points of the worst vertex divergence.
std::pair<SimplexPoint, double>
grid_oracle_centroid_simplex(const DetectionModel& model, const CellPolygon& cell,
                             double grid_step);

} // namespace brequant

#endif
