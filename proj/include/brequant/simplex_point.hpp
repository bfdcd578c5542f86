#ifndef BREQUANT_SIMPLEX_POINT_HPP
#define BREQUANT_SIMPLEX_POINT_HPP

#include <cstddef>
#include <vector>

#include "brequant/errors.hpp"

namespace brequant {

/// Margin by which weights and priors are pushed off the simplex boundary
/// before any logarithm or threshold evaluation.
inline constexpr double kInteriorMargin = 1e-9;

/// Tolerance on the coordinate sum of a valid simplex point.
inline constexpr double kSimplexSumTol = 1e-12;

/// A point on the probability simplex over M hypotheses, stored in full
/// barycentric form (all M coordinates, nonnegative, summing to one).
class SimplexPoint {
public:
    explicit SimplexPoint(std::vector<double> coords);

    /// Binary point (p0, 1-p0).
    static SimplexPoint binary(double p0);
    /// Ternary point (p0, p1, 1-p0-p1).
    static SimplexPoint ternary(double p0, double p1);
    /// Point from chart coordinates (the first M-1 barycentric coordinates).
    static SimplexPoint from_chart(const double* chart, int m);

    int dim() const { return static_cast<int>(coords_.size()); }
    double operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<double>& coords() const { return coords_; }

    /// Chart coordinates: the first M-1 barycentric coordinates.
    std::vector<double> chart() const;

    /// True if every coordinate is at least `margin` away from zero.
    bool is_interior(double margin = 0.0) const;

private:
    std::vector<double> coords_;
};

} // namespace brequant

#endif
