#include "brequant/simplex_point.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace brequant {

SimplexPoint::SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) {
        throw DomainError("simplex point needs at least two coordinates");
    }
    double sum = 0.0;
    for (double c : coords_) {
        if (!(c >= -kSimplexSumTol) || !std::isfinite(c)) {
            throw DomainError("simplex coordinate negative or not finite: " +
                              std::to_string(c));
        }
        sum += c;
    }
    if (std::fabs(sum - 1.0) > kSimplexSumTol) {
        throw DomainError("simplex coordinates sum to " + std::to_string(sum) +
                          ", expected 1");
    }
    for (double& c : coords_) {
        if (c < 0.0) c = 0.0;
    }
}

SimplexPoint SimplexPoint::binary(double p0) {
    return SimplexPoint({p0, 1.0 - p0});
}

SimplexPoint SimplexPoint::ternary(double p0, double p1) {
    return SimplexPoint({p0, p1, 1.0 - p0 - p1});
}

SimplexPoint SimplexPoint::from_chart(const double* chart, int m) {
    std::vector<double> coords(static_cast<std::size_t>(m));
    double sum = 0.0;
    for (int i = 0; i + 1 < m; ++i) {
        coords[static_cast<std::size_t>(i)] = chart[i];
        sum += chart[i];
    }
    coords[static_cast<std::size_t>(m - 1)] = 1.0 - sum;
    return SimplexPoint(std::move(coords));
}

std::vector<double> SimplexPoint::chart() const {
    return std::vector<double>(coords_.begin(), coords_.end() - 1);
}

bool SimplexPoint::is_interior(double margin) const {
    for (double c : coords_) {
        if (c <= margin) return false;
    }
    return true;
}

} // namespace brequant
