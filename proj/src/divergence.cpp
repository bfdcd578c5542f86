#include "brequant/divergence.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace brequant {

double bre_divergence_chart(const DetectionModel& model, const double* p, const double* a) {
    return model.risk_mismatched_chart(p, a) - model.risk_chart(p);
}

double bre_divergence(const DetectionModel& model, const SimplexPoint& p,
                      const SimplexPoint& a) {
    return model.risk_mismatched(p, a) - model.risk(p);
}

namespace {

// Golden-section maximization of J over [0,1]; argument tolerance 1e-12.
double golden_section_peak(const DetectionModel& model) {
    const double inv_phi = 0.6180339887498949;
    double lo = 0.0, hi = 1.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = model.risk_chart(&x1);
    double f2 = model.risk_chart(&x2);
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2; f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = model.risk_chart(&x2);
        } else {
            hi = x2;
            x2 = x1; f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = model.risk_chart(&x1);
        }
    }
    return 0.5 * (lo + hi);
}

// Euclidean projection onto {x >= lo, y >= lo, x + y <= 1 - lo}.
void project_triangle(double& x, double& y, double lo) {
    x = std::max(x, lo);
    y = std::max(y, lo);
    const double hi = 1.0 - lo;
    if (x + y > hi) {
        const double shift = 0.5 * (x + y - hi);
        x -= shift;
        y -= shift;
        x = std::max(x, lo);
        y = std::max(y, lo);
        if (x + y > hi) {
            // one coordinate pinned at lo; give the rest to the other
            if (x <= lo) y = hi - lo;
            else x = hi - lo;
        }
    }
}

struct AscentResult {
    double x = 0.0, y = 0.0;
    double value = 0.0;
    bool localized = false;
};

// Projected gradient ascent on the concave risk, followed by a compass
// polish that handles the nondifferentiable loci near the peak.
AscentResult ascend_ternary(const DetectionModel& model, double x, double y,
                            int max_iterations) {
    const double lo = kInteriorMargin;
    project_triangle(x, y, lo);
    double p[2] = {x, y};
    double f = model.risk_chart(p);
    int budget = max_iterations;

    double step = 0.25;
    while (budget > 0 && step > 1e-12) {
        --budget;
        double g[2];
        model.gradient_chart(p, g);
        double nx = p[0] + step * g[0];
        double ny = p[1] + step * g[1];
        project_triangle(nx, ny, lo);
        const double q[2] = {nx, ny};
        const double fn = model.risk_chart(q);
        if (fn > f) {
            p[0] = nx; p[1] = ny; f = fn;
        } else {
            step *= 0.5;
        }
    }

    static constexpr std::array<std::array<double, 2>, 8> dirs = {{
        {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    double h = 1e-3;
    bool localized = false;
    while (budget > 0 && h > 1e-13) {
        bool improved = false;
        for (const auto& d : dirs) {
            if (budget-- <= 0) break;
            double nx = p[0] + h * d[0];
            double ny = p[1] + h * d[1];
            project_triangle(nx, ny, lo);
            const double q[2] = {nx, ny};
            const double fn = model.risk_chart(q);
            if (fn > f) {
                p[0] = nx; p[1] = ny; f = fn;
                improved = true;
            }
        }
        if (!improved) {
            h *= 0.5;
            if (h <= 1e-10) localized = true;
        }
    }
    return {p[0], p[1], f, localized};
}

} // namespace

std::pair<SimplexPoint, double> minimax_weight(const DetectionModel& model) {
    const int m = model.hypothesis_count();
    if (m == 2) {
        const double a = golden_section_peak(model);
        const double zero = 0.0, one = 1.0;
        const double worst = std::max(bre_divergence_chart(model, &zero, &a),
                                      bre_divergence_chart(model, &one, &a));
        return {SimplexPoint::binary(a), worst};
    }

    // Ternary: multistart projected ascent over the chart triangle.
    static constexpr std::array<std::array<double, 2>, 5> starts = {{
        {1.0 / 3, 1.0 / 3}, {0.6, 0.2}, {0.2, 0.6}, {0.2, 0.2}, {0.45, 0.45}}};
    AscentResult best;
    bool any_localized = false;
    bool first = true;
    for (const auto& s : starts) {
        AscentResult r = ascend_ternary(model, s[0], s[1], 10000);
        any_localized = any_localized || r.localized;
        if (first || r.value > best.value) {
            best = r;
            first = false;
        }
    }
    if (!any_localized) {
        throw ConvergenceError("minimax weight ascent failed to localize the risk peak");
    }
    const double a[2] = {best.x, best.y};
    double worst = 0.0;
    static constexpr std::array<std::array<double, 2>, 3> corners = {{{0, 0}, {1, 0}, {0, 1}}};
    for (const auto& c : corners) {
        worst = std::max(worst, bre_divergence_chart(model, c.data(), a));
    }
    return {SimplexPoint::ternary(best.x, best.y), worst};
}

} // namespace brequant
