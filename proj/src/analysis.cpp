#include "brequant/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <thread>

#include "brequant/divergence.hpp"
#include "brequant/log.hpp"

namespace brequant {

namespace {

SweepEntry sweep_one(const DetectionModel& model, int k, const SweepOptions& opts) {
    SweepEntry e;
    e.cells = k;
    try {
        if (model.hypothesis_count() == 2) {
            const auto [q, r] = design_minimax(model, k, opts.scalar);
            e.max_divergence = r.max_divergence;
            e.converged = r.converged;
        } else {
            const auto [q, r] = design_minimax_simplex(model, k, opts.simplex);
            e.max_divergence = r.max_divergence;
            e.converged = r.converged;
        }
    } catch (const Error&) {
        e.converged = false;
        e.max_divergence = std::numeric_limits<double>::quiet_NaN();
    }
    return e;
}

// Weight with the cell's secant slope, by bisection on the derivative.
// Local to the oracle so the reference path stays separate from the design.
double oracle_cell_weight(const DetectionModel& model, double lo, double hi) {
    const double slope = (model.risk_chart(&hi) - model.risk_chart(&lo)) / (hi - lo);
    double a = lo + kInteriorMargin, b = hi - kInteriorMargin;
    for (int i = 0; i < 100 && b - a > 1e-15; ++i) {
        const double mid = 0.5 * (a + b);
        double g;
        model.gradient_chart(&mid, &g);
        if (g > slope) a = mid;
        else b = mid;
    }
    return 0.5 * (a + b);
}

double oracle_cell_max(const DetectionModel& model, double lo, double hi, double a) {
    return std::max(bre_divergence_chart(model, &lo, &a),
                    bre_divergence_chart(model, &hi, &a));
}

// Pull a chart point off the simplex boundary so it is a valid weight.
void interior_weight(double x, double y, double* out) {
    double a0 = std::max(x, kInteriorMargin);
    double a1 = std::max(y, kInteriorMargin);
    double a2 = std::max(1.0 - x - y, kInteriorMargin);
    const double sum = a0 + a1 + a2;
    out[0] = a0 / sum;
    out[1] = a1 / sum;
}

double max_vertex_divergence_at(const DetectionModel& model, const CellPolygon& cell,
                                Vec2 p) {
    double ac[2];
    interior_weight(p.x, p.y, ac);
    double m = 0.0;
    for (const Vec2& v : cell.vertices) {
        const double pv[2] = {v.x, v.y};
        m = std::max(m, bre_divergence_chart(model, pv, ac));
    }
    return m;
}

} // namespace

SweepResult sweep(const DetectionModel& model, const std::vector<int>& cell_counts,
                  const SweepOptions& opts) {
    if (cell_counts.empty()) throw DomainError("sweep needs at least one cell count");
    for (std::size_t i = 1; i < cell_counts.size(); ++i) {
        if (cell_counts[i] <= cell_counts[i - 1]) {
            throw DomainError("cell counts must be strictly ascending");
        }
    }
    SweepResult result;
    result.entries.resize(cell_counts.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (opts.parallel && cell_counts.size() > 1 && hw > 1) {
        std::vector<std::future<SweepEntry>> futures(cell_counts.size());
        for (std::size_t i = 0; i < cell_counts.size(); ++i) {
            futures[i] = std::async(std::launch::async, [&, i] {
                return sweep_one(model, cell_counts[i], opts);
            });
        }
        for (std::size_t i = 0; i < cell_counts.size(); ++i) {
            result.entries[i] = futures[i].get();
        }
    } else {
        for (std::size_t i = 0; i < cell_counts.size(); ++i) {
            result.entries[i] = sweep_one(model, cell_counts[i], opts);
        }
    }
    for (const SweepEntry& e : result.entries) {
        log_line(1, "sweep K=%d D=%.12g converged=%d", e.cells, e.max_divergence,
                 e.converged ? 1 : 0);
    }
    return result;
}

SlopeFit loglog_slope(const SweepResult& s, int k_min) {
    std::vector<double> xs, ys;
    for (const SweepEntry& e : s.entries) {
        if (!e.converged || e.cells < k_min || !(e.max_divergence > 0.0)) continue;
        xs.push_back(std::log(static_cast<double>(e.cells)));
        ys.push_back(std::log(e.max_divergence));
    }
    if (xs.size() < 3) {
        throw InsufficientDataError("slope fit needs at least 3 converged entries with K >= " +
                                    std::to_string(k_min));
    }
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = (syy > 0.0) ? std::min(1.0, (sxy * sxy) / (sxx * syy)) : 1.0;
    fit.k_min_used = k_min;
    return fit;
}

std::pair<ScalarQuantizer, double>
grid_oracle_scalar(const DetectionModel& model, int cells, double grid_step) {
    if (model.hypothesis_count() != 2) {
        throw DomainError("scalar oracle requires a binary model");
    }
    if (cells < 1 || cells > 3) throw DomainError("scalar oracle supports K in {1,2,3}");
    if (!(grid_step > 0.0) || grid_step > 1e-3 + 1e-15) {
        throw DomainError("oracle grid step must be positive and at most 1e-3");
    }

    if (cells == 1) {
        const double a = oracle_cell_weight(model, 0.0, 1.0);
        return {{{}, {a}}, oracle_cell_max(model, 0.0, 1.0, a)};
    }

    const int n = static_cast<int>(std::llround(1.0 / grid_step));
    double best_d = std::numeric_limits<double>::infinity();
    ScalarQuantizer best_q;

    if (cells == 2) {
        for (int i = 1; i < n; ++i) {
            const double b = static_cast<double>(i) / n;
            const double a1 = oracle_cell_weight(model, 0.0, b);
            const double m1 = oracle_cell_max(model, 0.0, b, a1);
            if (m1 >= best_d) continue;
            const double a2 = oracle_cell_weight(model, b, 1.0);
            const double d = std::max(m1, oracle_cell_max(model, b, 1.0, a2));
            if (d < best_d) {
                best_d = d;
                best_q = {{b}, {a1, a2}};
            }
        }
        return {best_q, best_d};
    }

    // cells == 3: the first cell's maximum is reusable across the inner loop,
    // and widening a cell never lowers its maximum, so prune on it.
    for (int i = 1; i < n - 1; ++i) {
        const double b1 = static_cast<double>(i) / n;
        const double a1 = oracle_cell_weight(model, 0.0, b1);
        const double m1 = oracle_cell_max(model, 0.0, b1, a1);
        if (m1 >= best_d) continue;
        for (int j = i + 1; j < n; ++j) {
            const double b2 = static_cast<double>(j) / n;
            const double a2 = oracle_cell_weight(model, b1, b2);
            const double m2 = oracle_cell_max(model, b1, b2, a2);
            if (m2 >= best_d) break; // grows with j
            const double a3 = oracle_cell_weight(model, b2, 1.0);
            const double d = std::max({m1, m2, oracle_cell_max(model, b2, 1.0, a3)});
            if (d < best_d) {
                best_d = d;
                best_q = {{b1, b2}, {a1, a2, a3}};
            }
        }
    }
    return {best_q, best_d};
}

std::pair<SimplexPoint, double>
grid_oracle_centroid_simplex(const DetectionModel& model, const CellPolygon& cell,
                             double grid_step) {
    if (model.hypothesis_count() != 3) {
        throw DomainError("simplex oracle requires a ternary model");
    }
    if (cell.empty()) throw DomainError("cell has no vertices");
    if (!(grid_step > 0.0) || grid_step > 2e-3 + 1e-15) {
        throw DomainError("oracle grid step must be positive and at most 2e-3");
    }
    const int n = static_cast<int>(std::llround(1.0 / grid_step));
    double best = std::numeric_limits<double>::infinity();
    Vec2 arg{0.0, 0.0};
    bool found = false;
    for (int i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) / n;
        for (int j = 0; j + i <= n; ++j) {
            const double y = static_cast<double>(j) / n;
            const Vec2 p{x, y};
            if (!polygon_contains(cell, p, 1e-12)) continue;
            const double m = max_vertex_divergence_at(model, cell, p);
            if (m < best) {
                best = m;
                arg = p;
                found = true;
            }
        }
    }
    if (!found) {
        // cell thinner than the grid: fall back to its vertex mean
        Vec2 mean{0.0, 0.0};
        for (const Vec2& v : cell.vertices) mean = mean + v;
        mean = (1.0 / cell.vertex_count()) * mean;
        best = max_vertex_divergence_at(model, cell, mean);
        arg = mean;
    }
    return {SimplexPoint::ternary(arg.x, arg.y), best};
}

} // namespace brequant
