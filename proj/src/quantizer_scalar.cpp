#include "brequant/quantizer_scalar.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "brequant/divergence.hpp"
#include "brequant/log.hpp"

namespace brequant {

namespace {

void require_binary(const DetectionModel& model) {
    if (model.hypothesis_count() != 2) {
        throw DomainError("scalar quantizer requires a binary model");
    }
}

double risk1(const DetectionModel& m, double p) { return m.risk_chart(&p); }

double deriv1(const DetectionModel& m, double a) {
    double g;
    m.gradient_chart(&a, &g);
    return g;
}

double div1(const DetectionModel& m, double p, double a) {
    return bre_divergence_chart(m, &p, &a);
}

void check_interleaving(const std::vector<double>& b, const std::vector<double>& a) {
    const int k = static_cast<int>(a.size());
    double prev = 0.0;
    for (int i = 0; i < k; ++i) {
        if (!(prev < a[static_cast<std::size_t>(i)])) {
            throw Error("interleaving violated at weight " + std::to_string(i));
        }
        prev = a[static_cast<std::size_t>(i)];
        if (i < k - 1) {
            if (!(prev < b[static_cast<std::size_t>(i)])) {
                throw Error("interleaving violated at boundary " + std::to_string(i));
            }
            prev = b[static_cast<std::size_t>(i)];
        }
    }
    if (!(prev < 1.0)) throw Error("interleaving violated at the right end");
}

DesignReport report_for(const DetectionModel& model, const ScalarQuantizer& q,
                        int iterations, bool converged) {
    DesignReport r = max_divergence(model, q);
    r.iterations = iterations;
    r.converged = converged;
    return r;
}

// One Lloyd run from the given initial boundaries (both endpoints included).
// The weight update is supplied so the minimax and mean designs share the
// alternation.
template <typename CentroidFn>
std::pair<ScalarQuantizer, DesignReport>
lloyd_run(const DetectionModel& model, std::vector<double> edges,
          const ScalarDesignOptions& opts, CentroidFn cell_weight) {
    const int k = static_cast<int>(edges.size()) - 1;
    std::vector<double> a(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        a[static_cast<std::size_t>(i)] =
            cell_weight(edges[static_cast<std::size_t>(i)], edges[static_cast<std::size_t>(i) + 1]);
    }
    bool converged = false;
    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        const std::vector<double> prev_a = a;
        const std::vector<double> prev_edges = edges;
        for (int i = 1; i < k; ++i) {
            edges[static_cast<std::size_t>(i)] =
                boundary(model, a[static_cast<std::size_t>(i) - 1], a[static_cast<std::size_t>(i)]);
        }
        for (int i = 0; i < k; ++i) {
            a[static_cast<std::size_t>(i)] = cell_weight(edges[static_cast<std::size_t>(i)],
                                                         edges[static_cast<std::size_t>(i) + 1]);
        }
        check_interleaving({edges.begin() + 1, edges.end() - 1}, a);
        double change = 0.0;
        for (int i = 0; i < k; ++i) {
            change = std::max(change, std::fabs(a[static_cast<std::size_t>(i)] -
                                                prev_a[static_cast<std::size_t>(i)]));
        }
        for (int i = 1; i < k; ++i) {
            change = std::max(change, std::fabs(edges[static_cast<std::size_t>(i)] -
                                                prev_edges[static_cast<std::size_t>(i)]));
        }
        if (change < opts.tol) {
            converged = true;
            ++iter;
            break;
        }
    }
    ScalarQuantizer q{{edges.begin() + 1, edges.end() - 1}, a};
    return {q, report_for(model, q, iter, converged)};
}

std::vector<double> uniform_edges(int k) {
    std::vector<double> edges(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) {
        edges[static_cast<std::size_t>(i)] = static_cast<double>(i) / k;
    }
    return edges;
}

std::vector<double> perturbed_edges(int k, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> edges(static_cast<std::size_t>(k) + 1);
    edges[0] = 0.0;
    edges[static_cast<std::size_t>(k)] = 1.0;
    // Perturbations below 0.3/K keep the boundaries ordered.
    for (int i = 1; i < k; ++i) {
        edges[static_cast<std::size_t>(i)] = (i + 0.3 * u(rng)) / k;
    }
    return edges;
}

template <typename CentroidFn>
std::pair<ScalarQuantizer, DesignReport>
multistart_lloyd(const DetectionModel& model, int k, const ScalarDesignOptions& opts,
                 CentroidFn cell_weight) {
    std::mt19937_64 rng(opts.seed);
    std::pair<ScalarQuantizer, DesignReport> best;
    const int starts = std::max(1, opts.multistart);
    for (int s = 0; s < starts; ++s) {
        std::vector<double> edges = (s == 0) ? uniform_edges(k) : perturbed_edges(k, rng);
        auto run = lloyd_run(model, std::move(edges), opts, cell_weight);
        log_line(2, "scalar design K=%d start=%d D=%.12g iters=%d converged=%d", k, s,
                 run.second.max_divergence, run.second.iterations,
                 run.second.converged ? 1 : 0);
        if (s == 0 || run.second.max_divergence < best.second.max_divergence) {
            best = std::move(run);
        }
    }
    return best;
}

// Adaptive Simpson quadrature of f over [lo, hi].
template <typename F>
double adaptive_simpson(F f, double lo, double hi, double f_lo, double f_mid, double f_hi,
                        double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double mh = 0.5 * (mid + hi);
    const double f_lm = f(lm);
    const double f_mh = f(mh);
    const double whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
    const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lm + f_mid);
    const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_mh + f_hi);
    const double err = left + right - whole;
    if (depth <= 0 || std::fabs(err) < 15.0 * tol) {
        return left + right + err / 15.0;
    }
    return adaptive_simpson(f, lo, mid, f_lo, f_lm, f_mid, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, mid, hi, f_mid, f_mh, f_hi, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(F f, double lo, double hi, double tol) {
    const double mid = 0.5 * (lo + hi);
    return adaptive_simpson(f, lo, hi, f(lo), f(mid), f(hi), tol, 24);
}

double cell_mean_divergence(const DetectionModel& model, double lo, double hi, double a) {
    return integrate([&](double p) { return div1(model, p, a); }, lo, hi, 1e-13);
}

// Weight minimizing the integrated divergence over one cell.
double mean_centroid(const DetectionModel& model, double b_lo, double b_hi) {
    const double inv_phi = 0.6180339887498949;
    double lo = b_lo + kInteriorMargin;
    double hi = b_hi - kInteriorMargin;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = cell_mean_divergence(model, b_lo, b_hi, x1);
    double f2 = cell_mean_divergence(model, b_lo, b_hi, x2);
    while (hi - lo > 1e-12) {
        if (f1 > f2) {
            lo = x1;
            x1 = x2; f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = cell_mean_divergence(model, b_lo, b_hi, x2);
        } else {
            hi = x2;
            x2 = x1; f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = cell_mean_divergence(model, b_lo, b_hi, x1);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double centroid(const DetectionModel& model, double b_lo, double b_hi) {
    require_binary(model);
    if (!(b_lo >= 0.0 && b_lo < b_hi && b_hi <= 1.0)) {
        throw DomainError("centroid requires 0 <= b_lo < b_hi <= 1");
    }
    const double slope = (risk1(model, b_hi) - risk1(model, b_lo)) / (b_hi - b_lo);
    double lo = b_lo + kInteriorMargin;
    double hi = b_hi - kInteriorMargin;
    // J' decreases, so the secant slope must be bracketed.
    if (deriv1(model, lo) < slope || deriv1(model, hi) > slope) {
        throw BracketError("secant slope outside the derivative range of the cell");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (deriv1(model, mid) > slope) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double boundary(const DetectionModel& model, double a_k, double a_k1) {
    require_binary(model);
    if (!(a_k < a_k1)) {
        throw DomainError("boundary requires a_k < a_k1");
    }
    if (!(a_k > 0.0 && a_k1 < 1.0)) {
        throw DomainError("boundary requires interior weights");
    }
    const double d_lo = deriv1(model, a_k);
    const double d_hi = deriv1(model, a_k1);
    if (d_hi == d_lo) {
        throw DegenerateError("coincident tangent slopes; weights indistinguishable");
    }
    // Intersection of the two tangent lines of J.
    return (a_k1 * d_hi - a_k * d_lo - (risk1(model, a_k1) - risk1(model, a_k))) /
           (d_hi - d_lo);
}

std::pair<ScalarQuantizer, DesignReport>
design_minimax(const DetectionModel& model, int cells, const ScalarDesignOptions& opts) {
    require_binary(model);
    if (cells < 1) throw DomainError("cell count must be at least 1");
    if (cells == 1) {
        auto [w, worst] = minimax_weight(model);
        ScalarQuantizer q{{}, {w[0]}};
        DesignReport r;
        r.iterations = 1;
        r.converged = true;
        r.max_divergence = worst;
        r.cell_maxima = {worst};
        return {q, r};
    }
    return multistart_lloyd(model, cells, opts, [&](double lo, double hi) {
        return centroid(model, lo, hi);
    });
}

MeanDesignResult design_mean_bre(const DetectionModel& model, int cells,
                                 const ScalarDesignOptions& opts) {
    require_binary(model);
    if (cells < 1) throw DomainError("cell count must be at least 1");
    auto [q, report] = multistart_lloyd(model, cells, opts, [&](double lo, double hi) {
        return mean_centroid(model, lo, hi);
    });
    double mean = 0.0;
    double lo = 0.0;
    for (int i = 0; i < cells; ++i) {
        const double hi = (i + 1 < cells) ? q.boundaries[static_cast<std::size_t>(i)] : 1.0;
        mean += cell_mean_divergence(model, lo, hi, q.weights[static_cast<std::size_t>(i)]);
        lo = hi;
    }
    return {std::move(q), std::move(report), mean};
}

std::pair<int, double> quantize(const ScalarQuantizer& q, double p0) {
    if (!(p0 >= 0.0 && p0 <= 1.0)) {
        throw DomainError("prior must lie in [0,1], got " + std::to_string(p0));
    }
    const auto it = std::lower_bound(q.boundaries.begin(), q.boundaries.end(), p0);
    const int k = static_cast<int>(it - q.boundaries.begin());
    return {k, q.weights[static_cast<std::size_t>(k)]};
}

DesignReport max_divergence(const DetectionModel& model, const ScalarQuantizer& q) {
    DesignReport r;
    r.converged = true;
    const int k = q.cell_count();
    r.cell_maxima.resize(static_cast<std::size_t>(k));
    double lo = 0.0;
    for (int i = 0; i < k; ++i) {
        const double hi = (i + 1 < k) ? q.boundaries[static_cast<std::size_t>(i)] : 1.0;
        const double a = q.weights[static_cast<std::size_t>(i)];
        const double m = std::max(div1(model, lo, a), div1(model, hi, a));
        r.cell_maxima[static_cast<std::size_t>(i)] = m;
        r.max_divergence = std::max(r.max_divergence, m);
        lo = hi;
    }
    return r;
}

} // namespace brequant
