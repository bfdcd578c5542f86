#include "brequant/quantizer_simplex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "brequant/log.hpp"

namespace brequant {

namespace {

constexpr double kClipTol = 1e-12;

void require_ternary(const DetectionModel& model) {
    if (model.hypothesis_count() != 3) {
        throw DomainError("simplex quantizer requires a ternary model");
    }
}

// Divergence with the weight nudged off the simplex boundary, so candidate
// centroids on an edge evaluate through the continuous extension.
double div2(const DetectionModel& m, Vec2 p, Vec2 a) {
    double a0 = std::max(a.x, kInteriorMargin);
    double a1 = std::max(a.y, kInteriorMargin);
    double a2 = std::max(1.0 - a.x - a.y, kInteriorMargin);
    const double sum = a0 + a1 + a2;
    const double pc[2] = {p.x, p.y};
    const double ac[2] = {a0 / sum, a1 / sum};
    return bre_divergence_chart(m, pc, ac);
}

Vec2 grad2(const DetectionModel& m, Vec2 a) {
    const double ac[2] = {a.x, a.y};
    double g[2];
    m.gradient_chart(ac, g);
    return {g[0], g[1]};
}

double risk2(const DetectionModel& m, Vec2 p) {
    const double pc[2] = {p.x, p.y};
    return m.risk_chart(pc);
}

// Clamp a chart point into the closed triangle with an interior margin.
Vec2 clamp_triangle(Vec2 p, double margin) {
    p.x = std::max(p.x, margin);
    p.y = std::max(p.y, margin);
    const double excess = p.x + p.y - (1.0 - margin);
    if (excess > 0.0) {
        p.x -= 0.5 * excess;
        p.y -= 0.5 * excess;
        p.x = std::max(p.x, margin);
        p.y = std::max(p.y, margin);
        if (p.x + p.y > 1.0 - margin) {
            if (p.x <= margin) p.y = 1.0 - 2.0 * margin;
            else p.x = 1.0 - 2.0 * margin;
        }
    }
    return p;
}

std::vector<Vec2> chart_triangle() {
    return {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
}

std::vector<Vec2> clip_polygon(const std::vector<Vec2>& poly, const Halfplane& hp) {
    std::vector<Vec2> out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 cur = poly[i];
        const Vec2 nxt = poly[(i + 1) % n];
        const double sc = dot(hp.normal, cur) - hp.offset;
        const double sn = dot(hp.normal, nxt) - hp.offset;
        const bool cur_in = sc <= kClipTol;
        const bool nxt_in = sn <= kClipTol;
        if (cur_in) out.push_back(cur);
        if (cur_in != nxt_in) {
            const double t = sc / (sc - sn);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    // drop duplicate vertices produced by on-line classifications
    std::vector<Vec2> dedup;
    dedup.reserve(out.size());
    for (const Vec2& v : out) {
        if (dedup.empty() || std::fabs(v.x - dedup.back().x) > kClipTol ||
            std::fabs(v.y - dedup.back().y) > kClipTol) {
            dedup.push_back(v);
        }
    }
    while (dedup.size() > 1 && std::fabs(dedup.front().x - dedup.back().x) <= kClipTol &&
           std::fabs(dedup.front().y - dedup.back().y) <= kClipTol) {
        dedup.pop_back();
    }
    return dedup;
}

struct CentroidCandidate {
    Vec2 point;
    double overall_max = std::numeric_limits<double>::infinity();
    std::array<int, 3> support = {-1, -1, -1};
    std::array<double, 3> coeff = {0.0, 0.0, 0.0};
    int support_size = 0;
};

double overall_vertex_max(const DetectionModel& model, const std::vector<Vec2>& verts,
                          Vec2 a) {
    double m = 0.0;
    for (const Vec2& v : verts) m = std::max(m, div2(model, v, a));
    return m;
}

// Equalize the divergences to the two segment endpoints by bisection along
// the segment; this is the 1-D slope-matching condition restricted to it.
CentroidCandidate pair_candidate(const DetectionModel& model,
                                 const std::vector<Vec2>& verts, int i, int j) {
    const Vec2 u = verts[static_cast<std::size_t>(i)];
    const Vec2 v = verts[static_cast<std::size_t>(j)];
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 90; ++it) {
        const double t = 0.5 * (lo + hi);
        const Vec2 a = u + t * (v - u);
        if (div2(model, u, a) < div2(model, v, a)) lo = t;
        else hi = t;
    }
    const double t = 0.5 * (lo + hi);
    CentroidCandidate c;
    c.point = u + t * (v - u);
    c.overall_max = overall_vertex_max(model, verts, c.point);
    c.support = {i, j, -1};
    c.coeff = {1.0 - t, t, 0.0};
    c.support_size = 2;
    return c;
}

// Newton iteration equalizing the divergences to three vertices.
bool triple_equalize(const DetectionModel& model, const std::array<Vec2, 3>& b, Vec2& a) {
    a = (1.0 / 3.0) * (b[0] + b[1] + b[2]);
    const double h = 1e-7;
    for (int it = 0; it < 60; ++it) {
        const double f0 = div2(model, b[0], a) - div2(model, b[2], a);
        const double f1 = div2(model, b[1], a) - div2(model, b[2], a);
        if (std::fabs(f0) < 1e-13 && std::fabs(f1) < 1e-13) return true;
        double jac[2][2];
        for (int col = 0; col < 2; ++col) {
            Vec2 ap = a, am = a;
            (col == 0 ? ap.x : ap.y) += h;
            (col == 0 ? am.x : am.y) -= h;
            const double f0p = div2(model, b[0], ap) - div2(model, b[2], ap);
            const double f1p = div2(model, b[1], ap) - div2(model, b[2], ap);
            const double f0m = div2(model, b[0], am) - div2(model, b[2], am);
            const double f1m = div2(model, b[1], am) - div2(model, b[2], am);
            jac[0][col] = (f0p - f0m) / (2.0 * h);
            jac[1][col] = (f1p - f1m) / (2.0 * h);
        }
        const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if (std::fabs(det) < 1e-18) return false;
        double dx = (f0 * jac[1][1] - f1 * jac[0][1]) / det;
        double dy = (f1 * jac[0][0] - f0 * jac[1][0]) / det;
        const double norm = std::hypot(dx, dy);
        if (norm > 0.3) { // damp long steps
            dx *= 0.3 / norm;
            dy *= 0.3 / norm;
        }
        a.x -= dx;
        a.y -= dy;
        a = clamp_triangle(a, kInteriorMargin);
    }
    return false;
}

CentroidCandidate triple_candidate(const DetectionModel& model,
                                   const std::vector<Vec2>& verts, int i, int j, int k) {
    const std::array<Vec2, 3> b = {verts[static_cast<std::size_t>(i)],
                                   verts[static_cast<std::size_t>(j)],
                                   verts[static_cast<std::size_t>(k)]};
    Vec2 a;
    CentroidCandidate c;
    if (!triple_equalize(model, b, a)) return c; // infinite overall_max, ignored
    // barycentric coordinates of a in the support triangle
    const double det = (b[1].x - b[0].x) * (b[2].y - b[0].y) -
                       (b[2].x - b[0].x) * (b[1].y - b[0].y);
    if (std::fabs(det) < 1e-16) return c;
    const double w1 = ((a.x - b[0].x) * (b[2].y - b[0].y) -
                       (b[2].x - b[0].x) * (a.y - b[0].y)) / det;
    const double w2 = ((b[1].x - b[0].x) * (a.y - b[0].y) -
                       (a.x - b[0].x) * (b[1].y - b[0].y)) / det;
    const double w0 = 1.0 - w1 - w2;
    if (w0 < -1e-9 || w1 < -1e-9 || w2 < -1e-9) return c; // outside its hull, not a KKT point
    c.point = a;
    c.overall_max = overall_vertex_max(model, verts, a);
    c.support = {i, j, k};
    c.coeff = {std::max(w0, 0.0), std::max(w1, 0.0), std::max(w2, 0.0)};
    c.support_size = 3;
    return c;
}

bool all_collinear(const std::vector<Vec2>& verts, int& end_a, int& end_b) {
    const int n = static_cast<int>(verts.size());
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Vec2 d = verts[static_cast<std::size_t>(j)] - verts[static_cast<std::size_t>(i)];
            const double len = std::hypot(d.x, d.y);
            if (len > best) {
                best = len;
                end_a = i;
                end_b = j;
            }
        }
    }
    if (best <= kClipTol) { // all coincident
        end_b = end_a;
        return true;
    }
    const Vec2 u = verts[static_cast<std::size_t>(end_a)];
    const Vec2 d = verts[static_cast<std::size_t>(end_b)] - u;
    const double len = std::hypot(d.x, d.y);
    for (const Vec2& v : verts) {
        const double cross = d.x * (v.y - u.y) - d.y * (v.x - u.x);
        if (std::fabs(cross) / len > 1e-10) return false;
    }
    return true;
}

// Low-discrepancy point sequence on the chart triangle: Halton pairs folded
// across the diagonal.
double halton(std::uint64_t index, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

Vec2 triangle_sample(std::uint64_t index) {
    double u = halton(index, 2);
    double v = halton(index, 3);
    if (u + v > 1.0) {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    return {u, v};
}

struct LloydRun {
    std::vector<Vec2> seeds;
    double max_divergence = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

// Cells for the given seeds; a cell that degenerates (coincident gradients)
// is treated as empty so the loop reseeds it.
std::vector<CellPolygon> build_cells(const DetectionModel& model,
                                     const std::vector<Vec2>& seeds) {
    std::vector<CellPolygon> cells(seeds.size());
    for (int k = 0; k < static_cast<int>(seeds.size()); ++k) {
        try {
            cells[static_cast<std::size_t>(k)] = cell_polygon(model, seeds, k);
        } catch (const DegenerateError&) {
            cells[static_cast<std::size_t>(k)].seed_index = k;
        }
    }
    return cells;
}

double config_max(const DetectionModel& model, const std::vector<Vec2>& seeds,
                  const std::vector<CellPolygon>& cells, std::vector<double>* maxima) {
    double overall = 0.0;
    if (maxima != nullptr) maxima->assign(seeds.size(), 0.0);
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        if (cells[k].empty()) continue;
        const double m = cell_max_divergence(model, cells[k], seeds[k]).first;
        if (maxima != nullptr) (*maxima)[k] = m;
        overall = std::max(overall, m);
    }
    return overall;
}

LloydRun lloyd_simplex(const DetectionModel& model, std::vector<Vec2> seeds,
                       const SimplexDesignOptions& opts) {
    LloydRun best;
    bool converged = false;
    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        std::vector<CellPolygon> cells = build_cells(model, seeds);

        // Reseed empty cells at the currently worst-covered point.
        for (std::size_t k = 0; k < seeds.size(); ++k) {
            if (!cells[k].empty()) continue;
            double worst = -1.0;
            Vec2 where{1.0 / 3, 1.0 / 3};
            for (std::size_t c = 0; c < seeds.size(); ++c) {
                if (cells[c].empty()) continue;
                for (const Vec2& v : cells[c].vertices) {
                    const double d = div2(model, v, seeds[c]);
                    if (d > worst) {
                        worst = d;
                        where = v;
                    }
                }
            }
            seeds[k] = clamp_triangle(0.999 * where + 0.001 * Vec2{1.0 / 3, 1.0 / 3},
                                      kInteriorMargin);
            try {
                cells[k] = cell_polygon(model, seeds, static_cast<int>(k));
            } catch (const DegenerateError&) {
                // stays empty; picked up again next iteration
            }
        }

        const double current = config_max(model, seeds, cells, nullptr);
        if (current < best.max_divergence) {
            best.seeds = seeds;
            best.max_divergence = current;
        }
        log_line(2, "simplex lloyd iter=%d D=%.12g", iter, current);

        double movement = 0.0;
        for (std::size_t k = 0; k < seeds.size(); ++k) {
            if (cells[k].empty()) continue;
            const SimplexPoint a = minimax_centroid(model, cells[k]).first;
            const Vec2 na = clamp_triangle({a[0], a[1]}, kInteriorMargin);
            movement = std::max({movement, std::fabs(na.x - seeds[k].x),
                                 std::fabs(na.y - seeds[k].y)});
            seeds[k] = na;
        }
        if (movement < opts.movement_tol) {
            converged = true;
            ++iter;
            break;
        }
    }
    // The final seeds may beat the last snapshot.
    const std::vector<CellPolygon> cells = build_cells(model, seeds);
    const double final_max = config_max(model, seeds, cells, nullptr);
    if (final_max < best.max_divergence) {
        best.seeds = seeds;
        best.max_divergence = final_max;
    }
    best.iterations = iter;
    best.converged = converged;
    return best;
}

} // namespace

SimplexPoint SimplexQuantizer::seed_point(int k) const {
    const Vec2 s = seeds[static_cast<std::size_t>(k)];
    return SimplexPoint::ternary(s.x, s.y);
}

double polygon_area(const CellPolygon& cell) {
    const std::size_t n = cell.vertices.size();
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = cell.vertices[i];
        const Vec2 b = cell.vertices[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return std::fabs(twice) * 0.5;
}

bool polygon_contains(const CellPolygon& cell, Vec2 p, double tol) {
    const std::size_t n = cell.vertices.size();
    if (n == 0) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = cell.vertices[i];
        const Vec2 b = cell.vertices[(i + 1) % n];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        if (len <= kClipTol) continue;
        const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (cross / len < -tol) return false;
    }
    return true;
}

BisectorLine bisector(const DetectionModel& model, const SimplexPoint& a_k,
                      const SimplexPoint& a_k1) {
    const int dim = model.hypothesis_count() - 1;
    std::vector<double> g1(static_cast<std::size_t>(dim));
    std::vector<double> g2(static_cast<std::size_t>(dim));
    const std::vector<double> c1 = a_k.chart();
    const std::vector<double> c2 = a_k1.chart();
    model.gradient_chart(c1.data(), g1.data());
    model.gradient_chart(c2.data(), g2.data());

    BisectorLine line;
    double norm2 = 0.0;
    double offset = -(model.risk_chart(c2.data()) - model.risk_chart(c1.data()));
    for (int i = 0; i < dim; ++i) {
        const double ni = g2[static_cast<std::size_t>(i)] - g1[static_cast<std::size_t>(i)];
        norm2 += ni * ni;
        offset += c2[static_cast<std::size_t>(i)] * g2[static_cast<std::size_t>(i)] -
                  c1[static_cast<std::size_t>(i)] * g1[static_cast<std::size_t>(i)];
        if (i == 0) line.normal.x = ni;
        else line.normal.y = ni;
    }
    if (norm2 < 1e-28) {
        throw DegenerateError("decision weights share a risk gradient; bisector undefined");
    }
    line.offset = offset;
    return line;
}

Halfplane halfplane_toward(const BisectorLine& line, Vec2 seed) {
    if (dot(line.normal, seed) <= line.offset) {
        return {line.normal, line.offset};
    }
    return {{-line.normal.x, -line.normal.y}, -line.offset};
}

CellPolygon cell_polygon(const DetectionModel& model, const std::vector<Vec2>& seeds,
                         int k) {
    require_ternary(model);
    CellPolygon cell;
    cell.seed_index = k;
    std::vector<Vec2> poly = chart_triangle();
    const Vec2 seed = seeds[static_cast<std::size_t>(k)];
    const SimplexPoint seed_pt = SimplexPoint::ternary(seed.x, seed.y);
    for (int other = 0; other < static_cast<int>(seeds.size()); ++other) {
        if (other == k) continue;
        const Vec2 o = seeds[static_cast<std::size_t>(other)];
        const BisectorLine line = bisector(model, seed_pt, SimplexPoint::ternary(o.x, o.y));
        poly = clip_polygon(poly, halfplane_toward(line, seed));
        if (poly.empty()) break;
    }
    cell.vertices = std::move(poly);
    return cell;
}

std::pair<double, int> cell_max_divergence(const DetectionModel& model,
                                           const CellPolygon& cell, Vec2 seed) {
    if (cell.empty()) {
        throw DomainError("cell has no vertices");
    }
    double best = -1.0;
    int arg = 0;
    for (int i = 0; i < cell.vertex_count(); ++i) {
        const double d = div2(model, cell.vertices[static_cast<std::size_t>(i)], seed);
        if (d > best) {
            best = d;
            arg = i;
        }
    }
    return {best, arg};
}

std::pair<SimplexPoint, WeightVector>
minimax_centroid(const DetectionModel& model, const CellPolygon& cell) {
    require_ternary(model);
    const std::vector<Vec2>& verts = cell.vertices;
    const int n = cell.vertex_count();
    if (n == 0) throw DomainError("cell has no vertices");

    WeightVector wv;
    wv.w.assign(static_cast<std::size_t>(n), 0.0);

    if (n == 1) {
        wv.w[0] = 1.0;
        wv.support = {0};
        return {SimplexPoint::ternary(verts[0].x, verts[0].y), wv};
    }

    int ea = 0, eb = 1;
    CentroidCandidate best;
    if (n == 2 || all_collinear(verts, ea, eb)) {
        best = pair_candidate(model, verts, ea, eb);
    } else {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const CentroidCandidate c = pair_candidate(model, verts, i, j);
                if (c.overall_max < best.overall_max) best = c;
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                for (int k = j + 1; k < n; ++k) {
                    const CentroidCandidate c = triple_candidate(model, verts, i, j, k);
                    if (c.overall_max < best.overall_max) best = c;
                }
            }
        }
    }

    double sum = 0.0;
    for (int s = 0; s < best.support_size; ++s) {
        sum += best.coeff[static_cast<std::size_t>(s)];
    }
    for (int s = 0; s < best.support_size; ++s) {
        const int idx = best.support[static_cast<std::size_t>(s)];
        const double w = best.coeff[static_cast<std::size_t>(s)] / sum;
        if (w > 1e-12) {
            wv.w[static_cast<std::size_t>(idx)] = w;
            wv.support.push_back(idx);
        }
    }
    std::sort(wv.support.begin(), wv.support.end());
    return {SimplexPoint::ternary(best.point.x, best.point.y), wv};
}

SimplexPoint inverse_gradient(const DetectionModel& model, const double* g) {
    const int m = model.hypothesis_count();
    if (m == 2) {
        double lo = kInteriorMargin, hi = 1.0 - kInteriorMargin;
        double glo, ghi;
        model.gradient_chart(&lo, &glo);
        model.gradient_chart(&hi, &ghi);
        if (g[0] > glo || g[0] < ghi) {
            throw OutOfImageError("gradient value outside the image of the derivative");
        }
        for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
            const double mid = 0.5 * (lo + hi);
            double gm;
            model.gradient_chart(&mid, &gm);
            if (gm > g[0]) lo = mid;
            else hi = mid;
        }
        return SimplexPoint::binary(0.5 * (lo + hi));
    }
    require_ternary(model);

    const auto residual = [&](Vec2 x, double* r) {
        const double xc[2] = {x.x, x.y};
        double gx[2];
        model.gradient_chart(xc, gx);
        r[0] = gx[0] - g[0];
        r[1] = gx[1] - g[1];
        return std::hypot(r[0], r[1]);
    };

    static constexpr std::array<std::array<double, 2>, 5> starts = {{
        {1.0 / 3, 1.0 / 3}, {0.6, 0.2}, {0.2, 0.6}, {0.15, 0.15}, {0.4, 0.45}}};
    const double h = 1e-7;
    for (const auto& s : starts) {
        Vec2 x{s[0], s[1]};
        double r[2];
        double rn = residual(x, r);
        for (int it = 0; it < 80 && rn >= 1e-10; ++it) {
            double jac[2][2];
            for (int col = 0; col < 2; ++col) {
                Vec2 xp = x, xm = x;
                (col == 0 ? xp.x : xp.y) += h;
                (col == 0 ? xm.x : xm.y) -= h;
                double rp[2], rm[2];
                residual(xp, rp);
                residual(xm, rm);
                jac[0][col] = (rp[0] - rm[0]) / (2.0 * h);
                jac[1][col] = (rp[1] - rm[1]) / (2.0 * h);
            }
            const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
            if (std::fabs(det) < 1e-18) break;
            const double dx = (r[0] * jac[1][1] - r[1] * jac[0][1]) / det;
            const double dy = (r[1] * jac[0][0] - r[0] * jac[1][0]) / det;
            double t = 1.0;
            bool stepped = false;
            while (t > 1e-8) {
                const Vec2 xn = clamp_triangle({x.x - t * dx, x.y - t * dy}, kInteriorMargin);
                double rn2[2];
                const double n2 = residual(xn, rn2);
                if (n2 < rn * (1.0 - 1e-4 * t)) {
                    x = xn;
                    r[0] = rn2[0];
                    r[1] = rn2[1];
                    rn = n2;
                    stepped = true;
                    break;
                }
                t *= 0.5;
            }
            if (!stepped) break;
        }
        if (rn < 1e-9) return SimplexPoint::ternary(x.x, x.y);
    }

    // Nested bisection: the second gradient component decreases in the
    // second coordinate, so solve it inside an outer bisection on the first.
    const auto inner = [&](double x0, bool& bracketed) {
        double lo = kInteriorMargin;
        double hi = 1.0 - x0 - kInteriorMargin;
        bracketed = false;
        if (hi <= lo) return lo;
        double gl[2], gh[2];
        const double pl[2] = {x0, lo};
        const double ph[2] = {x0, hi};
        model.gradient_chart(pl, gl);
        model.gradient_chart(ph, gh);
        if (g[1] > gl[1] || g[1] < gh[1]) return lo;
        bracketed = true;
        for (int i = 0; i < 120 && hi - lo > 1e-15; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double pm[2] = {x0, mid};
            double gm[2];
            model.gradient_chart(pm, gm);
            if (gm[1] > g[1]) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    const auto outer_val = [&](double x0, bool& ok) {
        const double x1 = inner(x0, ok);
        if (!ok) return 0.0;
        const double p[2] = {x0, x1};
        double gx[2];
        model.gradient_chart(p, gx);
        return gx[0] - g[0];
    };
    const int kScan = 128;
    double prev_x0 = 0.0, prev_f = 0.0;
    bool prev_ok = false;
    for (int i = 0; i <= kScan; ++i) {
        const double x0 = kInteriorMargin + (1.0 - 3.0 * kInteriorMargin) * i / kScan;
        bool ok = false;
        const double f = outer_val(x0, ok);
        if (ok && prev_ok && ((prev_f >= 0.0) != (f >= 0.0))) {
            double lo = prev_x0, hi = x0;
            for (int it = 0; it < 120 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                bool mok = false;
                const double fm = outer_val(mid, mok);
                if (!mok) break;
                if ((fm >= 0.0) == (prev_f >= 0.0)) lo = mid;
                else hi = mid;
            }
            bool fok = false;
            const double x0r = 0.5 * (lo + hi);
            const double x1r = inner(x0r, fok);
            const Vec2 x{x0r, x1r};
            double r[2];
            if (fok && residual(x, r) < 1e-9) {
                return SimplexPoint::ternary(x.x, x.y);
            }
        }
        prev_x0 = x0;
        prev_f = f;
        prev_ok = ok;
    }
    throw OutOfImageError("no interior point attains the requested gradient");
}

std::pair<SimplexQuantizer, DesignReport>
design_minimax_simplex(const DetectionModel& model, int cells,
                       const SimplexDesignOptions& opts) {
    require_ternary(model);
    if (cells < 1) throw DomainError("cell count must be at least 1");

    if (cells == 1) {
        auto [w, worst] = minimax_weight(model);
        SimplexQuantizer q;
        q.seeds = {{w[0], w[1]}};
        CellPolygon whole;
        whole.seed_index = 0;
        whole.vertices = chart_triangle();
        q.cells = {whole};
        DesignReport r;
        r.iterations = 1;
        r.converged = true;
        r.max_divergence = worst;
        r.cell_maxima = {worst};
        return {q, r};
    }

    const int starts = std::max(1, opts.multistart);
    LloydRun best;
    const std::uint64_t base_offset = opts.seed * 131ull + 1ull;
    for (int s = 0; s < starts; ++s) {
        std::vector<Vec2> seeds(static_cast<std::size_t>(cells));
        for (int k = 0; k < cells; ++k) {
            const std::uint64_t idx =
                base_offset + static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(cells) +
                static_cast<std::uint64_t>(k);
            const Vec2 p = triangle_sample(idx);
            seeds[static_cast<std::size_t>(k)] =
                clamp_triangle(0.95 * p + 0.05 * Vec2{1.0 / 3, 1.0 / 3}, 1e-4);
        }
        LloydRun run = lloyd_simplex(model, std::move(seeds), opts);
        log_line(1, "simplex design K=%d start=%d D=%.12g iters=%d converged=%d", cells, s,
                 run.max_divergence, run.iterations, run.converged ? 1 : 0);
        if (run.max_divergence < best.max_divergence) best = std::move(run);
    }

    SimplexQuantizer q;
    q.seeds = best.seeds;
    q.cells = build_cells(model, q.seeds);
    DesignReport r;
    r.iterations = best.iterations;
    r.converged = best.converged;
    r.max_divergence = config_max(model, q.seeds, q.cells, &r.cell_maxima);
    return {q, r};
}

std::pair<int, SimplexPoint> quantize_simplex(const SimplexQuantizer& q,
                                              const DetectionModel& model,
                                              const SimplexPoint& p) {
    const std::vector<double> chart = p.chart();
    const Vec2 pc{chart[0], chart[1]};
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < q.cell_count(); ++k) {
        const double d = div2(model, pc, q.seeds[static_cast<std::size_t>(k)]);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return {best, q.seed_point(best)};
}

} // namespace brequant
