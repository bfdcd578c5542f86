#ifndef BREQUANT_QUANTIZER_SIMPLEX_HPP
#define BREQUANT_QUANTIZER_SIMPLEX_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "brequant/divergence.hpp"
#include "brequant/quantizer_scalar.hpp" // DesignReport

namespace brequant {

/// Point in the (p0, p1) chart of the ternary simplex.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Closed halfplane { x : normal . x <= offset } in the chart, oriented so
/// that it contains its seed.
struct Halfplane {
    Vec2 normal;
    double offset = 0.0;
    bool contains(Vec2 p, double tol = 0.0) const {
        return dot(normal, p) <= offset + tol;
    }
};

/// The locus of priors equidistant in divergence from two decision weights.
/// For this divergence it is a straight line in the chart:
/// normal . pi = offset with normal = grad J(a2) - grad J(a1).
struct BisectorLine {
    Vec2 normal;
    double offset = 0.0;
};

/// One Voronoi cell: a convex polygon in the chart, vertices in
/// counterclockwise order. An empty vertex list marks an empty cell.
struct CellPolygon {
    int seed_index = -1;
    std::vector<Vec2> vertices;
    bool empty() const { return vertices.empty(); }
    int vertex_count() const { return static_cast<int>(vertices.size()); }
};

/// A K-cell quantizer of the ternary simplex: seeds (decision weights) in
/// chart coordinates plus their Voronoi cell polygons.
struct SimplexQuantizer {
    std::vector<Vec2> seeds;
    std::vector<CellPolygon> cells;
    int cell_count() const { return static_cast<int>(seeds.size()); }
    SimplexPoint seed_point(int k) const;
};

/// Convex combination coefficients over a cell's vertices; the entries with
/// w_i > 0 are the support vertices pinning the minimax centroid.
struct WeightVector {
    std::vector<double> w;
    std::vector<int> support;
};

struct SimplexDesignOptions {
    double movement_tol = 1e-8; // max seed movement at convergence
    int max_iterations = 500;
    int multistart = 8;         // starts drawn from a low-discrepancy sequence
    std::uint64_t seed = 0;
};

/// Divergence bisector of two distinct interior decision weights.
/// Throws DegenerateError when the weights' gradients coincide (the
/// divergence cannot separate them).
BisectorLine bisector(const DetectionModel& model, const SimplexPoint& a_k,
                      const SimplexPoint& a_k1);

/// Halfplane bounded by `line` that contains `seed`.
Halfplane halfplane_toward(const BisectorLine& line, Vec2 seed);

/// Voronoi cell of seeds[k]: the chart triangle clipped successively by the
/// bisector halfplanes against every other seed. May be empty.
CellPolygon cell_polygon(const DetectionModel& model,
                         const std::vector<Vec2>& seeds, int k);

/// Worst vertex divergence of a cell with respect to a seed, and the index
/// of the attaining vertex. Interior points never exceed it.
std::pair<double, int> cell_max_divergence(const DetectionModel& model,
                                           const CellPolygon& cell, Vec2 seed);

/// Decision weight minimizing the worst divergence from the cell, which is
/// attained at cell vertices. Solved exactly by enumerating candidate
/// support sets: each vertex pair by slope matching along its segment, each
/// vertex triple by Newton equalization of the three divergences; the
/// candidate with the smallest overall vertex maximum wins. Also returns
/// the convex combination expressing the centroid over the support.
std::pair<SimplexPoint, WeightVector>
minimax_centroid(const DetectionModel& model, const CellPolygon& cell);

/// Solve grad J(x) = g for an interior chart point x, by damped Newton with
/// a nested-bisection fallback. Throws OutOfImageError when g has no
/// interior preimage within the iteration budget.
SimplexPoint inverse_gradient(const DetectionModel& model, const double* g);

/// Minimax quantizer design on the ternary simplex: alternate cell
/// construction and per-cell minimax centroids until seeds stop moving.
/// Empty cells are reseeded at the currently worst-covered point. Runs
/// `multistart` independent starts and returns the best.
std::pair<SimplexQuantizer, DesignReport>
design_minimax_simplex(const DetectionModel& model, int cells,
                       const SimplexDesignOptions& opts = {});

/// Cell index (0-based) by divergence-nearest seed, ties to the lowest
/// index, plus that seed.
std::pair<int, SimplexPoint> quantize_simplex(const SimplexQuantizer& q,
                                              const DetectionModel& model,
                                              const SimplexPoint& p);

/// Signed-area based polygon area (nonnegative for counterclockwise order).
double polygon_area(const CellPolygon& cell);

/// True if p lies in the closed cell polygon (within tol of every edge).
bool polygon_contains(const CellPolygon& cell, Vec2 p, double tol = 1e-9);

} // namespace brequant

#endif
