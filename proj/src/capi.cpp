#include "brequant.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <string>
#include <variant>

#include "brequant/analysis.hpp"
#include "brequant/divergence.hpp"
#include "brequant/serialize.hpp"
#include "brequant/version.hpp"

using namespace brequant;

struct bq_model {
    ModelParams params;
    std::unique_ptr<DetectionModel> impl;
};

struct bq_quantizer {
    QuantizerArtifact artifact;
    std::unique_ptr<DetectionModel> impl; // rebuilt from artifact.model
    double mean_divergence = std::numeric_limits<double>::quiet_NaN();
};

struct bq_sweep {
    SweepResult result;
};

namespace {

thread_local std::string t_last_error;

bq_status fail(bq_status code, const std::string& message) {
    t_last_error = message;
    return code;
}

bq_status run(const std::function<void()>& body) {
    try {
        body();
        return BQ_OK;
    } catch (const DomainError& e) {
        return fail(BQ_ERROR_DOMAIN, e.what());
    } catch (const BracketError& e) {
        return fail(BQ_ERROR_BRACKET, e.what());
    } catch (const DegenerateError& e) {
        return fail(BQ_ERROR_DEGENERATE, e.what());
    } catch (const ConvergenceError& e) {
        return fail(BQ_ERROR_NO_CONVERGENCE, e.what());
    } catch (const OutOfImageError& e) {
        return fail(BQ_ERROR_OUT_OF_IMAGE, e.what());
    } catch (const InsufficientDataError& e) {
        return fail(BQ_ERROR_INSUFFICIENT_DATA, e.what());
    } catch (const ParseError& e) {
        return fail(BQ_ERROR_PARSE, e.what());
    } catch (const std::exception& e) {
        return fail(BQ_ERROR_INTERNAL, e.what());
    }
}

bq_status check_vector(const bq_model* model, const double* v, size_t len) {
    if (model == nullptr || v == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "null argument");
    }
    if (len != static_cast<size_t>(model->impl->hypothesis_count())) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "vector length does not match M");
    }
    return BQ_OK;
}

SimplexPoint to_point(const double* v, size_t len) {
    return SimplexPoint(std::vector<double>(v, v + len));
}

ScalarDesignOptions scalar_options(const bq_design_options* opts) {
    ScalarDesignOptions o;
    if (opts != nullptr) {
        if (opts->tol > 0.0) o.tol = opts->tol;
        if (opts->max_iterations > 0) o.max_iterations = opts->max_iterations;
        if (opts->multistart > 0) o.multistart = opts->multistart;
        o.seed = opts->seed;
    }
    return o;
}

SimplexDesignOptions simplex_options(const bq_design_options* opts) {
    SimplexDesignOptions o;
    if (opts != nullptr) {
        if (opts->tol > 0.0) o.movement_tol = opts->tol;
        if (opts->max_iterations > 0) o.max_iterations = opts->max_iterations;
        if (opts->multistart > 0) o.multistart = opts->multistart;
        o.seed = opts->seed;
    }
    return o;
}

} // namespace

const char* bq_version(void) { return BREQUANT_VERSION; }

const char* bq_status_name(bq_status status) {
    switch (status) {
        case BQ_OK: return "ok";
        case BQ_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case BQ_ERROR_DOMAIN: return "domain error";
        case BQ_ERROR_BRACKET: return "bracket error";
        case BQ_ERROR_DEGENERATE: return "degenerate error";
        case BQ_ERROR_NO_CONVERGENCE: return "no convergence";
        case BQ_ERROR_OUT_OF_IMAGE: return "out of image";
        case BQ_ERROR_INSUFFICIENT_DATA: return "insufficient data";
        case BQ_ERROR_PARSE: return "parse error";
        case BQ_ERROR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* bq_last_error(void) { return t_last_error.c_str(); }

bq_status bq_model_gaussian_create(double mu, double sigma2, double c10, double c01,
                                   bq_model** out) {
    if (out == nullptr) return fail(BQ_ERROR_INVALID_ARGUMENT, "null output pointer");
    return run([&] {
        auto m = std::make_unique<bq_model>();
        m->params = GaussianParams{mu, sigma2, c10, c01};
        m->impl = make_model(m->params);
        *out = m.release();
    });
}

bq_status bq_model_exponential_create(double lambda0, double lambda1, double lambda2,
                                      bq_model** out) {
    if (out == nullptr) return fail(BQ_ERROR_INVALID_ARGUMENT, "null output pointer");
    return run([&] {
        auto m = std::make_unique<bq_model>();
        m->params = ExponentialParams{lambda0, lambda1, lambda2};
        m->impl = make_model(m->params);
        *out = m.release();
    });
}

void bq_model_free(bq_model* model) { delete model; }

int bq_model_hypothesis_count(const bq_model* model) {
    return model == nullptr ? 0 : model->impl->hypothesis_count();
}

bq_status bq_model_risk(const bq_model* model, const double* prior, size_t len,
                        double* out) {
    if (out == nullptr) return fail(BQ_ERROR_INVALID_ARGUMENT, "null output pointer");
    if (bq_status s = check_vector(model, prior, len); s != BQ_OK) return s;
    return run([&] { *out = model->impl->risk(to_point(prior, len)); });
}

bq_status bq_model_risk_mismatched(const bq_model* model, const double* prior,
                                   const double* weight, size_t len, double* out) {
    if (out == nullptr) return fail(BQ_ERROR_INVALID_ARGUMENT, "null output pointer");
    if (bq_status s = check_vector(model, prior, len); s != BQ_OK) return s;
    if (bq_status s = check_vector(model, weight, len); s != BQ_OK) return s;
    return run([&] {
        *out = model->impl->risk_mismatched(to_point(prior, len), to_point(weight, len));
    });
}

bq_status bq_model_divergence(const bq_model* model, const double* prior,
                              const double* weight, size_t len, double* out) {
    if (out == nullptr) return fail(BQ_ERROR_INVALID_ARGUMENT, "null output pointer");
    if (bq_status s = check_vector(model, prior, len); s != BQ_OK) return s;
    if (bq_status s = check_vector(model, weight, len); s != BQ_OK) return s;
    return run([&] {
        *out = bre_divergence(*model->impl, to_point(prior, len), to_point(weight, len));
    });
}

bq_status bq_model_minimax_weight(const bq_model* model, double* weight_out,
                                  double* worst_out) {
    if (model == nullptr || weight_out == nullptr || worst_out == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "null argument");
    }
    return run([&] {
        const auto [w, worst] = minimax_weight(*model->impl);
        for (int i = 0; i < w.dim(); ++i) weight_out[i] = w[static_cast<std::size_t>(i)];
        *worst_out = worst;
    });
}

void bq_design_options_defaults(bq_design_options* opts) {
    if (opts == nullptr) return;
    opts->tol = 0.0;
    opts->max_iterations = 0;
    opts->multistart = 0;
    opts->seed = 0;
    opts->objective = BQ_OBJECTIVE_MINIMAX;
}

bq_status bq_design(const bq_model* model, int cells, const bq_design_options* opts,
                    bq_quantizer** out) {
    if (model == nullptr || out == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "null argument");
    }
    const int objective = opts == nullptr ? BQ_OBJECTIVE_MINIMAX : opts->objective;
    if (objective == BQ_OBJECTIVE_MEAN && model->impl->hypothesis_count() != 2) {
        return fail(BQ_ERROR_INVALID_ARGUMENT,
                    "mean-divergence designs are available for binary models only");
    }
    return run([&] {
        auto q = std::make_unique<bq_quantizer>();
        q->artifact.model = model->params;
        if (model->impl->hypothesis_count() == 2) {
            if (objective == BQ_OBJECTIVE_MEAN) {
                MeanDesignResult r = design_mean_bre(*model->impl, cells, scalar_options(opts));
                q->artifact.quantizer = std::move(r.quantizer);
                q->artifact.report = std::move(r.report);
                q->mean_divergence = r.mean_divergence;
            } else {
                auto [quant, report] = design_minimax(*model->impl, cells, scalar_options(opts));
                q->artifact.quantizer = std::move(quant);
                q->artifact.report = std::move(report);
            }
        } else {
            auto [quant, report] =
                design_minimax_simplex(*model->impl, cells, simplex_options(opts));
            q->artifact.quantizer = std::move(quant);
            q->artifact.report = std::move(report);
        }
        q->impl = make_model(q->artifact.model);
        *out = q.release();
    });
}

void bq_quantizer_free(bq_quantizer* q) { delete q; }

int bq_quantizer_hypothesis_count(const bq_quantizer* q) {
    return q == nullptr ? 0 : q->artifact.hypothesis_count();
}

int bq_quantizer_cell_count(const bq_quantizer* q) {
    return q == nullptr ? 0 : q->artifact.cell_count();
}

int bq_quantizer_converged(const bq_quantizer* q) {
    return (q != nullptr && q->artifact.report.converged) ? 1 : 0;
}

int bq_quantizer_iterations(const bq_quantizer* q) {
    return q == nullptr ? 0 : q->artifact.report.iterations;
}

double bq_quantizer_max_divergence(const bq_quantizer* q) {
    return q == nullptr ? std::numeric_limits<double>::quiet_NaN()
                        : q->artifact.report.max_divergence;
}

double bq_quantizer_mean_divergence(const bq_quantizer* q) {
    return q == nullptr ? std::numeric_limits<double>::quiet_NaN() : q->mean_divergence;
}

bq_status bq_quantizer_weight(const bq_quantizer* q, int cell, double* weight_out) {
    if (q == nullptr || weight_out == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "null argument");
    }
    if (cell < 0 || cell >= q->artifact.cell_count()) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "cell index out of range");
    }
    if (const auto* s = std::get_if<ScalarQuantizer>(&q->artifact.quantizer)) {
        weight_out[0] = s->weights[static_cast<std::size_t>(cell)];
        weight_out[1] = 1.0 - weight_out[0];
    } else {
        const auto& sq = std::get<SimplexQuantizer>(q->artifact.quantizer);
        const Vec2 seed = sq.seeds[static_cast<std::size_t>(cell)];
        weight_out[0] = seed.x;
        weight_out[1] = seed.y;
        weight_out[2] = 1.0 - seed.x - seed.y;
    }
    return BQ_OK;
}

bq_status bq_quantizer_boundaries(const bq_quantizer* q, double* out) {
    if (q == nullptr || out == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "null argument");
    }
    const auto* s = std::get_if<ScalarQuantizer>(&q->artifact.quantizer);
    if (s == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "boundaries exist for binary quantizers only");
    }
    std::memcpy(out, s->boundaries.data(), s->boundaries.size() * sizeof(double));
    return BQ_OK;
}

bq_status bq_quantizer_cell_vertex_count(const bq_quantizer* q, int cell, int* out) {
    if (q == nullptr || out == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "null argument");
    }
    const auto* sq = std::get_if<SimplexQuantizer>(&q->artifact.quantizer);
    if (sq == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "cells exist for ternary quantizers only");
    }
    if (cell < 0 || cell >= sq->cell_count()) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "cell index out of range");
    }
    *out = sq->cells[static_cast<std::size_t>(cell)].vertex_count();
    return BQ_OK;
}

bq_status bq_quantizer_cell_vertex(const bq_quantizer* q, int cell, int vertex,
                                   double* out) {
    if (q == nullptr || out == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "null argument");
    }
    const auto* sq = std::get_if<SimplexQuantizer>(&q->artifact.quantizer);
    if (sq == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "cells exist for ternary quantizers only");
    }
    if (cell < 0 || cell >= sq->cell_count()) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "cell index out of range");
    }
    const CellPolygon& poly = sq->cells[static_cast<std::size_t>(cell)];
    if (vertex < 0 || vertex >= poly.vertex_count()) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "vertex index out of range");
    }
    const Vec2 v = poly.vertices[static_cast<std::size_t>(vertex)];
    out[0] = v.x;
    out[1] = v.y;
    out[2] = 1.0 - v.x - v.y;
    return BQ_OK;
}

bq_status bq_quantize(const bq_quantizer* q, const double* prior, size_t len,
                      int* cell_out, double* weight_out) {
    if (q == nullptr || prior == nullptr || cell_out == nullptr || weight_out == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "null argument");
    }
    if (len != static_cast<size_t>(q->artifact.hypothesis_count())) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "vector length does not match M");
    }
    return run([&] {
        if (const auto* s = std::get_if<ScalarQuantizer>(&q->artifact.quantizer)) {
            const auto [cell, weight] = quantize(*s, prior[0]);
            *cell_out = cell;
            weight_out[0] = weight;
            weight_out[1] = 1.0 - weight;
        } else {
            const auto& sq = std::get<SimplexQuantizer>(q->artifact.quantizer);
            const auto [cell, seed] = quantize_simplex(sq, *q->impl, to_point(prior, len));
            *cell_out = cell;
            for (int i = 0; i < 3; ++i) weight_out[i] = seed[static_cast<std::size_t>(i)];
        }
    });
}

bq_status bq_quantizer_model(const bq_quantizer* q, bq_model** out) {
    if (q == nullptr || out == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "null argument");
    }
    return run([&] {
        auto m = std::make_unique<bq_model>();
        m->params = q->artifact.model;
        m->impl = make_model(m->params);
        *out = m.release();
    });
}

bq_status bq_quantizer_to_json(const bq_quantizer* q, char** out) {
    if (q == nullptr || out == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "null argument");
    }
    return run([&] {
        const std::string text = to_json(q->artifact);
        char* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out = buf;
    });
}

bq_status bq_quantizer_from_json(const char* json, bq_quantizer** out) {
    if (json == nullptr || out == nullptr) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "null argument");
    }
    return run([&] {
        auto q = std::make_unique<bq_quantizer>();
        q->artifact = from_json(json);
        q->impl = make_model(q->artifact.model);
        *out = q.release();
    });
}

void bq_string_free(char* s) { delete[] s; }

bq_status bq_sweep_run(const bq_model* model, const int* cell_counts, size_t n,
                       const bq_design_options* opts, bq_sweep** out) {
    if (model == nullptr || cell_counts == nullptr || out == nullptr || n == 0) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "null argument or empty cell list");
    }
    return run([&] {
        SweepOptions so;
        so.scalar = scalar_options(opts);
        so.simplex = simplex_options(opts);
        auto s = std::make_unique<bq_sweep>();
        s->result = sweep(*model->impl, std::vector<int>(cell_counts, cell_counts + n), so);
        *out = s.release();
    });
}

void bq_sweep_free(bq_sweep* s) { delete s; }

size_t bq_sweep_size(const bq_sweep* s) {
    return s == nullptr ? 0 : s->result.entries.size();
}

bq_status bq_sweep_entry(const bq_sweep* s, size_t index, int* cells_out,
                         double* max_divergence_out, int* converged_out) {
    if (s == nullptr || index >= s->result.entries.size()) {
        return fail(BQ_ERROR_INVALID_ARGUMENT, "sweep index out of range");
    }
    const SweepEntry& e = s->result.entries[index];
    if (cells_out != nullptr) *cells_out = e.cells;
    if (max_divergence_out != nullptr) *max_divergence_out = e.max_divergence;
    if (converged_out != nullptr) *converged_out = e.converged ? 1 : 0;
    return BQ_OK;
}

bq_status bq_sweep_slope(const bq_sweep* s, int k_min, double* slope_out,
                         double* intercept_out, double* r2_out) {
    if (s == nullptr) return fail(BQ_ERROR_INVALID_ARGUMENT, "null sweep");
    return run([&] {
        const SlopeFit fit = loglog_slope(s->result, k_min);
        if (slope_out != nullptr) *slope_out = fit.slope;
        if (intercept_out != nullptr) *intercept_out = fit.intercept;
        if (r2_out != nullptr) *r2_out = fit.r2;
    });
}
