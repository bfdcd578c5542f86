#include "brequant/serialize.hpp"

#include <cstdio>
#include <string>

#include <json.hpp>

#include "brequant/version.hpp"

namespace brequant {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_array(std::string& out, const std::vector<double>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        out += fmt(v[i]);
    }
    out += ']';
}

std::vector<double> barycentric(Vec2 p) { return {p.x, p.y, 1.0 - p.x - p.y}; }

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(std::string("missing field \"") + key + "\"");
    }
    return *it;
}

double require_number(const nlohmann::json& j, const char* key) {
    const nlohmann::json& v = require(j, key);
    if (!v.is_number()) {
        throw ParseError(std::string("field \"") + key + "\" must be a number");
    }
    return v.get<double>();
}

} // namespace

std::unique_ptr<DetectionModel> make_model(const ModelParams& params) {
    if (const auto* g = std::get_if<GaussianParams>(&params)) {
        return std::make_unique<BinaryGaussianModel>(g->mu, g->sigma2, g->c10, g->c01);
    }
    const auto& e = std::get<ExponentialParams>(params);
    return std::make_unique<ExponentialTernaryModel>(e.lambda0, e.lambda1, e.lambda2);
}

int QuantizerArtifact::hypothesis_count() const {
    return std::holds_alternative<ScalarQuantizer>(quantizer) ? 2 : 3;
}

int QuantizerArtifact::cell_count() const {
    if (const auto* s = std::get_if<ScalarQuantizer>(&quantizer)) return s->cell_count();
    return std::get<SimplexQuantizer>(quantizer).cell_count();
}

std::string to_json(const QuantizerArtifact& artifact) {
    std::string out;
    out += "{\n  \"model\": ";
    if (const auto* g = std::get_if<GaussianParams>(&artifact.model)) {
        out += "{\"kind\": \"gaussian\", \"mu\": " + fmt(g->mu) +
               ", \"sigma2\": " + fmt(g->sigma2) + ", \"c10\": " + fmt(g->c10) +
               ", \"c01\": " + fmt(g->c01) + "}";
    } else {
        const auto& e = std::get<ExponentialParams>(artifact.model);
        out += "{\"kind\": \"exponential\", \"lambda\": [" + fmt(e.lambda0) + ", " +
               fmt(e.lambda1) + ", " + fmt(e.lambda2) + "]}";
    }
    out += ",\n  \"M\": " + std::to_string(artifact.hypothesis_count());
    out += ",\n  \"K\": " + std::to_string(artifact.cell_count());

    out += ",\n  \"weights\": [";
    if (const auto* s = std::get_if<ScalarQuantizer>(&artifact.quantizer)) {
        for (std::size_t i = 0; i < s->weights.size(); ++i) {
            if (i > 0) out += ", ";
            emit_array(out, {s->weights[i], 1.0 - s->weights[i]});
        }
        out += "]";
        out += ",\n  \"boundaries\": ";
        emit_array(out, s->boundaries);
    } else {
        const auto& q = std::get<SimplexQuantizer>(artifact.quantizer);
        for (std::size_t i = 0; i < q.seeds.size(); ++i) {
            if (i > 0) out += ", ";
            emit_array(out, barycentric(q.seeds[i]));
        }
        out += "]";
        out += ",\n  \"cells\": [";
        for (std::size_t i = 0; i < q.cells.size(); ++i) {
            if (i > 0) out += ", ";
            out += "{\"seed\": ";
            emit_array(out, barycentric(q.seeds[i]));
            out += ", \"vertices\": [";
            for (std::size_t v = 0; v < q.cells[i].vertices.size(); ++v) {
                if (v > 0) out += ", ";
                emit_array(out, barycentric(q.cells[i].vertices[v]));
            }
            out += "]}";
        }
        out += "]";
    }

    out += ",\n  \"max_divergence\": " + fmt(artifact.report.max_divergence);
    out += ",\n  \"converged\": ";
    out += artifact.report.converged ? "true" : "false";
    out += ",\n  \"iterations\": " + std::to_string(artifact.report.iterations);
    out += ",\n  \"tool_version\": \"" BREQUANT_VERSION "\"\n}\n";
    return out;
}

QuantizerArtifact from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        QuantizerArtifact artifact;
        const nlohmann::json& jm = require(j, "model");
        const std::string kind = require(jm, "kind").get<std::string>();
        int expected_m = 0;
        if (kind == "gaussian") {
            GaussianParams g;
            g.mu = require_number(jm, "mu");
            g.sigma2 = require_number(jm, "sigma2");
            g.c10 = require_number(jm, "c10");
            g.c01 = require_number(jm, "c01");
            artifact.model = g;
            expected_m = 2;
        } else if (kind == "exponential") {
            const nlohmann::json& jl = require(jm, "lambda");
            if (!jl.is_array() || jl.size() != 3) {
                throw ParseError("field \"lambda\" must be an array of 3 rates");
            }
            ExponentialParams e;
            e.lambda0 = jl[0].get<double>();
            e.lambda1 = jl[1].get<double>();
            e.lambda2 = jl[2].get<double>();
            artifact.model = e;
            expected_m = 3;
        } else {
            throw ParseError("unknown model kind \"" + kind + "\"");
        }

        const int m = require(j, "M").get<int>();
        const int k = require(j, "K").get<int>();
        if (m != expected_m) throw ParseError("field \"M\" inconsistent with the model kind");
        if (k < 1) throw ParseError("field \"K\" must be at least 1");

        const nlohmann::json& jw = require(j, "weights");
        if (!jw.is_array() || static_cast<int>(jw.size()) != k) {
            throw ParseError("field \"weights\" must list K weight vectors");
        }
        for (const auto& w : jw) {
            if (!w.is_array() || static_cast<int>(w.size()) != m) {
                throw ParseError("each weight must have M coordinates");
            }
        }

        if (m == 2) {
            ScalarQuantizer q;
            for (const auto& w : jw) q.weights.push_back(w[0].get<double>());
            const nlohmann::json& jb = require(j, "boundaries");
            if (!jb.is_array() || static_cast<int>(jb.size()) != k - 1) {
                throw ParseError("field \"boundaries\" must list K-1 values");
            }
            double prev = 0.0;
            for (const auto& b : jb) {
                const double bv = b.get<double>();
                if (!(bv > prev && bv < 1.0)) {
                    throw ParseError("boundaries must increase strictly inside (0,1)");
                }
                q.boundaries.push_back(bv);
                prev = bv;
            }
            artifact.quantizer = std::move(q);
        } else {
            SimplexQuantizer q;
            for (const auto& w : jw) {
                q.seeds.push_back({w[0].get<double>(), w[1].get<double>()});
            }
            const nlohmann::json& jc = require(j, "cells");
            if (!jc.is_array() || static_cast<int>(jc.size()) != k) {
                throw ParseError("field \"cells\" must list K cells");
            }
            int idx = 0;
            for (const auto& c : jc) {
                CellPolygon poly;
                poly.seed_index = idx++;
                const nlohmann::json& jv = require(c, "vertices");
                if (!jv.is_array()) throw ParseError("cell \"vertices\" must be an array");
                for (const auto& v : jv) {
                    if (!v.is_array() || v.size() != 3) {
                        throw ParseError("each cell vertex must have 3 coordinates");
                    }
                    poly.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
                }
                q.cells.push_back(std::move(poly));
            }
            artifact.quantizer = std::move(q);
        }

        artifact.report.max_divergence = require_number(j, "max_divergence");
        const nlohmann::json& jconv = require(j, "converged");
        if (!jconv.is_boolean()) throw ParseError("field \"converged\" must be a boolean");
        artifact.report.converged = jconv.get<bool>();
        artifact.report.iterations = require(j, "iterations").get<int>();
        require(j, "tool_version");
        return artifact;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed quantizer JSON: ") + e.what());
    }
}

} // namespace brequant
