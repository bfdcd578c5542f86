#ifndef BREQUANT_SERIALIZE_HPP
#define BREQUANT_SERIALIZE_HPP

#include <memory>
#include <string>
#include <variant>

#include "brequant/analysis.hpp"
#include "brequant/models.hpp"
#include "brequant/quantizer_scalar.hpp"
#include "brequant/quantizer_simplex.hpp"

namespace brequant {

struct GaussianParams {
    double mu = 1.0;
    double sigma2 = 1.0;
    double c10 = 1.0;
    double c01 = 1.0;
};

struct ExponentialParams {
    double lambda0 = 5.0;
    double lambda1 = 4.0;
    double lambda2 = 3.0;
};

using ModelParams = std::variant<GaussianParams, ExponentialParams>;

std::unique_ptr<DetectionModel> make_model(const ModelParams& params);

/// A designed quantizer together with the model it was designed for and the
/// design outcome; the unit of (de)serialization.
struct QuantizerArtifact {
    ModelParams model;
    std::variant<ScalarQuantizer, SimplexQuantizer> quantizer;
    DesignReport report;

    int hypothesis_count() const;
    int cell_count() const;
};

/// Serialize with doubles at 17 significant digits, so parsing recovers the
/// exact bit pattern.
std::string to_json(const QuantizerArtifact& artifact);

/// Parse and validate; throws ParseError on schema violations.
QuantizerArtifact from_json(const std::string& text);

} // namespace brequant

#endif
