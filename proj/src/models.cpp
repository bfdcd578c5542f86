#include "brequant/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace brequant {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double clamp_unit_interior(double x) {
    return std::min(std::max(x, kInteriorMargin), 1.0 - kInteriorMargin);
}

} // namespace

double gaussian_tail(double alpha) {
    if (alpha > 40.0) return 0.0;
    if (alpha < -40.0) return 1.0;
    return 0.5 * std::erfc(alpha / kSqrt2);
}

double DetectionModel::risk(const SimplexPoint& p) const {
    return risk_chart(p.coords().data());
}

double DetectionModel::risk_mismatched(const SimplexPoint& p, const SimplexPoint& a) const {
    return risk_mismatched_chart(p.coords().data(), a.coords().data());
}

std::vector<double> DetectionModel::gradient(const SimplexPoint& a) const {
    std::vector<double> g(static_cast<std::size_t>(hypothesis_count() - 1));
    gradient_chart(a.coords().data(), g.data());
    return g;
}

// ---------------------------------------------------------------------------
// Gaussian-shift binary model

BinaryGaussianModel::BinaryGaussianModel(double mu, double sigma2, double c10, double c01)
    : mu_(mu), sigma2_(sigma2), c10_(c10), c01_(c01) {
    if (mu == 0.0 || !std::isfinite(mu)) {
        throw DomainError("gaussian model: mu must be finite and nonzero");
    }
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
        throw DomainError("gaussian model: sigma2 must be positive");
    }
    if (!(c10 > 0.0) || !(c01 > 0.0)) {
        throw DomainError("gaussian model: costs must be positive");
    }
    const double sigma = std::sqrt(sigma2);
    half_snr_ = mu / (2.0 * sigma);
    log_scale_ = sigma / mu;
}

ErrorProbabilities BinaryGaussianModel::error_probabilities(double a) const {
    if (!(a > 0.0) || !(a < 1.0)) {
        throw DomainError("decision weight must lie strictly inside (0,1), got " +
                          std::to_string(a));
    }
    const double aa = clamp_unit_interior(a);
    const double shift = log_scale_ * std::log(c10_ * aa / (c01_ * (1.0 - aa)));
    return {gaussian_tail(half_snr_ + shift), gaussian_tail(half_snr_ - shift)};
}

double BinaryGaussianModel::risk_mismatched(double p0, double a) const {
    const ErrorProbabilities e = error_probabilities(a);
    return c10_ * p0 * e.type1 + c01_ * (1.0 - p0) * e.type2;
}

double BinaryGaussianModel::risk(double p0) const {
    if (!(p0 >= 0.0) || !(p0 <= 1.0)) {
        throw DomainError("prior must lie in [0,1], got " + std::to_string(p0));
    }
    if (p0 == 0.0 || p0 == 1.0) return 0.0; // continuous extension
    return risk_mismatched(p0, p0);
}

double BinaryGaussianModel::derivative(double a) const {
    const ErrorProbabilities e = error_probabilities(a);
    return c10_ * e.type1 - c01_ * e.type2;
}

double BinaryGaussianModel::risk_chart(const double* p) const { return risk(p[0]); }

double BinaryGaussianModel::risk_mismatched_chart(const double* p, const double* a) const {
    return risk_mismatched(p[0], a[0]);
}

void BinaryGaussianModel::gradient_chart(const double* a, double* out) const {
    out[0] = derivative(a[0]);
}

// ---------------------------------------------------------------------------
// Exponential ternary model

ExponentialTernaryModel::ExponentialTernaryModel(double lambda0, double lambda1,
                                                 double lambda2)
    : lambda0_(lambda0), lambda1_(lambda1), lambda2_(lambda2) {
    if (!(lambda0 > lambda1 && lambda1 > lambda2 && lambda2 > 0.0)) {
        throw DomainError("exponential model requires lambda0 > lambda1 > lambda2 > 0");
    }
}

void ExponentialTernaryModel::rule_coefficients(const double* a, double& A, double& B,
                                                double& C) const {
    // Clamp the weight into the simplex interior before taking logs.
    double a0 = std::max(a[0], kInteriorMargin);
    double a1 = std::max(a[1], kInteriorMargin);
    double a2 = std::max(1.0 - a[0] - a[1], kInteriorMargin);
    const double sum = a0 + a1 + a2;
    a0 /= sum; a1 /= sum; a2 /= sum;

    const double t01 = std::log(a0 * lambda0_ / (a1 * lambda1_)) / (lambda0_ - lambda1_);
    const double t12 = std::log(a1 * lambda1_ / (a2 * lambda2_)) / (lambda1_ - lambda2_);
    double u0 = std::max(0.0, t01);
    double u1 = std::max(0.0, t12);
    if (u0 > u1) {
        // The middle hypothesis never wins; the rule reduces to a single
        // threshold at the h0/h2 crossover.
        const double t02 = std::log(a0 * lambda0_ / (a2 * lambda2_)) / (lambda0_ - lambda2_);
        u0 = u1 = std::max(0.0, t02);
    }
    A = std::exp(-lambda0_ * u0);
    B = 1.0 - std::exp(-lambda1_ * u0) + std::exp(-lambda1_ * u1);
    C = 1.0 - std::exp(-lambda2_ * u1);
}

double ExponentialTernaryModel::risk_mismatched_chart(const double* p, const double* a) const {
    if (!(a[0] > 0.0) || !(a[1] > 0.0) || !(1.0 - a[0] - a[1] > 0.0)) {
        throw DomainError("decision weight must lie strictly inside the simplex");
    }
    double A, B, C;
    rule_coefficients(a, A, B, C);
    return p[0] * A + p[1] * B + (1.0 - p[0] - p[1]) * C;
}

double ExponentialTernaryModel::risk_chart(const double* p) const {
    const double p0 = p[0];
    const double p1 = p[1];
    const double p2 = 1.0 - p0 - p1;
    if (p0 < -kSimplexSumTol || p1 < -kSimplexSumTol || p2 < -kSimplexSumTol) {
        throw DomainError("prior lies outside the simplex");
    }
    // Exact zero at the vertices; elsewhere evaluate the matched rule with
    // the weight clamped into the interior.
    if (p0 >= 1.0 - kSimplexSumTol || p1 >= 1.0 - kSimplexSumTol ||
        p2 >= 1.0 - kSimplexSumTol) {
        return 0.0;
    }
    double A, B, C;
    rule_coefficients(p, A, B, C);
    return p0 * A + p1 * B + p2 * C;
}

void ExponentialTernaryModel::gradient_chart(const double* a, double* out) const {
    // J(p, a) is affine in p with coefficients (A, B, C), and the rule is
    // optimal at a = p, so the envelope theorem gives the gradient of the
    // risk in the (p0, p1) chart directly. The coefficients are continuous
    // across threshold-clamp loci, so this is the one-sided limit there.
    double A, B, C;
    rule_coefficients(a, A, B, C);
    out[0] = A - C;
    out[1] = B - C;
}

std::pair<double, double> ExponentialTernaryModel::thresholds(const SimplexPoint& a) const {
    double a0 = std::max(a[0], kInteriorMargin);
    double a1 = std::max(a[1], kInteriorMargin);
    double a2 = std::max(a[2], kInteriorMargin);
    const double sum = a0 + a1 + a2;
    a0 /= sum; a1 /= sum; a2 /= sum;
    const double g01 =
        std::max(0.0, std::log(a0 * lambda0_ / (a1 * lambda1_)) / (lambda0_ - lambda1_));
    const double g12 =
        std::max(0.0, std::log(a1 * lambda1_ / (a2 * lambda2_)) / (lambda1_ - lambda2_));
    return {g01, g12};
}

} // namespace brequant
