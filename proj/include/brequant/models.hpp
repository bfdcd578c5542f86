#ifndef BREQUANT_MODELS_HPP
#define BREQUANT_MODELS_HPP

#include <memory>
#include <utility>
#include <vector>

#include "brequant/simplex_point.hpp"

namespace brequant {

/// Upper tail probability of the standard normal, Q(alpha).
/// Evaluated through the complementary error function for relative
/// accuracy deep in the tails; saturates to 0/1 for |alpha| > 40.
double gaussian_tail(double alpha);

/// The two conditional error probabilities of a binary decision rule.
struct ErrorProbabilities {
    double type1; // decide h1 when h0 is true
    double type2; // decide h0 when h1 is true
};

/// A detection problem exposing its Bayes risk surface over the prior
/// simplex. Risk J(p) is the cost of the optimal rule when the prior p is
/// known; the mismatched risk J(p, a) is the cost when the rule's threshold
/// is set with decision weight a instead. J(p, a) is affine in p, tangent
/// to the concave J at p = a.
///
/// Chart arrays hold the first M-1 barycentric coordinates. All methods are
/// pure and safe to call concurrently.
class DetectionModel {
public:
    virtual ~DetectionModel() = default;

    /// Number of hypotheses M.
    virtual int hypothesis_count() const = 0;

    /// Bayes risk J(p). Zero at simplex vertices by continuous extension.
    virtual double risk_chart(const double* p) const = 0;

    /// Mismatched Bayes risk J(p, a). Requires an interior a.
    virtual double risk_mismatched_chart(const double* p, const double* a) const = 0;

    /// Gradient of J at a in the chart, written to out[0 .. M-2].
    virtual void gradient_chart(const double* a, double* out) const = 0;

    double risk(const SimplexPoint& p) const;
    double risk_mismatched(const SimplexPoint& p, const SimplexPoint& a) const;
    std::vector<double> gradient(const SimplexPoint& a) const;
};

/// Binary detection of a constant signal in additive white Gaussian noise:
/// Y = s_m + W with s_0 = 0, s_1 = mu, W ~ N(0, sigma2), and error costs
/// c10 (type I) and c01 (type II).
class BinaryGaussianModel final : public DetectionModel {
public:
    BinaryGaussianModel(double mu, double sigma2, double c10, double c01);

    int hypothesis_count() const override { return 2; }
    double risk_chart(const double* p) const override;
    double risk_mismatched_chart(const double* p, const double* a) const override;
    void gradient_chart(const double* a, double* out) const override;

    /// Conditional error probabilities of the threshold rule with weight a.
    ErrorProbabilities error_probabilities(double a) const;

    /// Scalar derivative J'(a) = c10 pI(a) - c01 pII(a); the slope of the
    /// tangent to J at a. Monotone decreasing by concavity.
    double derivative(double a) const;

    double risk(double p0) const;
    double risk_mismatched(double p0, double a) const;

    double mu() const { return mu_; }
    double sigma2() const { return sigma2_; }
    double c10() const { return c10_; }
    double c01() const { return c01_; }

private:
    double mu_;
    double sigma2_;
    double c10_;
    double c01_;
    double half_snr_;   // mu / (2 sigma)
    double log_scale_;  // sigma / mu
};

/// Ternary detection of exponentially distributed service times with rates
/// lambda0 > lambda1 > lambda2 > 0 and zero-one costs. The rule induced by
/// decision weight a decides by largest a_m lambda_m e^{-lambda_m y}, which
/// partitions y into at most three intervals.
class ExponentialTernaryModel final : public DetectionModel {
public:
    ExponentialTernaryModel(double lambda0, double lambda1, double lambda2);

    int hypothesis_count() const override { return 3; }
    double risk_chart(const double* p) const override;
    double risk_mismatched_chart(const double* p, const double* a) const override;
    void gradient_chart(const double* a, double* out) const override;

    /// Decision thresholds (gamma01, gamma12) of the interval rule for
    /// weight a, each clamped at zero.
    std::pair<double, double> thresholds(const SimplexPoint& a) const;

    double lambda0() const { return lambda0_; }
    double lambda1() const { return lambda1_; }
    double lambda2() const { return lambda2_; }

private:
    // Per-hypothesis error coefficients of the rule induced by a, so that
    // J(p, a) = p0 A + p1 B + p2 C. Handles the empty-middle-region case
    // by merging the thresholds at the h0/h2 crossover.
    void rule_coefficients(const double* a, double& A, double& B, double& C) const;

    double lambda0_;
    double lambda1_;
    double lambda2_;
};

} // namespace brequant

#endif
