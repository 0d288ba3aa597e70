#pragma once

namespace threehalves {

// Raw 3/2 model parameters under the pricing measure:
//   dS = r S dt + sqrt(V) S (rho dW1 + sqrt(1 - rho^2) dW2)
//   dV = kappa V (theta - V) dt + epsilon V^{3/2} dW1
struct ModelParams {
  double s0 = 0.0;       // spot price
  double v0 = 0.0;       // spot variance
  double kappa = 0.0;    // mean-reversion scale
  double theta = 0.0;    // variance mean level
  double epsilon = 0.0;  // vol-of-vol
  double rho = 0.0;      // spot/variance correlation
  double r = 0.0;        // risk-free rate

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Which closed form to use for the coefficient multiplying the time integral of
// 1/U in the likelihood recursion. `derived` is obtained by substituting the Ito
// expansion of log U into the Girsanov exponent; `printed` is the alternative
// form (kt*tt - 3*kt*tn + et^2)/2 kept for comparison.
enum class LikelihoodCoefficient { derived, printed };

// Ratios closer than this to an integer are treated as integers: the OU count is
// exact and no reweighting is applied. Parameters quoted to two decimals move the
// ratio by up to 4 * 0.005 / epsilon^2, which is ~3e-4 for epsilon = 8.56.
inline constexpr double kIntegerRatioTolerance = 5e-4;

// Inverse-variance CIR parametrization U = 1/V:
//   dU = kappa_t (theta_t - U) dt + eps_t sqrt(U) dW1
// together with the OU count n and the adjusted mean level theta_n.
struct TransformedParams {
  double kappa_t = 0.0;  // kappa * theta
  double theta_t = 0.0;  // (kappa + epsilon^2) / (kappa * theta)
  double eps_t = 0.0;    // -epsilon
  double ratio = 0.0;    // 4 kappa_t theta_t / eps_t^2
  int n = 1;             // number of squared OU components
  double theta_n = 0.0;  // n eps_t^2 / (4 kappa_t)
  double u0 = 0.0;       // 1 / v0
  double s0 = 0.0;
  double r = 0.0;
  double rho = 0.0;
  bool integer_regime = false;  // ratio within tolerance of n; weights are 1
};

// Per-step constants of the stock, likelihood and OU recursions.
struct RecursionConstants {
  double h = 0.0;
  double a = 0.0;         // r + rho kappa_t / eps_t
  double b = 0.0;         // (rho / eps_t)(kappa_t theta_t - eps_t^2 / 2) + 1/2
  double c = 0.0;         // -(kappa_t theta_n - kappa_t theta_t) / eps_t^2
  double d = 0.0;         // see LikelihoodCoefficient
  double alpha_h = 1.0;   // exp(-kappa_t h / 2)
  double sigma2_h = 0.0;  // eps_t^2 / (4 kappa_t) (1 - exp(-kappa_t h))
  double rho_over_eps = 0.0;
  double kappa_t = 0.0;
  double orth = 1.0;      // sqrt(1 - rho^2)
};

// Returns `params` unchanged if it is admissible.
// Throws FellerViolation when kappa <= -epsilon^2/2 and DomainError for
// non-finite values, s0/v0/epsilon <= 0, |rho| > 1 or kappa*theta <= 0.
ModelParams validate(const ModelParams& params);

TransformedParams transform(const ModelParams& params,
                            double integer_tolerance = kIntegerRatioTolerance);

// n = max(floor(ratio + 1/2), 1).
int ou_count(double ratio);
int ou_count(const TransformedParams& transformed);

// exp(-kappa_t dt / 2) and the exact OU transition variance over dt.
struct OuStepConstants {
  double alpha = 1.0;
  double sigma2 = 0.0;
};
OuStepConstants ou_step_constants(const TransformedParams& transformed, double dt);

RecursionConstants recursion_constants(
    const TransformedParams& transformed, double h,
    LikelihoodCoefficient variant = LikelihoodCoefficient::derived);

}  // namespace threehalves
