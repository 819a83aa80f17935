#pragma once

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <string>

namespace swsig {

enum class RegularizerKind { QuadraticConcave, PNorm, Custom };

/**
 * Separable discreteness-promoting penalty psi(u) = sum_i psi_i(u_i).
 *
 * Every coordinate shares the same scalar term. Built-ins:
 *   - QuadraticConcave: psi_i(u) = u (1 - u)
 *   - PNorm(p):         psi_i(u) = (u (1 - u))^p,  0 < p < 1
 * A custom regularizer supplies its own value/derivative pair.
 */
class Regularizer {
 public:
  using ScalarFn = std::function<double(double)>;

  static Regularizer quadratic_concave();
  static Regularizer pnorm(double p);
  static Regularizer custom(std::string name, ScalarFn value, ScalarFn derivative);

  RegularizerKind kind() const { return kind_; }
  double exponent() const { return p_; }
  const std::string& name() const { return name_; }

  /// psi_i(u) for u already clamped to [0,1].
  double term(double u) const;
  /// d psi_i / du; PNorm uses 0 at the endpoints and clips to +-1e6.
  double term_derivative(double u) const;

 private:
  Regularizer(RegularizerKind kind, double p, std::string name);

  RegularizerKind kind_;
  double p_ = 1.0;
  std::string name_;
  std::shared_ptr<const ScalarFn> value_;
  std::shared_ptr<const ScalarFn> derivative_;
};

inline constexpr double kClampTolerance = 1e-9;
inline constexpr double kPNormGradientClip = 1e6;

/// Clamps u to [0,1]; throws DomainError if it lies further than kClampTolerance outside.
double clamp_unit(double u);

double psi_value(const Regularizer& reg, const Eigen::Ref<const Eigen::VectorXd>& u);
Eigen::VectorXd psi_gradient(const Regularizer& reg, const Eigen::Ref<const Eigen::VectorXd>& u);

struct Assumption1Report {
  std::string regularizer;
  int samples = 0;
  bool vanishes_at_endpoints = false;
  double worst_endpoint_value = 0.0;  // max(|psi_i(0)|, |psi_i(1)|)
  bool positive_on_interior = false;
  double min_interior_value = 0.0;
  double min_interior_point = 0.0;

  bool passed() const { return vanishes_at_endpoints && positive_on_interior; }
};

// Separability holds by construction; the endpoint and positivity conditions are sampled.
Assumption1Report validate_assumption1(const Regularizer& reg, int samples = 99);

}  // namespace swsig
