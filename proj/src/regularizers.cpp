#include "swsig/regularizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "swsig/errors.hpp"

namespace swsig {

Regularizer::Regularizer(RegularizerKind kind, double p, std::string name)
    : kind_(kind), p_(p), name_(std::move(name)) {}

Regularizer Regularizer::quadratic_concave() {
  return Regularizer(RegularizerKind::QuadraticConcave, 1.0, "quadratic_concave");
}

Regularizer Regularizer::pnorm(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("pnorm exponent must lie in (0,1)");
  return Regularizer(RegularizerKind::PNorm, p, "pnorm");
}

Regularizer Regularizer::custom(std::string name, ScalarFn value, ScalarFn derivative) {
  if (!value || !derivative) throw ValidationError("custom regularizer needs value and derivative");
  Regularizer r(RegularizerKind::Custom, 1.0, std::move(name));
  r.value_ = std::make_shared<const ScalarFn>(std::move(value));
  r.derivative_ = std::make_shared<const ScalarFn>(std::move(derivative));
  return r;
}

double Regularizer::term(double u) const {
  switch (kind_) {
    case RegularizerKind::QuadraticConcave:
      return u * (1.0 - u);
    case RegularizerKind::PNorm:
      return std::pow(u * (1.0 - u), p_);
    case RegularizerKind::Custom:
      return (*value_)(u);
  }
  return 0.0;
}

double Regularizer::term_derivative(double u) const {
  switch (kind_) {
    case RegularizerKind::QuadraticConcave:
      return 1.0 - 2.0 * u;
    case RegularizerKind::PNorm: {
      const double base = u * (1.0 - u);
      if (base <= 0.0) return 0.0;
      const double d = p_ * std::pow(base, p_ - 1.0) * (1.0 - 2.0 * u);
      return std::clamp(d, -kPNormGradientClip, kPNormGradientClip);
    }
    case RegularizerKind::Custom:
      return (*derivative_)(u);
  }
  return 0.0;
}

double clamp_unit(double u) {
  if (!(u >= -kClampTolerance && u <= 1.0 + kClampTolerance))
    throw DomainError("regularizer argument " + std::to_string(u) + " outside [0,1]");
  return std::clamp(u, 0.0, 1.0);
}

double psi_value(const Regularizer& reg, const Eigen::Ref<const Eigen::VectorXd>& u) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) sum += reg.term(clamp_unit(u[i]));
  return sum;
}

Eigen::VectorXd psi_gradient(const Regularizer& reg, const Eigen::Ref<const Eigen::VectorXd>& u) {
  Eigen::VectorXd g(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) g[i] = reg.term_derivative(clamp_unit(u[i]));
  return g;
}

Assumption1Report validate_assumption1(const Regularizer& reg, int samples) {
  if (samples < 3) throw ValidationError("validation needs at least 3 interior samples");
  Assumption1Report rep;
  rep.regularizer = reg.name();
  rep.samples = samples;

  rep.worst_endpoint_value = std::max(std::abs(reg.term(0.0)), std::abs(reg.term(1.0)));
  rep.vanishes_at_endpoints = rep.worst_endpoint_value <= 1e-12;  // NaN fails too

  rep.min_interior_value = std::numeric_limits<double>::infinity();
  bool positive = true;
  for (int j = 1; j <= samples; ++j) {
    const double u = static_cast<double>(j) / (samples + 1);
    const double v = reg.term(u);
    if (!(v > 0.0)) positive = false;
    if (!(v >= rep.min_interior_value)) {
      rep.min_interior_value = v;
      rep.min_interior_point = u;
    }
  }
  rep.positive_on_interior = positive;
  return rep;
}

}  // namespace swsig
