#include <algorithm>
#include <cmath>

#include "cloakwave/errors.hpp"
#include "cloakwave/experiments.hpp"

namespace cloakwave::experiments {

Real model_variable(RateModel model, Real eps) {
  if (!(eps > 0 && eps < 1) && model == RateModel::LogInvLnEps) {
    throw ValidationError("1/|ln eps| needs eps in (0, 1)");
  }
  return model == RateModel::LogEps ? eps : 1 / std::abs(std::log(eps));
}

RateFit fit_rate(std::span<const Real> eps, std::span<const Real> values, RateModel model) {
  if (eps.size() != values.size()) throw ValidationError("fit_rate: eps and values differ in length");
  if (eps.size() < 3) throw ValidationError("fit_rate: at least 3 points are required");
  std::vector<Real> x;
  std::vector<Real> y;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(values[i] > 0) || !std::isfinite(values[i])) throw ValidationError("fit_rate: values must be positive");
    x.push_back(std::log(model_variable(model, eps[i])));
    y.push_back(std::log(values[i]));
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi < 10 * *lo) throw UnsupportedConfiguration("fit_rate: degenerate data, values span less than one decade");

  const Real n = static_cast<Real>(x.size());
  Real mx = 0;
  Real my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  Real sxx = 0;
  Real sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw UnsupportedConfiguration("fit_rate: degenerate data, all eps equal");
  RateFit fit;
  fit.model = model;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.residual = std::max(fit.residual, std::abs(y[i] - (fit.slope * x[i] + fit.intercept)));
  }
  return fit;
}

}  // namespace cloakwave::experiments
