#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "cloakwave/errors.hpp"
#include "cloakwave/fields.hpp"

namespace cloakwave::fields {
namespace {

using Quadrature = boost::math::quadrature::gauss_kronrod<Real, 61>;
constexpr unsigned kMaxDepth = 15;
constexpr Real kQuadratureTolerance = 1e-11L;
constexpr Real kAcceptedError = 1e-9L;

// Mode-wise samples of the field whose norm is requested, at radius rho.
class Integrand {
 public:
  Integrand(const FieldSeries& F, Quantity which, const Reference& ref) : F_(F), which_(which), ref_(ref) {}

  std::vector<mie::RadialSample> operator()(Real rho) const {
    if (which_ == Quantity::Total) return radial_modes(F_, rho, Component::Total);
    if (which_ == Quantity::Scattered) return radial_modes(F_, rho, Component::Scattered);
    if (std::holds_alternative<LimitReference>(ref_)) {
      if (rho >= 2) return radial_modes(F_, rho, Component::Scattered);
      auto f = radial_modes(F_, rho, Component::Total);
      subtract(f, limit_reference(rho));
      return f;
    }
    const FieldSeries& G = std::get<std::reference_wrapper<const FieldSeries>>(ref_).get();
    auto f = radial_modes(F_, rho, Component::Total);
    subtract(f, radial_modes(G, rho, Component::Total));
    return f;
  }

 private:
  static void subtract(std::vector<mie::RadialSample>& f, const std::vector<mie::RadialSample>& g) {
    if (g.size() > f.size()) f.resize(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
      f[n].value -= g[n].value;
      f[n].derivative -= g[n].derivative;
    }
  }

  // b_n R_n(k s(rho)) with s = 2(rho - 1) in the shell.
  std::vector<mie::RadialSample> limit_reference(Real rho) const {
    const Real s = 2 * (rho - 1);
    const Real kext = F_.exterior_wavenumber();
    const auto reg = mie::basis_table(F_.dimension, mie::Basis::Regular, F_.truncation(), kext * s);
    std::vector<mie::RadialSample> g(F_.modes.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
      const Complex b = F_.modes[n].incident;
      g[n] = {b * reg.value[n], b * kext * reg.derivative[n] * Real(2)};
    }
    return g;
  }

  const FieldSeries& F_;
  Quantity which_;
  const Reference& ref_;
};

Real integrate(const std::function<Real(Real)>& f, Real a, Real b) {
  Real error = 0;
  Real l1 = 0;
  const Real value = Quadrature::integrate(f, a, b, kMaxDepth, kQuadratureTolerance, &error, &l1);
  if (!std::isfinite(value) || error > kAcceptedError * l1) {
    throw ConvergenceError("radial quadrature did not converge on [" + std::to_string(double(a)) + ", " +
                           std::to_string(double(b)) + "]");
  }
  return value;
}

}  // namespace

AnnulusNorms norm_annulus(const FieldSeries& F, Quantity which, Real r_in, Real r_out, const Reference& ref) {
  if (!(r_in >= 0 && r_out > r_in)) throw DomainError("norm_annulus: need 0 <= r_in < r_out");
  std::vector<Real> breaks = interfaces(F);
  if (which == Quantity::DiffVsReference) {
    if (std::holds_alternative<std::monostate>(ref)) {
      throw DomainError("norm_annulus: difference norm needs a reference field");
    }
    if (std::holds_alternative<LimitReference>(ref)) {
      if (r_in < 1) throw UnsupportedConfiguration("u o F_0^-1 is undefined inside B_1");
      breaks.push_back(1);
      breaks.push_back(2);
    } else {
      const FieldSeries& G = std::get<std::reference_wrapper<const FieldSeries>>(ref).get();
      if (G.dimension != F.dimension) throw DomainError("norm_annulus: reference dimension mismatch");
      const auto extra = interfaces(G);
      breaks.insert(breaks.end(), extra.begin(), extra.end());
    }
  }
  std::vector<Real> nodes{r_in};
  std::sort(breaks.begin(), breaks.end());
  const Real merge = 1e-12L * r_out;
  for (Real b : breaks) {
    if (b > nodes.back() + merge && b < r_out - merge) nodes.push_back(b);
  }
  nodes.push_back(r_out);

  const Integrand samples(F, which, ref);
  const int d = F.dimension;
  auto l2_density = [&](Real rho) {
    const auto f = samples(rho);
    Real sum = 0;
    for (std::size_t n = 0; n < f.size(); ++n) sum += mie::angular_weight(d, int(n)) * std::norm(f[n].value);
    return sum * std::pow(rho, d - 1);
  };
  auto gradient_density = [&](Real rho) {
    const auto f = samples(rho);
    Real sum = 0;
    for (std::size_t n = 0; n < f.size(); ++n) {
      const Real lambda = mie::angular_eigenvalue(d, int(n));
      sum += mie::angular_weight(d, int(n)) * (std::norm(f[n].derivative) + lambda / (rho * rho) * std::norm(f[n].value));
    }
    return sum * std::pow(rho, d - 1);
  };
  Real l2 = 0;
  Real gradient = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    l2 += integrate(l2_density, nodes[i], nodes[i + 1]);
    gradient += integrate(gradient_density, nodes[i], nodes[i + 1]);
  }
  return {std::sqrt(l2), std::sqrt(l2 + gradient)};
}

}  // namespace cloakwave::fields
