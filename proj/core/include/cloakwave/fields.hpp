#pragma once

// Truncated modal expansions of cloak and small-inclusion fields.
//
// A FieldSeries stores one ModeSolution per angular mode n = 0..N of a
// concentric medium in the virtual (small-inclusion) picture. With the
// physical tag every evaluation at a physical point y goes through the
// inverse blow-up map, so u_c(y) = u_eps(F_eps^-1(y)).

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cloakwave/cloak_config.hpp"
#include "cloakwave/incident.hpp"
#include "cloakwave/mie.hpp"
#include "cloakwave/resonance.hpp"
#include "cloakwave/transform.hpp"

namespace cloakwave::fields {

enum class Domain { Virtual, Physical };
enum class Component { Total, Scattered, Incident };

struct FieldSeries {
  int dimension = 3;
  Real k = 1;
  mie::LayeredMedium medium;
  std::vector<mie::ModeSolution> modes;
  Vec axis{0, 0, 1};
  Domain domain = Domain::Virtual;
  Real epsilon = 1;  // blow-up parameter of the physical tag
  std::optional<IncidentSpec> incident;

  int truncation() const { return static_cast<int>(modes.size()) - 1; }
  Real exterior_wavenumber() const { return medium.exterior_wavenumber(k); }
  transform::BlowupMap map() const { return {epsilon, dimension}; }
};

/// ceil(e k r_max / 2) + 15.
int default_truncation(Real k, Real r_max);

/// Solves the medium for an incident field. truncation 0 selects the default
/// and grows it by 10 until |alpha_N| + |b_N R_N(k r_tail)| <= 1e-14 max_n(...),
/// r_tail = r_max (plane wave) or min(r_max, 2) (point source, whose regular
/// expansion only converges inside |x0|). Throws TruncationError beyond order 200
/// or when an explicit truncation fails the criterion.
FieldSeries solve_series(const mie::LayeredMedium& medium, Real k, const IncidentSpec& incident, int truncation = 0,
                         Real r_max = 4);

/// Cloak field u_c: the virtual medium of `config` with the physical tag.
FieldSeries cloak_series(const CloakConfig& config, int truncation = 0, Real r_max = 4);

/// Cloak field for the interior source normalization * e of a resonance spec,
/// zero incident field, physical tag.
FieldSeries source_series(const CloakConfig& config, const mie::ResonanceSpec& spec, Real normalization = 1);

/// Radial functions f_n and their derivatives at radius `radius` of the series'
/// own domain (physical radius under the physical tag).
std::vector<mie::RadialSample> radial_modes(const FieldSeries& F, Real radius, Component which = Component::Total);

/// cos(n theta) (2D) or P_n(cos theta) (3D) for n = 0..n_max.
std::vector<Real> angular_functions(int dimension, int n_max, Real cos_theta);

/// Series sum at a point of the series' domain. Throws InterfaceError on a material interface.
Complex eval_field(const FieldSeries& F, const Vec& x, Component which = Component::Total);

/// Radii (in the series' domain) where coefficients jump.
std::vector<Real> interfaces(const FieldSeries& F);

enum class Quantity { Total, Scattered, DiffVsReference };

/// u o F_0^-1 for the free incident field: u(y) for |y| >= 2, u(2(|y|-1) y/|y|) in the shell.
struct LimitReference {};
using Reference = std::variant<std::monostate, LimitReference, std::reference_wrapper<const FieldSeries>>;

struct AnnulusNorms {
  Real l2 = 0;
  Real h1 = 0;  // full H1 norm: sqrt(L2^2 + |grad|^2)
};

/// L2 and H1 norms over r_in < |x| < r_out (r_in = 0 for balls) via angular
/// Parseval and adaptive Gauss-Kronrod in the radius, split at interfaces.
AnnulusNorms norm_annulus(const FieldSeries& F, Quantity which, Real r_in, Real r_out, const Reference& ref = {});

/// Interior source normalization * e with e = R_n(kappa rho) Theta_n / ||.||_{L2(B_1)}.
struct InteriorSource {
  mie::ResonanceSpec eigen;
  Real normalization = 1;
};

/// Closed-form eps -> 0 interior field on B_1 (unit scale, virtual tag) of a
/// single homogeneous interior:
///   passive non-resonant (2D or 3D): zero;
///   3D passive, mode-0 resonant:     u(0) j0(kappa* r) / j0(kappa*) (other 3D modes add nothing);
///   active: the source mode solves the interior equation with a flux
///   condition: Neumann in 3D and for 2D mode 0, a f' + n f = 0 for 2D mode n >= 1.
/// `resonance` is the detected resonance of the interior, if any. Throws
/// UnsupportedConfiguration for a source in the resonant mode and for 2D resonances.
FieldSeries interior_limit(const CloakConfig& config, Complex u_at_origin,
                           const std::optional<mie::ResonanceSpec>& resonance = std::nullopt,
                           const std::optional<InteriorSource>& source = std::nullopt);

struct GridSpec {
  Vec lower{-3.5L, -3.5L, 0};
  Vec upper{3.5L, 3.5L, 0};
  std::array<int, 3> points{81, 81, 1};

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline constexpr long kMaxGridPoints = 1000000;

/// Writes x, y[, z], Re(u), Im(u), |u| rows in row-major order (x fastest).
/// Interface points are written as nan. Throws ValidationError for grids
/// above kMaxGridPoints or reaching outside B_5.
void dump_field(const FieldSeries& F, const GridSpec& grid, const std::string& path,
                Component which = Component::Total);

}  // namespace cloakwave::fields
