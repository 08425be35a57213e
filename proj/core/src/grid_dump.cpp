#include <cstdio>
#include <fstream>
#include <limits>

#include "cloakwave/errors.hpp"
#include "cloakwave/fields.hpp"

namespace cloakwave::fields {
namespace {

Real coordinate(const GridSpec& g, int axis, int i) {
  if (g.points[axis] == 1) return g.lower[axis];
  return g.lower[axis] + (g.upper[axis] - g.lower[axis]) * i / (g.points[axis] - 1);
}

}  // namespace

void dump_field(const FieldSeries& F, const GridSpec& grid, const std::string& path, Component which) {
  const int d = F.dimension;
  long total = 1;
  for (int a = 0; a < d; ++a) {
    if (grid.points[a] < 1) throw ValidationError("grid: point counts must be positive");
    total *= grid.points[a];
    if (total > kMaxGridPoints) throw ValidationError("grid: more than 1e6 points requested");
  }
  Real corner = 0;
  for (int a = 0; a < d; ++a) {
    const Real m = std::max(std::abs(grid.lower[a]), std::abs(grid.upper[a]));
    corner += m * m;
  }
  if (std::sqrt(corner) > 5) throw ValidationError("grid: points must lie inside B_5");

  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out << (d == 2 ? "x,y,re_u,im_u,abs_u\n" : "x,y,z,re_u,im_u,abs_u\n");
  const int nz = d == 3 ? grid.points[2] : 1;
  char line[160];
  for (int iz = 0; iz < nz; ++iz) {
    for (int iy = 0; iy < grid.points[1]; ++iy) {
      for (int ix = 0; ix < grid.points[0]; ++ix) {
        const Vec x{coordinate(grid, 0, ix), coordinate(grid, 1, iy), d == 3 ? coordinate(grid, 2, iz) : 0};
        Complex u;
        try {
          u = eval_field(F, x, which);
        } catch (const InterfaceError&) {
          const Real nan = std::numeric_limits<Real>::quiet_NaN();
          u = {nan, nan};
        }
        int len;
        if (d == 2) {
          len = std::snprintf(line, sizeof line, "%.17g,%.17g,", double(x[0]), double(x[1]));
        } else {
          len = std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,", double(x[0]), double(x[1]), double(x[2]));
        }
        std::snprintf(line + len, sizeof line - len, "%.17g,%.17g,%.17g\n", double(u.real()), double(u.imag()),
                      double(std::abs(u)));
        out << line;
      }
    }
  }
  if (!out) throw Error("write failed for " + path);
}

}  // namespace cloakwave::fields
