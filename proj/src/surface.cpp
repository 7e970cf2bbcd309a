#include "fasdg/surface.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fasdg/csv.hpp"
#include "fasdg/errors.hpp"

namespace fas {

double cgf_pair(double t, double p, double r) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("cgf_pair: p must lie in [0, 1)");
  return std::log1p(p * std::expm1(t)) + std::log1p(p * std::expm1(-r * t));
}

double cgf_taylor2(double t, double p, double epsilon) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("cgf_taylor2: p must lie in [0, 1)");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("cgf_taylor2: epsilon must be >= 0");
  const double q = 1.0 - p;
  const double r = 1.0 + epsilon;
  return -p * epsilon * t + 0.5 * p * q * (1.0 + r * r) * t * t;
}

double taylor2_argmin(double p, double epsilon) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("taylor2_argmin: p must lie in [0, 1)");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("taylor2_argmin: epsilon must be >= 0");
  const double q = 1.0 - p;
  const double r = 1.0 + epsilon;
  return epsilon / (q * (1.0 + r * r));
}

double p_zero_limit(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("p_zero_limit: s must lie in (0, 1]");
  const double d = (1.0 - s) * (1.0 - s) + 1.0;
  return -0.5 * s * s / d - std::exp(s * (1.0 - s) / d) - std::exp(-s / d) + 2.0;
}

double s_zero_coefficient(double p) {
  if (!(p >= 0.0 && p <= 0.5)) throw std::invalid_argument("s_zero_coefficient: p must lie in [0, 1/2]");
  const double q = 1.0 - p;
  return ((18.0 * p - 30.0) * p + 11.0) / (192.0 * q * q * q);
}

double scaled_difference(double p, double s) {
  if (!(p >= 0.0 && p <= 0.5)) throw std::invalid_argument("scaled_difference: p must lie in [0, 1/2]");
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("scaled_difference: s must lie in [0, 1]");
  if (s < 1e-2) return s_zero_coefficient(p);
  if (p < 1e-3) return p_zero_limit(s) / (s * s * s * s);

  // Direct evaluation in the s = eps/(1+eps) chart, where the argmin and the
  // exponents stay finite all the way to s = 1 (r = infinity):
  //   t*   = s(1-s) / (qD),  r t* = s / (qD),  D = (1-s)^2 + 1,
  //   T2(t*) = -(p/2) s^2 / (qD).
  const double q = 1.0 - p;
  const double d = (1.0 - s) * (1.0 - s) + 1.0;
  const double tstar = s * (1.0 - s) / (q * d);
  const double rtstar = s / (q * d);
  const double t2 = -0.5 * p * s * s / (q * d);
  const double f = std::log1p(p * std::expm1(tstar)) + std::log1p(p * std::expm1(-rtstar));
  return (t2 - f) / (p * s * s * s * s);
}

namespace {

SurfaceGrid scan_impl(double spacing, bool parallel) {
  if (!(spacing > 0.0)) throw std::invalid_argument("scan: spacing must be > 0");
  const long long kp = std::llround(0.5 / spacing);
  const long long ks = std::llround(1.0 / spacing);
  if (kp < 1 || std::abs(static_cast<double>(kp) * spacing - 0.5) > 1e-9 ||
      std::abs(static_cast<double>(ks) * spacing - 1.0) > 1e-9)
    throw std::invalid_argument("scan: spacing must divide 0.5 and 1.0 evenly");
  if ((kp + 1) * (ks + 1) > 20'000'000) throw CapacityError("scan: grid too fine");

  SurfaceGrid grid;
  grid.spacing = spacing;
  grid.p_steps = static_cast<int>(kp);
  grid.s_steps = static_cast<int>(ks);
  grid.points.resize(static_cast<std::size_t>((kp + 1) * (ks + 1)));

  const int np = grid.p_steps, ns = grid.s_steps;
  SurfacePoint* pts = grid.points.data();
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= np; ++i) {
      const double p = (0.5 * i) / np;
      for (int j = 0; j <= ns; ++j) {
        const double s = (1.0 * j) / ns;
        pts[static_cast<std::size_t>(i) * (ns + 1) + j] = {p, s, scaled_difference(p, s)};
      }
    }
  } else {
    for (int i = 0; i <= np; ++i) {
      const double p = (0.5 * i) / np;
      for (int j = 0; j <= ns; ++j) {
        const double s = (1.0 * j) / ns;
        pts[static_cast<std::size_t>(i) * (ns + 1) + j] = {p, s, scaled_difference(p, s)};
      }
    }
  }

  grid.min_index = 0;
  grid.all_positive = true;
  for (std::size_t k = 0; k < grid.points.size(); ++k) {
    if (grid.points[k].value < grid.points[grid.min_index].value) grid.min_index = k;
    if (!(grid.points[k].value > 0.0)) grid.all_positive = false;
  }
  return grid;
}

}  // namespace

SurfaceGrid scan_surface(double spacing) { return scan_impl(spacing, true); }
SurfaceGrid scan_surface_serial(double spacing) { return scan_impl(spacing, false); }

void emit_surface_csv(const SurfaceGrid& grid, std::ostream& os) {
  os << "p,s,value,boundary\n";
  for (const SurfacePoint& pt : grid.points) {
    const char* flag = "";
    if (pt.p == 0.0 && pt.s == 0.0) flag = "p0s0";
    else if (pt.p == 0.0) flag = "p0";
    else if (pt.s == 0.0) flag = "s0";
    os << format_double(pt.p) << "," << format_double(pt.s) << "," << format_double(pt.value)
       << "," << flag << "\n";
  }
  if (!os) throw std::runtime_error("surface csv: write failed");
}

}  // namespace fas
