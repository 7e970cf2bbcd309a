#ifndef FASDG_SURFACE_HPP
#define FASDG_SURFACE_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace fas {

// Per-pair log-mgf of a forward coin minus r backward coins:
// F(t) = log(1 + p(e^t - 1)) + log(1 + p(e^{-rt} - 1)). Requires 0 <= p < 1;
// finite for every t.
double cgf_pair(double t, double p, double r);

// Quadratic Taylor model of cgf_pair at t = 0 with r = 1 + epsilon:
// T2(t) = -p eps t + (1/2) p q (1 + r^2) t^2.
double cgf_taylor2(double t, double p, double epsilon);

// Argmin of the quadratic model: eps / (q (1 + r^2)).
double taylor2_argmin(double p, double epsilon);

// The surface under study is the gap between the quadratic model and the true
// log-mgf at the model's argmin, scaled by p s^4, on coordinates
// (p, s) in [0, 1/2] x [0, 1] with s = eps / (1 + eps). Positivity of this
// surface is what makes the direct exponent safe against the Bennett one.

// p -> 0 boundary: the gap divided by p tends to
// -s^2/(2D) - e^{s(1-s)/D} - e^{-s/D} + 2 with D = (1-s)^2 + 1.
// Requires 0 < s <= 1 (at s = 0 use s_zero_coefficient).
double p_zero_limit(double s);

// s -> 0 boundary: leading coefficient of the gap in s,
// (18p^2 - 30p + 11) / (192 (1-p)^3). Requires 0 <= p <= 1/2.
double s_zero_coefficient(double p);

// The scaled gap itself. Interior points evaluate the closed form directly;
// points with s < 1e-2 or p < 1e-3 switch to the matching boundary expansion
// before cancellation can eat the digits.
double scaled_difference(double p, double s);

struct SurfacePoint {
  double p = 0.0;
  double s = 0.0;
  double value = 0.0;
  bool operator==(const SurfacePoint&) const = default;
};

struct SurfaceGrid {
  double spacing = 0.0;
  int p_steps = 0;  // grid is (p_steps+1) x (s_steps+1), p-major
  int s_steps = 0;
  std::vector<SurfacePoint> points;
  std::size_t min_index = 0;
  bool all_positive = false;
  const SurfacePoint& min_point() const { return points[min_index]; }
};

// Evaluate scaled_difference on the regular grid with the given spacing.
// The spacing must divide both 0.5 and 1.0 evenly (0.01 does, 0.03 does not).
// Grid coordinates are computed as correctly rounded fractions, so the
// endpoints are exact. The two variants are bit-identical; the parallel one
// splits rows across threads.
SurfaceGrid scan_surface(double spacing);
SurfaceGrid scan_surface_serial(double spacing);

// CSV with columns p,s,value,boundary; the boundary column marks the p = 0
// and s = 0 edges ("p0", "s0", "p0s0", else empty).
void emit_surface_csv(const SurfaceGrid& grid, std::ostream& os);

}  // namespace fas

#endif
