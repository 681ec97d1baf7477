#pragma once

#include <optional>
#include <vector>

#include "germforge/germ_map.hpp"
#include "germforge/normal_form.hpp"

namespace germforge {

// A point on the time coordinate: chart index j in {-k,...,k} and the value
// Z_j(z) in that chart.  Charts k and -k denote the same petal.
struct TimePoint {
    int chart = 0;
    cplx value = 0.0;
};

struct SectorSpec {
    double delta = 0.15;
    long iteration_cap = 100000;
};

// delta = 0.15 * min(1, 1/(1+|b|))^{1/k}
double default_delta(const VectorFieldParams& p);
SectorSpec default_sector_spec(const VectorFieldParams& p);

// Z_j(z) = -1/(k z^k) + b log z - j i pi b / k, with arg z in (-pi, pi) for
// |j| < k, in (0, 2pi) for j = k and in (-2pi, 0) for j = -k.  Points on the
// excluded ray of the chart's branch are rejected.
cplx chart_eval(const VectorFieldParams& p, int j, cplx z);

// Newton inverse of chart_eval, seeded by the k-th root branch closest to
// angle_hint (default: the chart axis j pi / k).
cplx chart_invert(const VectorFieldParams& p, int j, cplx Z,
                  std::optional<double> angle_hint = std::nullopt);

// chart index from the angular sector around j pi / k (half-open sectors)
int chart_of(const VectorFieldParams& p, cplx z);

// base point z_j^* = delta e^{i j pi / k}
cplx sector_base_point(const VectorFieldParams& p, double delta, int j);

// the complex conjugation Sigma on the time coordinate
TimePoint sigma_on_charts(const VectorFieldParams& p, const TimePoint& t);

// true iff some g-iterate of z lands in the base strip B_j within the cap,
// where g is f o f for antiholomorphic f and f itself otherwise
bool petal_membership(const TruncatedSeries& f, const VectorFieldParams& p,
                      const SectorSpec& spec, int j, cplx z);

struct OrbitStep {
    cplx z;
    int chart;
    cplx time_value;
};

struct OrbitTrace {
    std::vector<OrbitStep> steps;
    bool left_neighbourhood = false;
};

// forward orbit of z0 under the germ, annotated with chart data per step
OrbitTrace orbit_trace(const TruncatedSeries& f, const VectorFieldParams& p, cplx z0,
                       int n_steps, double escape_radius = 0.8);

} // namespace germforge
