#include "germforge/charts.hpp"

#include <cmath>
#include <numbers>

namespace germforge {

namespace {

constexpr double kPi = std::numbers::pi;

// log z on the branch required by chart j
cplx chart_log(int j, int k, cplx z) {
    const double r = std::abs(z);
    double th = std::arg(z); // (-pi, pi]
    if (std::abs(j) < k) {
        if (th == kPi)
            throw domain_error("chart_eval: z on the branch cut (negative real axis)");
        return {std::log(r), th};
    }
    if (j == k) {
        if (th <= 0.0) th += 2.0 * kPi;
        if (th == 2.0 * kPi || th == 0.0)
            throw domain_error("chart_eval: z on the branch cut (positive real axis)");
        return {std::log(r), th};
    }
    // j == -k
    if (th > 0.0) th -= 2.0 * kPi;
    if (th == 0.0)
        throw domain_error("chart_eval: z on the branch cut (positive real axis)");
    return {std::log(r), th};
}

} // namespace

double default_delta(const VectorFieldParams& p) {
    const double base = std::min(1.0, 1.0 / (1.0 + std::abs(p.b)));
    return 0.15 * std::pow(base, 1.0 / double(p.k));
}

SectorSpec default_sector_spec(const VectorFieldParams& p) {
    return SectorSpec{default_delta(p), 100000};
}

cplx chart_eval(const VectorFieldParams& p, int j, cplx z) {
    if (std::abs(j) > p.k)
        throw domain_error("chart_eval: chart index out of range");
    if (z == cplx(0.0))
        throw domain_error("chart_eval: z must be nonzero");
    const cplx zk = std::pow(z, p.k);
    return -1.0 / (double(p.k) * zk) + p.b * chart_log(j, p.k, z)
           - cplx(0.0, 1.0) * (double(j) * kPi / double(p.k)) * p.b;
}

cplx chart_invert(const VectorFieldParams& p, int j, cplx Z, std::optional<double> angle_hint) {
    if (std::abs(j) > p.k)
        throw domain_error("chart_invert: chart index out of range");
    const double hint = angle_hint.value_or(double(j) * kPi / double(p.k));
    // seed: z ~ (-1/(k Z))^{1/k}, k-th root branch nearest the hint
    const cplx w = -1.0 / (double(p.k) * Z);
    const double r = std::pow(std::abs(w), 1.0 / double(p.k));
    const double base_ang = std::arg(w) / double(p.k);
    const double step = 2.0 * kPi / double(p.k);
    const double m = std::round((hint - base_ang) / step);
    cplx z = std::polar(r, base_ang + m * step);

    for (int it = 0; it < 80; ++it) {
        const cplx F = chart_eval(p, j, z) - Z;
        if (std::abs(F) <= 1e-13 * (1.0 + std::abs(Z))) return z;
        // dZ/dz = (1 + b z^k) / z^{k+1}
        const cplx zk = std::pow(z, p.k);
        const cplx dZ = (1.0 + p.b * zk) / (zk * z);
        z -= F / dZ;
        if (!(std::abs(z) > 0.0) || !std::isfinite(std::real(z)))
            throw pipeline_error("chart-invert", "Newton diverged");
    }
    if (std::abs(chart_eval(p, j, z) - Z) <= 1e-9 * (1.0 + std::abs(Z))) return z;
    throw pipeline_error("chart-invert", "Newton did not converge");
}

int chart_of(const VectorFieldParams& p, cplx z) {
    const double th = std::arg(z);
    int j = int(std::floor(th * double(p.k) / kPi + 0.5));
    if (j > p.k) j = p.k;
    if (j < -p.k) j = -p.k;
    return j;
}

cplx sector_base_point(const VectorFieldParams& p, double delta, int j) {
    return std::polar(delta, double(j) * kPi / double(p.k));
}

TimePoint sigma_on_charts(const VectorFieldParams& p, const TimePoint& t) {
    const cplx z = chart_invert(p, t.chart, t.value);
    const cplx zb = std::conj(z);
    int ell = chart_of(p, zb);
    // the conjugate of a point assigned to chart j belongs to chart -j;
    // enforce that convention at sector boundaries
    if (ell != -t.chart && std::abs(ell) == p.k && std::abs(t.chart) == p.k) ell = -t.chart;
    return TimePoint{ell, chart_eval(p, ell, zb)};
}

bool petal_membership(const TruncatedSeries& f, const VectorFieldParams& p,
                      const SectorSpec& spec, int j, cplx z) {
    if (z == cplx(0.0))
        throw domain_error("petal_membership: z must be nonzero");
    GermMap germ(f);
    const bool use_square = f.anti();
    auto step_fwd = [&](cplx u) { return use_square ? germ.eval_square(u) : germ.eval(u); };
    auto step_bwd = [&](cplx u) {
        return use_square ? germ.eval_square_inverse(u) : germ.eval_inverse(u);
    };

    const cplx zstar = sector_base_point(p, spec.delta, j);
    const double lo = std::real(chart_eval(p, j, zstar));
    const double hi = std::real(chart_eval(p, j, step_fwd(zstar)));
    const double escape = std::max(4.0 * spec.delta, 0.7);

    // B_j is treated as the full vertical strip lo <= Re Z_j < hi.  The
    // chart value advances by ~+1 per forward step in every chart and its
    // real part does not jump across the log cut for real b, so each walk
    // can stop once it has passed the strip.
    for (int dir = 0; dir < 2; ++dir) {
        cplx u = z;
        for (long n = 0; n <= spec.iteration_cap; ++n) {
            if (std::abs(u) > escape || !(std::abs(u) > 0.0)) break;
            bool on_cut = false;
            double x = 0.0;
            try {
                x = std::real(chart_eval(p, j, u));
            } catch (const domain_error&) {
                on_cut = true;
            }
            if (!on_cut) {
                if (x >= lo && x < hi) return true;
                if (dir == 0 && x >= hi) break;
                if (dir == 1 && x < lo) break;
            }
            if (n == spec.iteration_cap)
                throw undetermined_error("petal_membership: iteration cap exceeded");
            u = dir == 0 ? step_fwd(u) : step_bwd(u);
        }
    }
    return false;
}

OrbitTrace orbit_trace(const TruncatedSeries& f, const VectorFieldParams& p, cplx z0,
                       int n_steps, double escape_radius) {
    OrbitTrace out;
    GermMap germ(f);
    cplx z = z0;
    for (int n = 0; n <= n_steps; ++n) {
        if (!(std::abs(z) > 0.0) || std::abs(z) > escape_radius) {
            out.left_neighbourhood = true;
            break;
        }
        const int j = chart_of(p, z);
        out.steps.push_back(OrbitStep{z, j, chart_eval(p, j, z)});
        if (n < n_steps) z = germ.eval(z);
    }
    return out;
}

} // namespace germforge
