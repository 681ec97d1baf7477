#include "germforge/fatou.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace germforge {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// full jets (constant term allowed), degree-indexed
using FJet = std::vector<cplx>;

FJet fmul(const FJet& a, const FJet& b) {
    FJet out(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == cplx(0.0)) continue;
        for (std::size_t j = 0; i + j < out.size() && j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

double axis_angle(int j, int k) { return double(j) * kPi / double(k); }

bool chart_is_attracting(int j) { return std::abs(j) % 2 == 1; }

} // namespace

std::vector<cplx> abel_correction_jet(const TruncatedSeries& unit_jet,
                                      const VectorFieldParams& p) {
    const std::size_t N = unit_jet.order();
    const int k = p.k;
    if (N < std::size_t(2 * k + 2))
        throw domain_error("abel correction: jet order too small");

    // u = (g - z)/z
    FJet u(N, 0.0);
    for (std::size_t d = 1; d < N; ++d) u[d] = unit_jet.coeff(d + 1);

    // log(1+u) and (1+u)^{-k}
    FJet log1p(N, 0.0), powneg(N, 0.0);
    powneg[0] = 1.0;
    FJet upow(N, 0.0);
    upow[0] = 1.0;
    double binom = 1.0;
    for (std::size_t m = 1; m * std::size_t(k) < N; ++m) {
        upow = fmul(upow, u);
        const double sgn = (m % 2 == 1) ? 1.0 : -1.0;
        binom *= -double(k + int(m) - 1) / double(m); // C(-k, m) accumulated
        for (std::size_t d = 0; d < N; ++d) {
            log1p[d] += sgn / double(m) * upow[d];
            powneg[d] += binom * upow[d];
        }
    }

    // D(z) = Z(g(z)) - Z(z) = (1 - (1+u)^{-k})/(k z^k) + b log(1+u).
    // The numerator 1 - (1+u)^{-k} has no terms below degree k, so the
    // division is a plain index shift.  D is exact to degree N-1-k.
    const std::size_t d_max = N - 1 - std::size_t(k);
    FJet D(N, 0.0);
    for (std::size_t d = 0; d <= d_max; ++d)
        D[d] = -powneg[d + std::size_t(k)] / double(k) + p.b * log1p[d];

    // rho = 1 - D
    FJet rho(N, 0.0);
    rho[0] = 1.0 - D[0];
    for (std::size_t d = 1; d <= d_max; ++d) rho[d] = -D[d];

    // powers of g
    const std::size_t Mmax = N - std::size_t(k);
    std::vector<FJet> gpow(Mmax + 1, FJet(N + 1, 0.0));
    FJet g(N + 1, 0.0);
    for (std::size_t d = 1; d <= N; ++d) g[d] = unit_jet.coeff(d);
    gpow[0] = FJet(N + 1, 0.0);
    gpow[0][0] = 1.0;
    for (std::size_t m = 1; m <= Mmax; ++m) gpow[m] = fmul(gpow[m - 1], g);

    // solve phi(g) - phi = rho degree by degree, as far as rho is exact
    std::vector<cplx> phi(N + 1, 0.0);
    for (std::size_t n = std::size_t(k) + 1; n <= d_max; ++n) {
        const std::size_t m = n - std::size_t(k);
        cplx rhs = (n < rho.size()) ? rho[n] : cplx(0.0);
        for (std::size_t mp = 1; mp < m; ++mp) {
            cplx coef = gpow[mp][n];
            if (n == mp) coef -= 1.0;
            rhs -= phi[mp] * coef;
        }
        cplx lead = gpow[m][n];
        if (n == m) lead -= 1.0;
        if (std::abs(lead) < 1e-12)
            throw pipeline_error("abel-correction", "degenerate leading coefficient");
        phi[m] = rhs / lead;
    }
    return phi;
}

RawTransitionTable fourier_extract_fn(const std::function<cplx(cplx)>& Psi, int side,
                                      double Y, int M, int n_max, double anchor) {
    if (M < 8 || n_max < 1) throw domain_error("fourier_extract: bad quadrature parameters");
    const double x0 = std::round(anchor);
    std::vector<cplx> P(std::size_t(M), cplx(0.0));
    for (int s = 0; s < M; ++s) {
        const cplx W = cplx(x0 + double(s) / double(M), Y);
        const cplx img = Psi(W);
        P[std::size_t(s)] = img - W;
        if (!std::isfinite(std::real(img)) || !std::isfinite(std::imag(img)))
            throw pipeline_error("fourier-extract", "transition evaluation returned NaN");
    }
    // the defect of exact 1-periodicity measures the pointwise evaluation
    // noise, including smooth systematic error the spectral tail misses
    double periodicity = 0.0;
    for (int s : {0, M / 3}) {
        const cplx W = cplx(x0 + double(s) / double(M), Y);
        periodicity = std::max(periodicity, std::abs(Psi(W + 1.0) - Psi(W) - 1.0));
    }
    auto line_coeff = [&](int m) {
        cplx acc = 0.0;
        for (int s = 0; s < M; ++s)
            acc += P[std::size_t(s)] * std::exp(cplx(0.0, -2.0 * kPi * m * s / double(M)));
        return acc / double(M);
    };

    RawTransitionTable out;
    out.height = Y;
    out.samples = M;
    out.constant = line_coeff(0);
    for (int n = 1; n <= n_max; ++n) {
        const int ns = side * n;
        // the harmonic decays like e^{-2 pi n |Y|} on its own line
        out.coeffs[ns] = line_coeff(ns) * std::exp(2.0 * kPi * ns * Y);
        const int nw = -ns;
        out.wrong_side = std::max(out.wrong_side,
                                  std::abs(line_coeff(nw) * std::exp(2.0 * kPi * nw * Y)));
    }
    // top of the sampled spectrum estimates the integrand noise
    for (int m = M / 4; m < M / 2; ++m) {
        out.tail = std::max(out.tail, std::abs(line_coeff(m)));
        out.tail = std::max(out.tail, std::abs(line_coeff(-m)));
    }
    out.tail = std::max(out.tail, periodicity);
    return out;
}

FatouSystem FatouSystem::antiholomorphic(GermMap f_pre, VectorFieldParams p, FatouConfig cfg) {
    if (!f_pre.anti())
        throw domain_error("fatou: expected an antiholomorphic germ");
    if (std::abs(std::imag(p.b)) > 1e-6)
        throw domain_error("fatou: antiholomorphic system needs real b");
    FatouSystem sys;
    sys.build(std::move(f_pre), p, cfg, true);
    return sys;
}

FatouSystem FatouSystem::holomorphic(GermMap g_pre, VectorFieldParams p, FatouConfig cfg) {
    if (g_pre.anti())
        throw domain_error("fatou: expected a holomorphic germ");
    FatouSystem sys;
    sys.build(std::move(g_pre), p, cfg, false);
    return sys;
}

void FatouSystem::build(GermMap germ, VectorFieldParams p, FatouConfig cfg, bool anti) {
    params_ = p;
    cfg_ = cfg;
    anti_ = anti;
    if (cfg_.work_order == 0) cfg_.work_order = std::size_t(2 * p.k + 22);
    const std::size_t min_order = std::size_t(2 * p.k + 4);
    if (cfg_.work_order < min_order) cfg_.work_order = min_order;

    germ_ = std::move(germ);
    TruncatedSeries unit = anti_ ? germ_->square_jet(cfg_.work_order)
                                 : germ_->jet(cfg_.work_order);
    // sanity: the unit-time jet must be prenormalized
    if (std::abs(unit.coeff(1) - cplx(1.0)) > 1e-8 ||
        std::abs(unit.coeff(std::size_t(p.k + 1)) - cplx(1.0)) > 1e-8)
        throw domain_error("fatou: germ is not prenormalized");

    phi_ = abel_correction_jet(unit, p);

    if (cfg_.stop_radius <= 0.0) {
        // far enough out that both the truncation tail of the correction
        // series and its Gevrey divergence floor sit well below the
        // extraction tolerances (residual systematics are caught by the
        // per-harmonic floors)
        const double m_phi = double(cfg_.work_order) - 2.0 * p.k;
        cfg_.stop_radius = std::max(150.0 * p.k,
                                    std::pow(10.0, 13.0 * p.k / (m_phi + 1.0)));
        cfg_.stop_radius = std::min(cfg_.stop_radius, 4000.0);
    }
    z_stop_ = std::pow(1.0 / (double(p.k) * cfg_.stop_radius), 1.0 / double(p.k));
    calib_.assign(std::size_t(2 * p.k + 1), cplx(0.0));
}

bool FatouSystem::chart_attracting(int j) const { return chart_is_attracting(j); }

cplx FatouSystem::forward_step(cplx z) const {
    return anti_ ? germ_->eval_square(z) : germ_->eval(z);
}

cplx FatouSystem::backward_step(cplx z) const {
    return anti_ ? germ_->eval_square_inverse(z) : germ_->eval_inverse(z);
}

cplx FatouSystem::chart_to_z(int j, cplx Z, std::optional<double> hint) const {
    return chart_invert(params_, j, Z, hint.value_or(axis_angle(j, params_.k)));
}

cplx FatouSystem::raw_phi(int j, cplx Z, std::optional<double> hint) const {
    cplx z = chart_to_z(j, Z, hint);
    const bool attract = chart_is_attracting(j);
    long n = 0;
    while (std::abs(z) > z_stop_) {
        z = attract ? forward_step(z) : backward_step(z);
        ++n;
        if (std::abs(z) > cfg_.escape_radius)
            throw pipeline_error("fatou-eval", "orbit escaped the petal neighbourhood");
        if (n > cfg_.iteration_cap)
            throw pipeline_error("fatou-eval", "iteration cap exceeded");
    }
    const cplx Zend = chart_eval(params_, j, z);
    const cplx val = Zend + poly_eval(phi_, z);
    return attract ? val - double(n) : val + double(n);
}

cplx FatouSystem::fatou_eval(int j, cplx Z, std::optional<double> hint) const {
    return raw_phi(j, Z, hint) + calib(std::abs(j) == params_.k ? params_.k : j);
}

cplx FatouSystem::fatou_invert(int j, cplx W, std::optional<double> hint,
                               std::optional<cplx> seed) const {
    cplx Z = seed.value_or(W - calib(std::abs(j) == params_.k ? params_.k : j));
    for (int it = 0; it < 50; ++it) {
        const cplx r = fatou_eval(j, Z, hint) - W;
        if (std::abs(r) <= 1e-12 * (1.0 + std::abs(W))) return Z;
        Z -= r;
    }
    if (std::abs(fatou_eval(j, Z, hint) - W) <= 1e-9 * (1.0 + std::abs(W))) return Z;
    throw pipeline_error("fatou-invert", "fixed-point iteration did not converge");
}

cplx FatouSystem::antiholo_in_fatou(int j, cplx W) const {
    if (!anti_)
        throw domain_error("fatou: Q_j requires an antiholomorphic system");
    const cplx Z = fatou_invert(j, W);
    const cplx z = chart_to_z(j, Z, std::nullopt);
    const cplx z2 = germ_->eval(z);
    const cplx Z2 = chart_eval(params_, -j, z2);
    return fatou_eval(-j, Z2);
}

double FatouSystem::calibrate_antiholomorphic() {
    if (!anti_)
        throw domain_error("fatou: calibration requires an antiholomorphic system");
    const int k = params_.k;
    const double a = cfg_.anchor;
    auto probe = [&](int j, double dy) {
        const double re = chart_is_attracting(j) ? a : -a;
        return cplx(re, 0.6 + dy);
    };
    auto measure = [&](int j) {
        const cplx W1 = probe(j, 0.0), W2 = probe(j, 0.45);
        const cplx m1 = antiholo_in_fatou(j, W1) - std::conj(W1);
        const cplx m2 = antiholo_in_fatou(j, W2) - std::conj(W2);
        if (std::abs(m1 - m2) > cfg_.calib_tol)
            throw pipeline_error("calibrate",
                                 "measured Q_j is not a translate of Sigma (upstream failure)");
        return 0.5 * (m1 + m2);
    };

    double worst = 0.0;
    // self-paired charts 0 and k: only the imaginary part is removable
    for (int j : {0, k}) {
        const cplx m = measure(j);
        if (std::abs(std::real(m) - 0.5) > cfg_.calib_tol)
            throw pipeline_error("calibrate", "Re c_{j,0} deviates from 1/2 (upstream failure)");
        const cplx corr = kI * (-0.5 * std::imag(m));
        calib(j) += corr;
        worst = std::max(worst, std::abs(corr));
    }
    // pairs (j, -j): translate Phi_{-j} so the constant is exactly 1/2
    for (int j = 1; j < k; ++j) {
        const cplx m = measure(j);
        const cplx corr = cplx(0.5) - m;
        calib(-j) += corr;
        worst = std::max(worst, std::abs(corr));
    }
    // verify
    for (int j = 0; j <= k; ++j) {
        const cplx m = measure(j);
        if (std::abs(m - cplx(0.5)) > cfg_.calib_tol)
            throw pipeline_error("calibrate", "post-calibration constant differs from 1/2");
    }
    return worst;
}

std::pair<int, int> FatouSystem::transition_charts(int j) {
    if (j == 0) throw domain_error("transition: index must be nonzero");
    const int sgn = j > 0 ? 1 : -1;
    if (std::abs(j) % 2 == 1) return {j - sgn, j}; // odd: repulsive -> attractive
    return {j, j - sgn};                           // even: repulsive -> attractive
}

int FatouSystem::transition_line_sign(int j) { return harmonic_side(j); }

cplx FatouSystem::transition_eval(int j, cplx W, std::optional<cplx> seed) const {
    const auto [src, dst] = transition_charts(j);
    if (std::abs(j) > params_.k)
        throw domain_error("transition: index out of range");
    const int sgn = j > 0 ? 1 : -1;
    const double hint = (double(j) - 0.5 * sgn) * kPi / double(params_.k);
    const cplx Z = fatou_invert(src, W, hint, seed);
    last_source_chart_value = Z;
    const cplx z = chart_to_z(src, Z, hint);
    const cplx Z2 = chart_eval(params_, dst, z);
    return fatou_eval(dst, Z2, hint);
}

RawTransitionTable FatouSystem::fourier_extract(int j, double Y, int M, int n_max) const {
    const int sgn_line = transition_line_sign(j);
    if (Y * sgn_line <= 0.0)
        throw domain_error("fourier_extract: quadrature line on the wrong side");
    // consecutive quadrature samples are 1/M apart: warm-start each source
    // inversion from the previous one
    struct Cache {
        bool valid = false;
        cplx W = 0.0, Z = 0.0;
    };
    auto cache = std::make_shared<Cache>();
    auto fn = [this, j, cache](cplx W) {
        std::optional<cplx> seed;
        if (cache->valid && std::abs(W - cache->W) < 0.1)
            seed = cache->Z + (W - cache->W);
        const cplx out = transition_eval(j, W, seed);
        cache->valid = true;
        cache->W = W;
        cache->Z = last_source_chart_value;
        return out;
    };
    RawTransitionTable out = fourier_extract_fn(fn, harmonic_side(j), Y, M, n_max, cfg_.anchor);
    // Genuine coefficients do not depend on the height of the line; redo the
    // extraction at a second height and record the discrepancy as a
    // per-harmonic floor.  This catches smooth systematic error that is
    // invisible to the spectral tail.
    RawTransitionTable check =
        fourier_extract_fn(fn, harmonic_side(j), Y + 0.4 * sgn_line, M, n_max, cfg_.anchor);
    out.tail = std::max(out.tail, std::abs(out.constant - check.constant));
    for (auto& [n, c] : out.coeffs) {
        const double amp = std::exp(2.0 * kPi * std::abs(n) * std::abs(Y));
        const double disc = std::abs(c - check.coeffs.at(n));
        out.floors[std::abs(n)] = std::max(10.0 * out.tail * amp, 3.0 * disc);
    }
    return out;
}

RawTransitionTable FatouSystem::fourier_extract(int j) const {
    return fourier_extract(j, transition_line_sign(j) * cfg_.quad_height, cfg_.quad_samples,
                           cfg_.n_max);
}

double FatouSystem::abel_residual_probe(int j) const {
    const double re = chart_is_attracting(j) ? cfg_.anchor : -cfg_.anchor;
    const cplx Z(re * 0.8, 0.8);
    const cplx z = chart_to_z(j, Z, std::nullopt);
    const cplx Z2 = chart_eval(params_, j, forward_step(z));
    return std::abs(fatou_eval(j, Z2) - fatou_eval(j, Z) - 1.0);
}

void FatouSystem::nudge_calibration(int j, cplx offset) {
    calib(std::abs(j) == params_.k ? params_.k : j) += offset;
}

NormalizedModulus normalize_modulus(const std::map<int, RawTransitionTable>& raw,
                                    const VectorFieldParams& p, ModulusKind kind,
                                    double tol) {
    const int k = p.k;
    for (int j = 1; j <= k; ++j)
        if (!raw.count(j) || !raw.count(-j))
            throw domain_error("normalize_modulus: tables for all j = -k..-1,1..k required");

    auto cst = [&](int j) { return raw.at(j).constant; };
    const cplx step = kI * kPi * p.b / double(k);

    // forward cascade t_1..t_k (t_0 = 0)
    std::map<int, cplx> t;
    t[0] = 0.0;
    for (int j = 1; j <= k; ++j)
        t[j] = (j % 2 == 1) ? t[j - 1] - cst(j) - step : t[j - 1] + cst(j) - step;

    NormalizedModulus out;
    if (kind == ModulusKind::antiholomorphic) {
        out.seam_residual = std::abs(std::imag(t[k]));
        t[k] = std::real(t[k]); // the shared chart forces t_k real
        for (int j = 1; j <= k; ++j) t[-j] = std::conj(t[j]);
    } else {
        // independent backward cascade, then the shared chart +-k must agree
        for (int j = -1; j >= -k; --j)
            t[j] = (std::abs(j) % 2 == 1) ? t[j + 1] + step - cst(j)
                                          : t[j + 1] + step + cst(j);
        out.seam_residual = std::abs(t[-k] - t[k]);
        t[-k] = t[k];
    }
    if (out.seam_residual > tol)
        throw pipeline_error("normalize-modulus",
                             "translation cascade inconsistent (seam residual too large)");

    // alternating sum identity from the raw constants
    cplx alt = 0.0;
    for (int j = 1; j <= k; ++j) {
        const double sgn_neg = (j % 2 == 1) ? 1.0 : -1.0;   // (-1)^{j-1}
        const double sgn_pos = (j % 2 == 1) ? -1.0 : 1.0;   // (-1)^j
        alt += sgn_neg * cst(-j) + sgn_pos * cst(j);
    }
    out.alternating_sum_residual = std::abs(alt - 2.0 * kI * kPi * p.b);
    if (out.alternating_sum_residual > tol)
        throw pipeline_error("normalize-modulus",
                             "alternating sum of constants deviates from 2 i pi b");

    auto src_of = [](int j) { return (std::abs(j) % 2 == 1) ? j - (j > 0 ? 1 : -1) : j; };
    auto dst_of = [](int j) { return (std::abs(j) % 2 == 1) ? j : j - (j > 0 ? 1 : -1); };

    double eps = 1e-13;
    double height = 0.0;
    ModulusDescriptor& d = out.descriptor;
    auto transform = [&](int j) {
        const RawTransitionTable& rt = raw.at(j);
        HarmonicTable ht;
        ht.constant = rt.constant + t[dst_of(j)] - t[src_of(j)];
        for (auto& [n, c] : rt.coeffs) {
            const cplx factor = std::exp(-2.0 * kPi * kI * double(n) * t[src_of(j)]);
            ht.coeffs[n] = c * factor;
            auto fit = rt.floors.find(std::abs(n));
            if (fit != rt.floors.end()) {
                double& slot = d.harmonic_floors[std::abs(n)];
                slot = std::max(slot, fit->second * std::abs(factor));
            }
        }
        eps = std::max(eps, rt.tail);
        height = std::max(height, std::abs(rt.height));
        return ht;
    };

    d.kind = kind;
    d.k = k;
    d.b = p.b;
    for (int j = 1; j <= k; ++j) d.tables[j] = transform(j);
    if (kind == ModulusKind::holomorphic) {
        for (int j = 1; j <= k; ++j) d.tables[-j] = transform(-j);
    } else {
        for (int j = 1; j <= k; ++j) out.direct_negative[-j] = transform(-j);
    }
    d.n_max = 0;
    for (auto& [j, rt] : raw) d.n_max = std::max<int>(d.n_max, int(rt.coeffs.size()));
    d.floor_model = FloorModel{eps, height};
    d.noise_floor = 10.0 * eps;
    // harmonics whose floor exceeds any useful size carry no information
    auto strip = [&](HarmonicTable& ht) {
        for (auto it = ht.coeffs.begin(); it != ht.coeffs.end();)
            it = (d.floor_at(it->first) > 0.25) ? ht.coeffs.erase(it) : std::next(it);
    };
    for (auto& [j, ht] : d.tables) strip(ht);
    for (auto& [j, ht] : out.direct_negative) strip(ht);
    out.translations = t;
    return out;
}

cplx horn_map_eval(const ModulusDescriptor& m, int j, cplx w) {
    const HarmonicTable& t = m.table(j);
    cplx s = 0.0;
    for (auto& [n, c] : t.coeffs) {
        const cplx term = c * std::pow(w, -double(n));
        if (std::abs(term) > 1.0)
            throw domain_error("horn_map_eval: w outside the reliability annulus");
        s += term;
    }
    return w * std::exp(-2.0 * kPi * kI * (t.constant + s));
}

cplx horn_map_fixed_end_derivative(const ModulusDescriptor& m, int j) {
    const cplx cj = m.table(j).constant;
    // side +1: fixed end at infinity, multiplier e^{+2 i pi c_j};
    // side -1: fixed end at 0, multiplier e^{-2 i pi c_j}
    const double s = harmonic_side(j) > 0 ? 1.0 : -1.0;
    return std::exp(2.0 * kPi * kI * s * cj);
}

cplx horn_map_negative_via_reflection(const ModulusDescriptor& m, int j, cplx w) {
    auto tau = [](cplx u) { return 1.0 / std::conj(u); };
    const cplx u = -tau(w);
    const cplx v = horn_map_eval(m, j, u);
    return -tau(v);
}

double ecalle_height(cplx W, int chart, int k) {
    if (chart != 0 && std::abs(chart) != k)
        throw domain_error("ecalle_height: intrinsic only on the symmetry-axis charts");
    return std::imag(W);
}

ModulusPipelineResult compute_modulus(const TruncatedSeries& germ,
                                      const ModulusPipelineConfig& cfg) {
    // determine k first, then work at an order that exposes b (the jet is
    // the germ, so zero-extension is exact)
    const int k = codimension_of(germ);
    if (k == 0)
        throw domain_error("modulus: degenerate germ (conjugate to the conjugation)");
    const std::size_t order0 = std::max({germ.order(), cfg.input_order,
                                         std::size_t(2 * k + 4)});
    TruncatedSeries g0 = germ.truncated(order0);
    PrenormalizeResult pre = prenormalize(g0);

    VectorFieldParams p = pre.params;
    if (germ.anti()) {
        if (std::abs(std::imag(p.b)) > 1e-6)
            throw pipeline_error("prenormalize", "formal invariant has a large imaginary part");
        p.b = std::real(p.b);
    }

    ModulusPipelineResult out{p, pre.prenormalized, pre.change, {}, {}, {}, 0, 0, 0, 0};

    GermMap mapped(g0, pre.change);
    FatouSystem sys = germ.anti() ? FatouSystem::antiholomorphic(mapped, p, cfg.fatou)
                                  : FatouSystem::holomorphic(mapped, p, cfg.fatou);
    if (germ.anti()) out.calibration_correction = sys.calibrate_antiholomorphic();

    std::map<int, RawTransitionTable> raw;
    for (int j = 1; j <= k; ++j) {
        raw[j] = sys.fourier_extract(j);
        raw[-j] = sys.fourier_extract(-j);
    }
    NormalizedModulus norm =
        normalize_modulus(raw, p, germ.anti() ? ModulusKind::antiholomorphic
                                              : ModulusKind::holomorphic,
                          std::max(cfg.tol, 1e-4));
    out.descriptor = norm.descriptor;
    out.direct_negative = norm.direct_negative;
    out.translations = norm.translations;
    out.alternating_sum_residual = norm.alternating_sum_residual;
    out.seam_residual = norm.seam_residual;
    for (int j = -k; j <= k; ++j)
        out.abel_residual = std::max(out.abel_residual, sys.abel_residual_probe(j));
    return out;
}

} // namespace germforge
