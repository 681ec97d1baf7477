#pragma once

#include <functional>
#include <map>

#include "germforge/charts.hpp"
#include "germforge/germ_map.hpp"
#include "germforge/modulus.hpp"

namespace germforge {

struct FatouConfig {
    std::size_t work_order = 0;  // jet order for the asymptotic solve; 0 = 2k+22
    double stop_radius = 0.0;    // orbit stop radius in the chart; 0 = auto per k
    long iteration_cap = 100000;
    double escape_radius = 0.85; // z-space guard
    double anchor = 30.0;        // Re anchor of the extraction lines
    double quad_height = 2.0;    // |Im W| of the extraction lines
    int quad_samples = 256;
    int n_max = 12;
    double calib_tol = 1e-5;
};

// Raw Fourier data of one transition function along one period.
struct RawTransitionTable {
    cplx constant = 0.0;
    std::map<int, cplx> coeffs;    // expansion-side harmonics
    std::map<int, double> floors;  // per-harmonic error estimate (|n| keyed)
    double tail = 0.0;             // integrand noise from the top of the spectrum
    double wrong_side = 0.0;       // largest coefficient measured on the vanishing side
    double height = 0.0;
    int samples = 0;
};

// Periodic trapezoid extraction of W -> Psi(W) - W along Im W = Y, one
// period wide, anchored at an integer abscissa.
RawTransitionTable fourier_extract_fn(const std::function<cplx(cplx)>& Psi, int side,
                                      double Y, int M, int n_max, double anchor);

// Numerical Fatou coordinates of a parabolic germ in the time charts, one
// evaluator per chart j in {-k..k} (k and -k share one).  Construction is
// canonical: Phi_j(Z) = Z + o(1) along the petal, which fixes every additive
// constant; calibrate_antiholomorphic then removes the residual numerical
// freedom so that Phi_{-j} o F o Phi_j^{-1} = Sigma T_{1/2} exactly at the
// probe points.
class FatouSystem {
public:
    // antiholomorphic germ: f_pre = (change o base o change^{-1}) must be
    // prenormalized with invariants p (b real)
    static FatouSystem antiholomorphic(GermMap f_pre, VectorFieldParams p, FatouConfig cfg);
    // holomorphic germ, prenormalized
    static FatouSystem holomorphic(GermMap g_pre, VectorFieldParams p, FatouConfig cfg);

    const VectorFieldParams& params() const { return params_; }
    bool anti() const { return anti_; }
    const FatouConfig& config() const { return cfg_; }

    bool chart_attracting(int j) const;

    // Phi_j and its inverse; angle_hint selects the z-branch when the point
    // lies in a lens rather than over the chart axis
    cplx fatou_eval(int j, cplx Z, std::optional<double> angle_hint = std::nullopt) const;
    cplx fatou_invert(int j, cplx W, std::optional<double> angle_hint = std::nullopt,
                      std::optional<cplx> seed = std::nullopt) const;

    // Q_j = Phi_{-j} o F o Phi_j^{-1}, defined for antiholomorphic systems
    cplx antiholo_in_fatou(int j, cplx W) const;

    // measures every Q_j, checks it has the shape Sigma T_c, and translates
    // the Fatou coordinates so c = 1/2 exactly; returns the largest
    // correction applied
    double calibrate_antiholomorphic();

    // Psi_j per the transition-function definition (j in -k..-1, 1..k);
    // seed warm-starts the source-coordinate inversion
    cplx transition_eval(int j, cplx W, std::optional<cplx> seed = std::nullopt) const;
    // the intermediate Z = Phi_src^{-1}(W) of the last transition_eval call
    mutable cplx last_source_chart_value = 0.0;

    RawTransitionTable fourier_extract(int j, double Y, int M, int n_max) const;
    RawTransitionTable fourier_extract(int j) const; // config defaults

    // |Phi_j(G_j(Z)) - Phi_j(Z) - 1| at a probe point of chart j
    double abel_residual_probe(int j) const;

    // direction of the quadrature line for Psi_j (sign of Im W)
    static int transition_line_sign(int j);
    // source and destination Fatou charts of Psi_j
    static std::pair<int, int> transition_charts(int j);

    // manual translation of one Fatou coordinate (test hook)
    void nudge_calibration(int j, cplx offset);

private:
    FatouSystem() = default;
    void build(GermMap germ, VectorFieldParams p, FatouConfig cfg, bool anti);

    cplx chart_to_z(int j, cplx Z, std::optional<double> hint) const;
    cplx raw_phi(int j, cplx Z, std::optional<double> hint) const;
    cplx forward_step(cplx z) const;  // the unit-time map (f o f for anti)
    cplx backward_step(cplx z) const;

    cplx& calib(int j) { return calib_[std::size_t(j + params_.k)]; }
    cplx calib(int j) const { return calib_[std::size_t(j + params_.k)]; }

    VectorFieldParams params_;
    FatouConfig cfg_;
    bool anti_ = false;
    std::optional<GermMap> germ_;
    std::vector<cplx> phi_;    // asymptotic correction jet (degree-indexed)
    std::vector<cplx> calib_;  // per chart, index j + k
    double z_stop_ = 0.0;
};

// Solves phi(g(z)) - phi(z) = 1 - (Z(g(z)) - Z(z)) order by order from the
// jet of the unit-time germ; shared by FatouSystem and exposed for tests.
std::vector<cplx> abel_correction_jet(const TruncatedSeries& unit_jet,
                                      const VectorFieldParams& p);

// Normalization of extracted tables to the paper's constants.
struct NormalizedModulus {
    ModulusDescriptor descriptor;
    std::map<int, HarmonicTable> direct_negative; // antiholomorphic runs only
    std::map<int, cplx> translations;             // the applied t_j
    double alternating_sum_residual = 0.0;
    double seam_residual = 0.0; // |Im t_k| (anti) or |t_k - t_{-k}| (holo)
};

NormalizedModulus normalize_modulus(const std::map<int, RawTransitionTable>& raw,
                                    const VectorFieldParams& p, ModulusKind kind,
                                    double tol = 1e-4);

// Horn maps evaluated through the coefficient tables:
// psi_j = E o Psi_j o E^{-1}, E(W) = exp(-2 i pi W).
cplx horn_map_eval(const ModulusDescriptor& m, int j, cplx w);
// multiplier of psi_j at its fixed end (infinity for j odd, 0 for j even)
cplx horn_map_fixed_end_derivative(const ModulusDescriptor& m, int j);
// psi_{-j} through the reflection formula L_{-1} o tau o psi_j o L_{-1} o tau
cplx horn_map_negative_via_reflection(const ModulusDescriptor& m, int j, cplx w);

// Ecalle height: Im W, intrinsic only on the charts meeting the symmetry axis
double ecalle_height(cplx W, int chart, int k);

// End-to-end modulus computation.
struct ModulusPipelineConfig {
    std::size_t input_order = 0; // 0 = keep germ order
    FatouConfig fatou;
    double tol = 1e-4;
};

struct ModulusPipelineResult {
    VectorFieldParams params;
    TruncatedSeries prenormalized;
    TruncatedSeries change;
    ModulusDescriptor descriptor;
    std::map<int, HarmonicTable> direct_negative;
    std::map<int, cplx> translations;
    double alternating_sum_residual = 0.0;
    double seam_residual = 0.0;
    double calibration_correction = 0.0;
    double abel_residual = 0.0;
};

ModulusPipelineResult compute_modulus(const TruncatedSeries& germ,
                                      const ModulusPipelineConfig& cfg = {});

} // namespace germforge
