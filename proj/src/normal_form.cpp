#include "germforge/normal_form.hpp"

#include <cmath>
#include <numbers>

namespace germforge {

namespace {

constexpr double kDegenerateTol = 1e-10;
constexpr double kZeroCoeffTol = 1e-11;

// replaces f by h o f o h^{-1} and accumulates h into total (total <- h o total)
void push_change(TruncatedSeries& f, TruncatedSeries& total, const TruncatedSeries& h) {
    f = conjugate_by(h, f);
    total = compose(h, total);
}

TruncatedSeries monomial_change(std::size_t order, std::size_t degree, cplx gamma) {
    std::vector<cplx> c(order + 1, cplx(0.0));
    c[1] = 1.0;
    if (degree <= order) c[degree] += gamma;
    return TruncatedSeries(Parity::holomorphic, std::move(c));
}

TruncatedSeries scaling_change(std::size_t order, cplx lambda) {
    std::vector<cplx> c(order + 1, cplx(0.0));
    c[1] = lambda;
    return TruncatedSeries(Parity::holomorphic, std::move(c));
}

int first_nonlinear_degree(const TruncatedSeries& s, double tol) {
    for (std::size_t d = 2; d <= s.order(); ++d)
        if (std::abs(s.coeff(d)) > tol) return int(d);
    return 0;
}

} // namespace

RealifyResult realify(const TruncatedSeries& f) {
    if (!f.anti())
        throw domain_error("realify: germ must be antiholomorphic");
    const cplx a1 = f.linear_coeff();
    if (std::abs(std::abs(a1) - 1.0) > 1e-9)
        throw domain_error("realify: |a_1| must be 1");
    const std::size_t N = f.order();

    TruncatedSeries cur = f;
    TruncatedSeries total = TruncatedSeries::identity(N);

    // Linear step: a scaling lambda = e^{i theta} with theta = -arg(a_1)/2
    // makes the multiplier 1 (the scaling acts on it by lambda/conj(lambda)).
    const double theta = -0.5 * std::arg(a1);
    push_change(cur, total, scaling_change(N, std::polar(1.0, theta)));

    // Degree by degree, conjugation by z + i beta z^n shifts the degree-n
    // coefficient by 2 i beta and leaves lower degrees untouched.
    for (std::size_t n = 2; n <= N; ++n) {
        const double im = std::imag(cur.coeff(n));
        if (std::abs(im) == 0.0) continue;
        push_change(cur, total, monomial_change(N, n, cplx(0.0, -0.5 * im)));
    }
    return RealifyResult{cur, total};
}

int codimension_of(const TruncatedSeries& f) {
    if (!f.anti()) {
        if (std::abs(f.linear_coeff() - cplx(1.0)) > 1e-9)
            throw domain_error("codimension: holomorphic germ must be tangent to the identity");
        if (is_identity(f, kDegenerateTol)) return 0;
        int lead = first_nonlinear_degree(f, kZeroCoeffTol);
        if (lead == 0)
            throw undetermined_error("codimension: no nonlinear term at this order");
        return lead - 1;
    }
    if (is_identity(compose(f, f), kDegenerateTol)) return 0;
    int lead = first_nonlinear_degree(realify(f).real_form, kZeroCoeffTol);
    if (lead == 0)
        throw undetermined_error("codimension: undetermined at this order");
    return lead - 1;
}

FormalClass classify(const TruncatedSeries& f0) {
    FormalClass out;
    const int k0 = codimension_of(f0);
    if (k0 == 0) {
        out.degenerate = true;
        return out;
    }
    // the jet is the germ: reading b may need more orders than were stored
    const TruncatedSeries f =
        f0.truncated(std::max(f0.order(), std::size_t(2 * k0 + 2)));
    if (!f.anti()) {
        out.k = k0;
        out.b = prenormalize(f).params.b;
        return out;
    }

    RealifyResult r = realify(f);
    int lead = first_nonlinear_degree(r.real_form, kZeroCoeffTol);
    out.k = lead - 1;
    const double lead_coeff = std::real(r.real_form.coeff(std::size_t(lead)));
    if (out.k % 2 == 0)
        out.type_sign = lead_coeff > 0 ? TypeSign::positive : TypeSign::negative;

    if (out.type_sign == TypeSign::negative) {
        // b read from f o f through the holomorphic route (prenormalize
        // refuses negative type)
        out.b = prenormalize(compose(f, f)).params.b;
    } else {
        out.b = prenormalize(f).params.b;
    }
    return out;
}

namespace {

// Shared sweep: kills coefficients of degree k+2 .. 2k by conjugations
// z + gamma z^s with s = degree - k.  Corrections quadratic in gamma can
// re-populate already-killed degrees, so sweep until converged.
void kill_intermediate_terms(TruncatedSeries& cur, TruncatedSeries& total, int k) {
    const std::size_t N = cur.order();
    const bool anti = cur.anti();
    for (int pass = 0; pass < 40; ++pass) {
        double worst = 0.0;
        for (int m = k + 2; m <= 2 * k && std::size_t(m) <= N; ++m) {
            const cplx c = cur.coeff(std::size_t(m));
            if (std::abs(c) <= 1e-15) continue;
            worst = std::max(worst, std::abs(c));
            const int s = m - k;
            cplx gamma;
            if (anti) {
                // coefficient moves by (gamma s - conj(gamma)(k+1))/2
                gamma = cplx(-2.0 * std::real(c) / double(s - k - 1),
                             -2.0 * std::imag(c) / double(s + k + 1));
            } else {
                // coefficient moves by gamma (s - k - 1)
                gamma = c / double(k + 1 - s);
            }
            push_change(cur, total, monomial_change(N, std::size_t(s), gamma));
        }
        if (worst < 1e-15) break;
    }
}

} // namespace

PrenormalizeResult prenormalize(const TruncatedSeries& f) {
    const std::size_t N = f.order();

    if (!f.anti()) {
        if (std::abs(f.linear_coeff() - cplx(1.0)) > 1e-9)
            throw domain_error("prenormalize: holomorphic germ must be tangent to the identity");
        int lead = first_nonlinear_degree(f, kZeroCoeffTol);
        if (lead == 0)
            throw undetermined_error("prenormalize: no parabolic term at this order");
        const int k = lead - 1;
        if (std::size_t(2 * k + 1) > N)
            throw domain_error("prenormalize: order too small, need N >= 2k+1");

        TruncatedSeries cur = f;
        TruncatedSeries total = TruncatedSeries::identity(N);
        // scaling lambda^k = c_{k+1}; pick the k-th root with argument in [0, 2pi/k)
        const cplx ck1 = cur.coeff(std::size_t(k + 1));
        double ang = std::arg(ck1) / double(k);
        const double sector = 2.0 * std::numbers::pi / double(k);
        while (ang < 0.0) ang += sector;
        while (ang >= sector) ang -= sector;
        const cplx lambda = std::polar(std::pow(std::abs(ck1), 1.0 / double(k)), ang);
        push_change(cur, total, scaling_change(N, lambda));
        kill_intermediate_terms(cur, total, k);

        const std::size_t hdeg = std::min<std::size_t>(N, std::size_t(2 * k + 2));
        TruncatedSeries h = total.truncated(hdeg);
        TruncatedSeries pre = conjugate_by(h.truncated(N), f);
        VectorFieldParams p;
        p.k = k;
        p.b = cplx(0.5 * double(k + 1)) - pre.coeff(std::size_t(2 * k + 1));
        return PrenormalizeResult{pre, p, h};
    }

    RealifyResult r = realify(f);
    TruncatedSeries cur = r.real_form;
    TruncatedSeries total = r.change;
    int lead = first_nonlinear_degree(cur, kZeroCoeffTol);
    if (lead == 0)
        throw undetermined_error("prenormalize: no parabolic term at this order");
    const int k = lead - 1;
    if (std::size_t(2 * k + 1) > N)
        throw domain_error("prenormalize: order too small, need N >= 2k+1");
    const double lead_coeff = std::real(cur.coeff(std::size_t(lead)));
    if (k % 2 == 0 && lead_coeff < 0.0)
        throw domain_error("prenormalize: negative type, classify and invert first");

    // real scaling lambda^k = 2 A_{k+1}; for odd k a negative lambda flips the sign
    const double target = 2.0 * lead_coeff;
    double lambda = std::pow(std::abs(target), 1.0 / double(k));
    if (target < 0.0) lambda = -lambda; // k odd here
    push_change(cur, total, scaling_change(N, cplx(lambda)));

    kill_intermediate_terms(cur, total, k);

    // degree 2k+1: the imaginary part is removable by z + i beta z^{k+1}
    // (it shifts the coefficient by (k+1) i beta); the real part encodes b.
    if (std::size_t(2 * k + 1) <= N) {
        const double im = std::imag(cur.coeff(std::size_t(2 * k + 1)));
        if (std::abs(im) > 0.0)
            push_change(cur, total,
                        monomial_change(N, std::size_t(k + 1), cplx(0.0, -im / double(k + 1))));
    }

    // the change of variable is polynomial of degree <= 2k+2; re-derive the
    // transformed germ from the truncated change so the returned pair is
    // exactly consistent
    const std::size_t hdeg = std::min<std::size_t>(N, std::size_t(2 * k + 2));
    TruncatedSeries h = total.truncated(hdeg);
    TruncatedSeries pre = conjugate_by(h.truncated(N), f);
    VectorFieldParams p;
    p.k = k;
    p.b = cplx(0.25 * double(k + 1)) - 2.0 * pre.coeff(std::size_t(2 * k + 1));
    return PrenormalizeResult{pre, p, h};
}

TruncatedSeries flow_map(const VectorFieldParams& p, cplx t, std::size_t order) {
    if (order < std::size_t(p.k + 1))
        throw domain_error("flow_map: order must be at least k+1");
    // v(z) = z^{k+1} (1 - b z^k + b^2 z^{2k} - ...)
    jets::Jet<cplx> v = jets::zero<cplx>(order);
    cplx pw = 1.0;
    for (std::size_t d = std::size_t(p.k + 1); d <= order; d += std::size_t(p.k)) {
        v[d] = pw;
        pw *= -p.b;
    }
    // Lie series: v^t = sum_m t^m/m! X^m(id), X(h) = v h'; the m-th term
    // starts at degree mk+1, so the sum is finite at any jet order.
    jets::Jet<cplx> term = jets::identity<cplx>(order);
    jets::Jet<cplx> out = jets::zero<cplx>(order);
    cplx tm = 1.0;
    for (std::size_t m = 0;; ++m) {
        if (m > 0) {
            term = jets::mul(v, jets::derivative(term));
            tm *= t / double(m);
            if (std::size_t(m) * std::size_t(p.k) + 1 > order) break;
        }
        for (std::size_t d = 0; d <= order; ++d) out[d] += tm * term[d];
        if (std::size_t(m + 1) * std::size_t(p.k) + 1 > order) break;
    }
    out[0] = 0.0;
    return TruncatedSeries(Parity::holomorphic, std::move(out));
}

TruncatedSeries normal_form_holomorphic(const VectorFieldParams& p, cplx t, std::size_t order) {
    return flow_map(p, t, order);
}

TruncatedSeries normal_form_antiholomorphic(const VectorFieldParams& p, cplx t,
                                            std::size_t order, int ell) {
    // sigma_ell o v^t (z) = e^{2 i pi ell / k} conj(v^t(z)): the
    // antiholomorphic series with coefficients e^{2 i pi ell/k} conj(c_m).
    TruncatedSeries vt = flow_map(p, t, order);
    const cplx rot = std::polar(1.0, 2.0 * std::numbers::pi * double(ell) / double(p.k));
    std::vector<cplx> c = vt.coeffs();
    for (auto& x : c) x = rot * std::conj(x);
    return TruncatedSeries(Parity::antiholomorphic, std::move(c));
}

RootFamilyDescription normal_form_root_families(const VectorFieldParams& p, int n) {
    if (n < 2) throw domain_error("root families: n must be at least 2");
    RootFamilyDescription d;
    d.n = n;
    d.even = (n % 2 == 0);
    d.family_count = d.even ? p.k : 1;
    d.one_parameter = d.even;
    return d;
}

TruncatedSeries make_normal_form_root(const VectorFieldParams& p, int n, int ell,
                                      double y, std::size_t order) {
    if (n < 2) throw domain_error("root: n must be at least 2");
    if (n % 2 == 0) {
        if (ell < 0 || ell >= p.k)
            throw domain_error("root: family index out of range");
        return normal_form_antiholomorphic(p, cplx(1.0 / double(n), y), order, ell);
    }
    return normal_form_antiholomorphic(p, cplx(1.0 / (2.0 * double(n)), 0.0), order, 0);
}

} // namespace germforge
