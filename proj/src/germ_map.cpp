#include "germforge/germ_map.hpp"

#include <cmath>

namespace germforge {

cplx poly_eval(const std::vector<cplx>& c, cplx z) {
    cplx acc = 0.0;
    for (std::size_t d = c.size() - 1; d >= 1; --d) {
        acc = (acc + c[d]) * z;
        if (d == 1) break;
    }
    return acc;
}

cplx poly_deriv_eval(const std::vector<cplx>& c, cplx z) {
    cplx acc = 0.0;
    for (std::size_t d = c.size() - 1; d >= 1; --d) {
        acc = acc * z + double(d) * c[d];
        if (d == 1) break;
    }
    return acc;
}

cplx poly_solve(const std::vector<cplx>& p, const std::vector<cplx>& inv_seed, cplx w,
                const char* stage) {
    cplx u = poly_eval(inv_seed, w);
    for (int it = 0; it < 60; ++it) {
        const cplx r = poly_eval(p, u) - w;
        if (std::abs(r) <= 1e-15 * (1.0 + std::abs(w))) return u;
        const cplx dp = poly_deriv_eval(p, u);
        if (!(std::abs(dp) > 0.0))
            throw pipeline_error(stage, "Newton inversion hit a critical point");
        u -= r / dp;
        if (!std::isfinite(std::real(u)) || !std::isfinite(std::imag(u)))
            throw pipeline_error(stage, "Newton inversion diverged");
    }
    // accept a slightly looser answer before declaring failure
    if (std::abs(poly_eval(p, u) - w) <= 1e-11 * (1.0 + std::abs(w))) return u;
    throw pipeline_error(stage, "Newton inversion did not converge");
}

GermMap::GermMap(TruncatedSeries base)
    : GermMap(std::move(base), TruncatedSeries::identity(1)) {}

GermMap::GermMap(TruncatedSeries base, TruncatedSeries change)
    : base_(std::move(base)), h_(std::move(change)) {
    if (h_.anti())
        throw domain_error("germ map: change of variable must be holomorphic");
    base_rep_inv_ = jets::reversion(base_.coeffs());
    h_is_identity_ = is_identity(h_, 0.0);
    if (!h_is_identity_) h_inv_ = jets::reversion(h_.coeffs());
}

cplx GermMap::to_base_coords(cplx z) const {
    if (h_is_identity_) return z;
    return poly_solve(h_.coeffs(), h_inv_, z, "germ-map/h-inverse");
}

cplx GermMap::from_base_coords(cplx u) const {
    if (h_is_identity_) return u;
    return poly_eval(h_.coeffs(), u);
}

cplx GermMap::base_forward(cplx z) const {
    return poly_eval(base_.coeffs(), base_.anti() ? std::conj(z) : z);
}

cplx GermMap::base_backward(cplx w) const {
    // holomorphic rep A: f = A (o sigma); f^{-1}(w) = (sigma o) A^{-1}(w)
    const cplx v = poly_solve(base_.coeffs(), base_rep_inv_, w, "germ-map/backward");
    return base_.anti() ? std::conj(v) : v;
}

cplx GermMap::eval(cplx z) const {
    return from_base_coords(base_forward(to_base_coords(z)));
}

cplx GermMap::eval_inverse(cplx w) const {
    return from_base_coords(base_backward(to_base_coords(w)));
}

cplx GermMap::eval_square(cplx z) const {
    return from_base_coords(base_forward(base_forward(to_base_coords(z))));
}

cplx GermMap::eval_square_inverse(cplx w) const {
    return from_base_coords(base_backward(base_backward(to_base_coords(w))));
}

TruncatedSeries GermMap::jet(std::size_t order) const {
    if (h_is_identity_) return base_.truncated(order);
    return conjugate_by(h_.truncated(order), base_.truncated(order));
}

TruncatedSeries GermMap::square_jet(std::size_t order) const {
    auto f = jet(order);
    return compose(f, f);
}

} // namespace germforge
