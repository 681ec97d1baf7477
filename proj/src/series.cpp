#include "germforge/series.hpp"

#include <algorithm>
#include <cmath>

namespace germforge {

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
    if (outer.order() != inner.order())
        throw domain_error("compose: order mismatch");
    const TruncatedSeries in = outer.anti() ? inner.with_conjugated_coeffs() : inner;
    auto c = jets::substitute(outer.coeffs(), in.coeffs());
    Parity p = (outer.anti() != inner.anti()) ? Parity::antiholomorphic
                                              : Parity::holomorphic;
    return TruncatedSeries(p, std::move(c));
}

TruncatedSeries invert(const TruncatedSeries& s) {
    const cplx a1 = s.linear_coeff();
    if (std::abs(a1) == 0.0)
        throw domain_error("invert: linear part vanishes");
    if (s.anti() && std::abs(std::abs(a1) - 1.0) > 1e-9)
        throw domain_error("invert: antiholomorphic germ with |a_1| != 1");
    auto b = jets::reversion(s.coeffs());
    if (!s.anti())
        return TruncatedSeries(Parity::holomorphic, std::move(b));
    // f = A o sigma  =>  f^{-1} = sigma o A^{-1}, i.e. the antiholomorphic
    // series with coefficients conj(A^{-1}).
    for (auto& x : b) x = std::conj(x);
    return TruncatedSeries(Parity::antiholomorphic, std::move(b));
}

TruncatedSeries conjugate_by(const TruncatedSeries& h, const TruncatedSeries& f) {
    if (h.anti())
        throw domain_error("conjugate_by: change of variable must be holomorphic");
    if (h.order() != f.order())
        throw domain_error("conjugate_by: order mismatch");
    return compose(compose(h, f), invert(h));
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.parity() != b.parity())
        throw domain_error("series_add: parity mismatch");
    if (a.order() != b.order())
        throw domain_error("series_add: order mismatch");
    std::vector<cplx> c = a.coeffs();
    for (std::size_t d = 0; d < c.size(); ++d) c[d] += b.coeff(d);
    return TruncatedSeries(a.parity(), std::move(c));
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    return series_add(a, series_scale(b, cplx(-1.0)));
}

TruncatedSeries series_scale(const TruncatedSeries& a, cplx factor) {
    std::vector<cplx> c = a.coeffs();
    for (auto& x : c) x *= factor;
    return TruncatedSeries(a.parity(), std::move(c));
}

cplx residue_iteratif(const TruncatedSeries& g) {
    if (g.anti())
        throw domain_error("residue_iteratif: germ must be holomorphic");
    if (std::abs(g.linear_coeff() - cplx(1.0)) > 1e-12)
        throw domain_error("residue_iteratif: germ must be tangent to the identity");
    const std::size_t N = g.order();
    // z - g(z) = -c_{k+1} z^{k+1} (1 + w(z))
    std::size_t lead = 0;
    for (std::size_t d = 2; d <= N; ++d) {
        if (std::abs(g.coeff(d)) > 0.0) { lead = d; break; }
    }
    if (lead == 0)
        throw domain_error("residue_iteratif: identity to this order, no parabolic term");
    const std::size_t k = lead - 1;
    if (2 * k + 1 > N)
        throw domain_error("residue_iteratif: order too small, need N >= 2k+1");
    const cplx ck1 = g.coeff(lead);
    // w to order k, then the geometric series (1+w)^{-1} to order k
    std::vector<cplx> w(k + 1, cplx(0.0));
    for (std::size_t d = 1; d <= k; ++d) w[d] = g.coeff(lead + d) / ck1;
    std::vector<cplx> inv(k + 1, cplx(0.0));
    inv[0] = 1.0;
    for (std::size_t d = 1; d <= k; ++d) {
        cplx s = 0.0;
        for (std::size_t m = 1; m <= d; ++m) s += w[m] * inv[d - m];
        inv[d] = -s;
    }
    return -inv[k] / ck1;
}

double coeff_distance(const TruncatedSeries& a, const TruncatedSeries& b) {
    double m = 0.0;
    const std::size_t N = std::max(a.order(), b.order());
    for (std::size_t d = 0; d <= N; ++d)
        m = std::max(m, std::abs(a.coeff(d) - b.coeff(d)));
    return m;
}

bool is_identity(const TruncatedSeries& s, double tol) {
    if (std::abs(s.coeff(1) - cplx(1.0)) > tol) return false;
    for (std::size_t d = 2; d <= s.order(); ++d)
        if (std::abs(s.coeff(d)) > tol) return false;
    return true;
}

} // namespace germforge
