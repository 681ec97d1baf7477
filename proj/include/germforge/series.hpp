#pragma once

#include <complex>
#include <vector>

#include "germforge/errors.hpp"

namespace germforge {

using cplx = std::complex<double>;

enum class Parity { holomorphic, antiholomorphic };

// Generic order-N jet algorithms over any field-like scalar.  The public
// TruncatedSeries below instantiates them with std::complex<double>; the
// test suite re-instantiates them with exact Gaussian rationals to get an
// independent arithmetic backend.
//
// A jet is stored degree-indexed: c[0] is the (always zero) constant term,
// c[d] the coefficient of z^d, size() == N+1.
namespace jets {

template <class F>
using Jet = std::vector<F>;

template <class F>
Jet<F> zero(std::size_t order) {
    return Jet<F>(order + 1, F(0));
}

template <class F>
Jet<F> identity(std::size_t order) {
    Jet<F> j = zero<F>(order);
    if (order >= 1) j[1] = F(1);
    return j;
}

template <class F>
Jet<F> mul(const Jet<F>& a, const Jet<F>& b) {
    const std::size_t n = a.size() - 1;
    Jet<F> out = zero<F>(n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (a[i] == F(0)) continue;
        for (std::size_t j = 0; i + j <= n; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

// Substitution outer(inner) for jets with no constant term, truncated at
// the common order.  Horner in jet space.
template <class F>
Jet<F> substitute(const Jet<F>& outer, const Jet<F>& inner) {
    const std::size_t n = outer.size() - 1;
    Jet<F> acc = zero<F>(n);
    for (std::size_t m = n; m >= 1; --m) {
        acc = mul(acc, inner);
        acc[0] += outer[m];
        if (m == 1) break;
    }
    Jet<F> out = mul(acc, inner);
    out[0] = F(0);
    return out;
}

// Compositional inverse: solves substitute(s, t) = id order by order.
template <class F>
Jet<F> reversion(const Jet<F>& s) {
    const std::size_t n = s.size() - 1;
    if (n < 1 || s[1] == F(0))
        throw domain_error("reversion: linear part vanishes");
    Jet<F> t = zero<F>(n);
    t[1] = F(1) / s[1];
    for (std::size_t m = 2; m <= n; ++m) {
        // with b_m = 0, [z^m] s(t) is already determined by lower orders
        Jet<F> comp = substitute(s, t);
        t[m] = (F(0) - comp[m]) / s[1];
    }
    return t;
}

template <class F>
Jet<F> derivative(const Jet<F>& a) {
    Jet<F> out(a.size(), F(0));
    for (std::size_t d = 1; d < a.size(); ++d)
        out[d - 1] = F(int(d)) * a[d];
    return out;
}

} // namespace jets

// Order-N jet of a germ fixing the origin, tagged holomorphic or
// antiholomorphic.  An antiholomorphic germ f is stored through its
// holomorphic representative A (f = A of conj z); all conjugate-linear
// bookkeeping happens in compose().
class TruncatedSeries {
public:
    TruncatedSeries(Parity parity, std::vector<cplx> degree_coeffs)
        : parity_(parity), c_(std::move(degree_coeffs)) {
        if (c_.size() < 2)
            throw domain_error("series: order must be at least 1");
        if (c_[0] != cplx(0.0))
            throw domain_error("series: nonzero constant term");
    }

    static TruncatedSeries from_coeffs(Parity p, const std::vector<cplx>& a1_to_aN) {
        std::vector<cplx> c(a1_to_aN.size() + 1, cplx(0.0));
        for (std::size_t i = 0; i < a1_to_aN.size(); ++i) c[i + 1] = a1_to_aN[i];
        return TruncatedSeries(p, std::move(c));
    }

    static TruncatedSeries identity(std::size_t order) {
        return TruncatedSeries(Parity::holomorphic, jets::identity<cplx>(order));
    }

    // sigma(z) = conj(z)
    static TruncatedSeries sigma(std::size_t order) {
        return TruncatedSeries(Parity::antiholomorphic, jets::identity<cplx>(order));
    }

    Parity parity() const { return parity_; }
    bool anti() const { return parity_ == Parity::antiholomorphic; }
    std::size_t order() const { return c_.size() - 1; }

    // coefficient of z^d (holomorphic) or conj(z)^d (antiholomorphic)
    cplx coeff(std::size_t degree) const {
        return degree < c_.size() ? c_[degree] : cplx(0.0);
    }
    const std::vector<cplx>& coeffs() const { return c_; }

    TruncatedSeries truncated(std::size_t order) const {
        std::vector<cplx> c(order + 1, cplx(0.0));
        for (std::size_t d = 0; d <= order && d < c_.size(); ++d) c[d] = c_[d];
        return TruncatedSeries(parity_, std::move(c));
    }

    TruncatedSeries with_conjugated_coeffs() const {
        std::vector<cplx> c = c_;
        for (auto& x : c) x = std::conj(x);
        return TruncatedSeries(parity_, std::move(c));
    }

    // Pointwise evaluation of the germ (the jet read as a polynomial map).
    cplx eval(cplx z) const {
        cplx w = anti() ? std::conj(z) : z;
        cplx acc = 0.0;
        for (std::size_t d = c_.size() - 1; d >= 1; --d) {
            acc = (acc + c_[d]) * w;
            if (d == 1) break;
        }
        return acc;
    }

    cplx linear_coeff() const { return c_[1]; }

private:
    Parity parity_;
    std::vector<cplx> c_;
};

// Composition outer(inner) to the common order, with the parity algebra
// holo*holo = holo, anti*anti = holo, mixed = anti.  When the outer germ is
// antiholomorphic, the inner coefficients are conjugated before
// substitution.
TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

// Compositional inverse to order N.
TruncatedSeries invert(const TruncatedSeries& s);

// h o f o h^{-1} for holomorphic h with nonzero linear part.
TruncatedSeries conjugate_by(const TruncatedSeries& h, const TruncatedSeries& f);

enum class ArithOp { add, sub, scale };

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scale(const TruncatedSeries& a, cplx factor);

// Coefficient of z^{-1} in the Laurent expansion of 1/(z - g(z)) at 0,
// for holomorphic g tangent to the identity ("residu iteratif").
cplx residue_iteratif(const TruncatedSeries& g);

// max over degrees of |a_d - b_d|
double coeff_distance(const TruncatedSeries& a, const TruncatedSeries& b);

bool is_identity(const TruncatedSeries& s, double tol);

} // namespace germforge
