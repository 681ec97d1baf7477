#pragma once

// Test-only oracles, deliberately independent of the library's series code
// paths: dense polynomial arithmetic for composition, the Lagrange inversion
// formula for reversion, long division for the iterative residue, and an
// exact Gaussian-rational jet backend for the realification recursion.

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "germforge/series.hpp"

namespace oracles {

using cplx = std::complex<double>;
using Poly = std::vector<cplx>; // degree-indexed, p[0] = constant

inline Poly poly_mul(const Poly& a, const Poly& b, std::size_t cap) {
    Poly out(cap + 1, cplx(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= cap; ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

// outer(inner) by brute-force power accumulation
inline Poly poly_compose(const Poly& outer, const Poly& inner, std::size_t cap) {
    Poly out(cap + 1, cplx(0.0));
    Poly pw(cap + 1, cplx(0.0));
    pw[0] = 1.0;
    for (std::size_t m = 0; m < outer.size(); ++m) {
        if (m > 0) pw = poly_mul(pw, inner, cap);
        for (std::size_t d = 0; d <= cap; ++d) out[d] += outer[m] * pw[d];
    }
    return out;
}

// Lagrange inversion: for f(z) = sum_{m>=1} a_m z^m with a_1 != 0, the
// inverse series has b_n = (1/n) [t^{n-1}] (t/f(t))^n.
inline Poly lagrange_inverse(const Poly& f, std::size_t cap) {
    if (f.size() < 2 || f[1] == cplx(0.0))
        throw std::runtime_error("lagrange_inverse: bad linear part");
    // g(t) = t/f(t) = 1/(a_1 + a_2 t + ...), by long division
    Poly denom(cap + 1, cplx(0.0));
    for (std::size_t d = 0; d <= cap; ++d)
        denom[d] = (d + 1 < f.size()) ? f[d + 1] : cplx(0.0);
    Poly g(cap + 1, cplx(0.0));
    g[0] = 1.0 / denom[0];
    for (std::size_t d = 1; d <= cap; ++d) {
        cplx s = 0.0;
        for (std::size_t m = 1; m <= d; ++m) s += denom[m] * g[d - m];
        g[d] = -s / denom[0];
    }
    Poly out(cap + 1, cplx(0.0));
    Poly gp(cap + 1, cplx(0.0));
    gp[0] = 1.0;
    for (std::size_t n = 1; n <= cap; ++n) {
        gp = poly_mul(gp, g, cap); // g^n
        out[n] = gp[n - 1] / double(n);
    }
    return out;
}

// Coefficient of z^{-1} of 1/(z - g(z)) by Laurent long division:
// write z - g(z) = z^{v} u(z) with u(0) != 0, then
// 1/(z-g) = z^{-v} u^{-1}(z) and the residue is [z^{v-1}] u^{-1}.
inline cplx residue_by_division(const Poly& g) {
    const std::size_t cap = g.size() - 1;
    Poly num(cap + 1, cplx(0.0));
    num[1] = 1.0;
    for (std::size_t d = 0; d <= cap && d < g.size(); ++d) num[d] -= g[d];
    std::size_t v = 0;
    while (v <= cap && std::abs(num[v]) < 1e-14) ++v;
    if (v > cap) throw std::runtime_error("residue oracle: zero denominator");
    Poly u(cap + 1 - v, cplx(0.0));
    for (std::size_t d = v; d <= cap; ++d) u[d - v] = num[d];
    // invert the unit u
    Poly uin(u.size(), cplx(0.0));
    uin[0] = 1.0 / u[0];
    for (std::size_t d = 1; d < u.size(); ++d) {
        cplx s = 0.0;
        for (std::size_t m = 1; m <= d; ++m)
            s += (m < u.size() ? u[m] : cplx(0.0)) * uin[d - m];
        uin[d] = -s / u[0];
    }
    if (v == 0 || v - 1 >= uin.size()) return 0.0;
    return uin[v - 1];
}

// ---------------------------------------------------------------------------
// Exact rational backend (for the realification recursion with a_1 = 1 and
// Gaussian-rational coefficients).

struct Rat {
    using I = __int128;
    I num = 0, den = 1;
    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(I n, I d) : num(n), den(d) { normalize(); }
    static I iabs(I x) { return x < 0 ? -x : x; }
    static I igcd(I a, I b) {
        a = iabs(a); b = iabs(b);
        while (b) { I t = a % b; a = b; b = t; }
        return a;
    }
    void normalize() {
        if (den == 0) throw std::runtime_error("rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const I g = igcd(num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    friend Rat operator+(Rat a, Rat b) {
        return Rat(checked(a.num, b.den) + checked(b.num, a.den), checked(a.den, b.den));
    }
    friend Rat operator-(Rat a, Rat b) { return a + Rat(-b.num, b.den); }
    friend Rat operator*(Rat a, Rat b) {
        // cross-reduce before multiplying to keep magnitudes small
        const I g1 = igcd(a.num, b.den), g2 = igcd(b.num, a.den);
        return Rat(checked(a.num / g1, b.num / g2), checked(a.den / g2, b.den / g1));
    }
    friend Rat operator/(Rat a, Rat b) {
        if (b.num == 0) throw std::runtime_error("rat: division by zero");
        return a * Rat(b.den, b.num);
    }
    friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
    static I checked(I a, I b) {
        if (a != 0 && (iabs(a) > I(1) << 62 || iabs(b) > I(1) << 62)) {
            I p = a * b;
            if (b != 0 && p / b != a) throw std::overflow_error("rat: overflow");
            return p;
        }
        return a * b;
    }
    double to_double() const { return double((long double)(num) / (long double)(den)); }
};

struct GaussRat {
    Rat re, im;
    GaussRat() = default;
    GaussRat(int n) : re(n), im(0) {}
    GaussRat(Rat r, Rat i) : re(r), im(i) {}
    friend GaussRat operator+(GaussRat a, GaussRat b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRat operator-(GaussRat a, GaussRat b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRat operator*(GaussRat a, GaussRat b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(GaussRat a, GaussRat b) {
        Rat n2 = b.re * b.re + b.im * b.im;
        if (n2 == Rat(0)) throw std::runtime_error("gaussrat: division by zero");
        GaussRat conj{b.re, Rat(0) - b.im};
        GaussRat prod = a * conj;
        return {prod.re / n2, prod.im / n2};
    }
    GaussRat& operator+=(GaussRat o) { *this = *this + o; return *this; }
    GaussRat& operator*=(GaussRat o) { *this = *this * o; return *this; }
    friend bool operator==(GaussRat a, GaussRat b) { return a.re == b.re && a.im == b.im; }
    GaussRat conj() const { return {re, Rat(0) - im}; }
    cplx to_cplx() const { return {re.to_double(), im.to_double()}; }
};

using RatJet = germforge::jets::Jet<GaussRat>;

// Exact realification for an antiholomorphic jet with a_1 = 1 and Gaussian
// rational coefficients: conjugate degree by degree with z + i beta z^n,
// beta = -Im(c_n)/2, mirroring the recursion of the realification proof
// but over exact arithmetic.  Returns the realified jet and the change.
struct ExactRealify {
    RatJet real_form;
    RatJet change;
};

inline RatJet rat_conjugate_anti(const RatJet& h, const RatJet& f) {
    using namespace germforge::jets;
    // h o (A o sigma) o h^{-1} for holomorphic h: substitute conj-coeff
    // h^{-1} into A, then h outside.
    RatJet hinv = reversion(h);
    for (auto& x : hinv) x = x.conj();
    RatJet inner = substitute(f, hinv);
    return substitute(h, inner);
}

inline ExactRealify exact_realify(const RatJet& f) {
    using namespace germforge::jets;
    const std::size_t N = f.size() - 1;
    if (!(f[1] == GaussRat(1)))
        throw std::runtime_error("exact_realify: needs a_1 = 1");
    RatJet cur = f;
    RatJet total = identity<GaussRat>(N);
    for (std::size_t n = 2; n <= N; ++n) {
        GaussRat c = cur[n];
        if (c.im == Rat(0)) continue;
        RatJet h = identity<GaussRat>(N);
        h[n] = GaussRat(Rat(0), Rat(0) - c.im / Rat(2)); // i * (-Im c / 2)
        cur = rat_conjugate_anti(h, cur);
        total = substitute(h, total);
    }
    return {cur, total};
}

} // namespace oracles
