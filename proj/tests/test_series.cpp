#include <doctest.h>

#include "germforge/series.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace germforge;
using testutil::random_tangent_series;

namespace {

TruncatedSeries from(Parity p, std::initializer_list<cplx> a) {
    return TruncatedSeries::from_coeffs(p, std::vector<cplx>(a));
}

} // namespace

TEST_CASE("compose: sigma is an involution") {
    auto s = TruncatedSeries::sigma(6);
    CHECK(is_identity(compose(s, s), 0.0));
    CHECK(compose(s, s).parity() == Parity::holomorphic);
}

TEST_CASE("compose: antiholomorphic square by hand") {
    // f(z) = conj z + conj z ^2 with itself -> z + 2z^2 + 2z^3 + z^4
    auto f = from(Parity::antiholomorphic, {1.0, 1.0, 0.0, 0.0});
    auto g = compose(f, f);
    CHECK(g.parity() == Parity::holomorphic);
    CHECK(g.coeff(1) == cplx(1.0));
    CHECK(g.coeff(2) == cplx(2.0));
    CHECK(g.coeff(3) == cplx(2.0));
    CHECK(g.coeff(4) == cplx(1.0));
}

TEST_CASE("compose: holomorphic example against brute-force oracle") {
    // (z+z^2) o (z+z^3) = z + z^2 + z^3 + 2z^4 at order 4
    auto outer = from(Parity::holomorphic, {1.0, 1.0, 0.0, 0.0});
    auto inner = from(Parity::holomorphic, {1.0, 0.0, 1.0, 0.0});
    auto got = compose(outer, inner);
    CHECK(got.coeff(1) == cplx(1.0));
    CHECK(got.coeff(2) == cplx(1.0));
    CHECK(got.coeff(3) == cplx(1.0));
    CHECK(got.coeff(4) == cplx(2.0));

    auto oracle = oracles::poly_compose(outer.coeffs(), inner.coeffs(), 4);
    for (std::size_t d = 0; d <= 4; ++d)
        CHECK(std::abs(got.coeff(d) - oracle[d]) < 1e-15);
}

TEST_CASE("compose: parity algebra is the xor rule") {
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            auto pa = a ? Parity::antiholomorphic : Parity::holomorphic;
            auto pb = b ? Parity::antiholomorphic : Parity::holomorphic;
            auto f = random_tangent_series(pa, 8, 0.3);
            auto g = random_tangent_series(pb, 8, 0.3);
            bool anti = compose(f, g).anti();
            CHECK(anti == ((a ^ b) != 0));
        }
    }
}

TEST_CASE("compose: order mismatch is an error") {
    auto f = random_tangent_series(Parity::holomorphic, 6, 0.2);
    auto g = random_tangent_series(Parity::holomorphic, 8, 0.2);
    CHECK_THROWS_AS((void)compose(f, g), domain_error);
}

TEST_CASE("compose: associativity on random triples") {
    for (int trial = 0; trial < 25; ++trial) {
        auto pick = [] {
            return testutil::uniform(0, 1) < 0.5 ? Parity::holomorphic
                                                 : Parity::antiholomorphic;
        };
        auto f = random_tangent_series(pick(), 10, 0.25);
        auto g = random_tangent_series(pick(), 10, 0.25);
        auto h = random_tangent_series(pick(), 10, 0.25);
        auto lhs = compose(compose(f, g), h);
        auto rhs = compose(f, compose(g, h));
        CHECK(lhs.parity() == rhs.parity());
        CHECK(coeff_distance(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("invert: identity and sigma are their own inverses") {
    CHECK(is_identity(invert(TruncatedSeries::identity(5)), 0.0));
    auto si = invert(TruncatedSeries::sigma(5));
    CHECK(si.anti());
    CHECK(is_identity(compose(si, TruncatedSeries::sigma(5)), 0.0));
}

TEST_CASE("invert: z + z^2 against the Lagrange inversion oracle") {
    auto s = from(Parity::holomorphic, {1.0, 1.0, 0.0, 0.0});
    auto inv = invert(s);
    CHECK(inv.coeff(1) == cplx(1.0));
    CHECK(inv.coeff(2) == cplx(-1.0));
    CHECK(inv.coeff(3) == cplx(2.0));
    CHECK(inv.coeff(4) == cplx(-5.0));
    auto oracle = oracles::lagrange_inverse(s.coeffs(), 4);
    for (std::size_t d = 1; d <= 4; ++d)
        CHECK(std::abs(inv.coeff(d) - oracle[d]) < 1e-14);
}

TEST_CASE("invert: two-sided inverse to order N, both parities") {
    for (int trial = 0; trial < 20; ++trial) {
        auto p = trial % 2 ? Parity::holomorphic : Parity::antiholomorphic;
        auto f = random_tangent_series(p, 12, 0.2);
        auto fi = invert(f);
        CHECK(coeff_distance(compose(f, fi), TruncatedSeries::identity(12)) < 1e-11);
        CHECK(coeff_distance(compose(fi, f), TruncatedSeries::identity(12)) < 1e-11);
    }
}

TEST_CASE("conjugate_by: identity change leaves the germ alone") {
    auto f = random_tangent_series(Parity::antiholomorphic, 9, 0.3);
    CHECK(coeff_distance(conjugate_by(TruncatedSeries::identity(9), f), f) < 1e-14);
}

TEST_CASE("conjugate_by: scaling acts on the antiholomorphic multiplier by lambda/conj(lambda)") {
    const cplx lambda(0.6, 0.8);
    std::vector<cplx> hc{lambda, 0.0, 0.0};
    auto h = TruncatedSeries::from_coeffs(Parity::holomorphic, hc);
    auto f = TruncatedSeries::sigma(3);
    auto out = conjugate_by(h, f);
    CHECK(out.anti());
    CHECK(std::abs(out.coeff(1) - lambda / std::conj(lambda)) < 1e-15);
}

TEST_CASE("conjugate_by: h = z+z^2 on f = z+z^2 against the brute-force oracle") {
    auto h = from(Parity::holomorphic, {1.0, 1.0, 0.0, 0.0, 0.0, 0.0});
    auto f = from(Parity::holomorphic, {1.0, 1.0, 0.0, 0.0, 0.0, 0.0});
    auto got = conjugate_by(h, f);
    auto hinv = oracles::lagrange_inverse(h.coeffs(), 6);
    auto oracle = oracles::poly_compose(h.coeffs(), oracles::poly_compose(f.coeffs(), hinv, 6), 6);
    for (std::size_t d = 0; d <= 6; ++d)
        CHECK(std::abs(got.coeff(d) - oracle[d]) < 1e-12);
}

TEST_CASE("residue_iteratif: examples pinned by the division oracle") {
    // g = z + z^2: 1/(z-g) = -z^{-2}, residue 0
    auto g1 = from(Parity::holomorphic, {1.0, 1.0, 0.0});
    CHECK(std::abs(residue_iteratif(g1)) < 1e-15);
    CHECK(std::abs(oracles::residue_by_division(g1.coeffs())) < 1e-15);

    // g = z + z^2 + z^3: residue 1
    auto g2 = from(Parity::holomorphic, {1.0, 1.0, 1.0});
    CHECK(std::abs(residue_iteratif(g2) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(oracles::residue_by_division(g2.coeffs()) - cplx(1.0)) < 1e-14);

    // randomized agreement with the oracle
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_tangent_series(Parity::holomorphic, 11, 0.4);
        CHECK(std::abs(residue_iteratif(g) - oracles::residue_by_division(g.coeffs())) < 1e-10);
    }
}

TEST_CASE("residue_iteratif: rejects identity and antiholomorphic input") {
    CHECK_THROWS_AS((void)residue_iteratif(TruncatedSeries::identity(8)), domain_error);
    CHECK_THROWS_AS((void)residue_iteratif(TruncatedSeries::sigma(8)), domain_error);
}

TEST_CASE("residue_iteratif: invariant under tangent-to-identity conjugation") {
    for (int trial = 0; trial < 10; ++trial) {
        auto g = random_tangent_series(Parity::holomorphic, 13, 0.3);
        auto h = random_tangent_series(Parity::holomorphic, 13, 0.2);
        auto conj = conjugate_by(h, g);
        CHECK(std::abs(residue_iteratif(g) - residue_iteratif(conj)) < 1e-10);
    }
}

TEST_CASE("series_arith: add, sub, scale") {
    auto f = from(Parity::holomorphic, {1.0, 1.0, 0.0});
    auto g = from(Parity::holomorphic, {1.0, -1.0, 0.0});
    auto sum = series_add(f, g);
    CHECK(sum.coeff(1) == cplx(2.0));
    CHECK(sum.coeff(2) == cplx(0.0));
    CHECK(coeff_distance(series_sub(f, f), series_scale(f, 0.0)) == 0.0);
    CHECK(coeff_distance(series_scale(f, 1.0), f) == 0.0);
    auto s = TruncatedSeries::sigma(2);
    CHECK_THROWS_AS((void)series_add(f, s), domain_error);
}

TEST_CASE("series: constant term is rejected at construction") {
    std::vector<cplx> c{cplx(0.5), cplx(1.0)};
    CHECK_THROWS_AS(TruncatedSeries(Parity::holomorphic, c), domain_error);
}
