#include "germforge/decisions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

namespace germforge {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

std::vector<int> table_indices(const ModulusDescriptor& m) {
    std::vector<int> idx;
    for (auto& [j, t] : m.tables) idx.push_back(j);
    return idx;
}

std::set<int> harmonic_union(const ModulusDescriptor& a, const ModulusDescriptor& b, int j) {
    std::set<int> ns;
    if (a.has_table(j))
        for (auto& [n, c] : a.table(j).coeffs) ns.insert(n);
    if (b.has_table(j))
        for (auto& [n, c] : b.table(j).coeffs) ns.insert(n);
    return ns;
}

double weight(double href, int n) { return std::exp(-2.0 * kPi * std::abs(n) * href); }

// gcd of the active harmonic indices pooled over all tables; 0 when none
long pooled_gcd(const ModulusDescriptor& m) {
    long g = 0;
    for (auto& [j, t] : m.tables)
        for (auto& [n, c] : t.coeffs)
            if (std::abs(c) >= m.floor_at(n)) g = std::gcd(g, long(std::abs(n)));
    return g;
}

std::vector<long> divisors(long p) {
    std::vector<long> d;
    for (long q = 1; q <= p; ++q)
        if (p % q == 0) d.push_back(q);
    return d;
}

struct PairCondition {
    // residual structure of conditions of the shape
    //   conj(c_{n,j}) = phase * e^{-2 pi n y} c_{n',j'}
    // searched over the real parameter y
    bool feasible = true;
    double y = 0.0;
    double margin = 0.0; // largest weighted residual at the solved y
    std::string violating;
    bool any_data = false;
};

} // namespace

ModulusDescriptor k_even_relation_transform(const ModulusDescriptor& m) {
    if (m.kind != ModulusKind::antiholomorphic)
        throw domain_error("k-even relation: antiholomorphic descriptor required");
    if (m.k % 2 != 0)
        throw domain_error("k-even relation: codimension must be even");
    ModulusDescriptor out = m;
    out.tables.clear();
    for (int j = 1; j <= m.k; ++j) {
        const HarmonicTable& src = m.table(m.k - j + 1);
        HarmonicTable t;
        t.constant = std::conj(src.constant);
        for (auto& [n, c] : src.coeffs) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0; // e^{i pi n}
            t.coeffs[-n] = sign * std::conj(c);
        }
        out.tables[j] = t;
    }
    return out;
}

namespace {

// verify m1 == T_C m2 T_{-C} for one candidate C; returns the largest
// weighted residual
double residual_for_candidate(const ModulusDescriptor& m1, const ModulusDescriptor& m2,
                              cplx C, double href) {
    double worst = 0.0;
    for (int j : table_indices(m1)) {
        const cplx d_const = m1.table(j).constant - m2.table(j).constant;
        worst = std::max(worst, std::abs(d_const));
        for (int n : harmonic_union(m1, m2, j)) {
            const cplx c1 = m1.raw_coeff(j, n);
            const cplx c2 = m2.raw_coeff(j, n) * std::exp(-2.0 * kPi * kI * double(n) * C);
            const bool z1 = m1.below_floor(j, n);
            const bool z2 = m2.below_floor(j, n);
            if (z1 && z2) continue;
            const cplx a = z1 ? cplx(0.0) : c1;
            const cplx b = z2 ? cplx(0.0) : c2;
            worst = std::max(worst, std::abs(a - b) * weight(href, n));
        }
    }
    return worst;
}

} // namespace

DecisionReport moduli_equivalent(const ModulusDescriptor& m1, const ModulusDescriptor& m2,
                                 const EquivalenceOptions& opt) {
    DecisionReport rep;
    if (m1.kind != m2.kind) {
        rep.case_tag = "kind-mismatch";
        rep.notes.push_back("descriptors have different kinds");
        return rep;
    }
    if (m1.k != m2.k) {
        rep.case_tag = "codimension-differs";
        rep.margin = std::abs(double(m1.k - m2.k));
        return rep;
    }
    if (std::abs(m1.b - m2.b) > std::max(opt.tol, 1e-9)) {
        rep.case_tag = "formal-invariant-differs";
        rep.margin = std::abs(m1.b - m2.b);
        return rep;
    }
    if (table_indices(m1) != table_indices(m2)) {
        rep.case_tag = "table-sets-differ";
        return rep;
    }

    const double href = std::max(m1.reference_height(), m2.reference_height());
    const bool anti = m1.kind == ModulusKind::antiholomorphic;

    auto attempt = [&](const ModulusDescriptor& mb, const char* tag) -> DecisionReport {
        DecisionReport r;
        r.case_tag = tag;
        // the lowest usable harmonic fixes the candidate phases of C
        int best_n = 0, best_j = 0;
        double best_size = 0.0;
        for (int j : table_indices(m1)) {
            for (int n : harmonic_union(m1, mb, j)) {
                if (m1.below_floor(j, n) || mb.below_floor(j, n)) continue;
                const double sz = std::min(m1.observable_size(j, n), mb.observable_size(j, n));
                if (sz < opt.tol) continue;
                if (best_n == 0 || std::abs(n) < std::abs(best_n) ||
                    (std::abs(n) == std::abs(best_n) && sz > best_size)) {
                    best_n = n;
                    best_j = j;
                    best_size = sz;
                }
            }
        }
        if (best_n == 0) {
            // nothing usable on either side: equal at the available precision
            const double res = residual_for_candidate(m1, mb, 0.0, href);
            r.verdict = res <= opt.tol;
            r.margin = res;
            r.at_precision = true;
            r.witnesses["C"] = 0.0;
            r.notes.push_back("all coefficients below noise floor or observable tolerance");
            return r;
        }
        const cplx c1 = m1.raw_coeff(best_j, best_n);
        const cplx c2 = mb.raw_coeff(best_j, best_n);
        if (std::abs(std::abs(c1) - std::abs(c2)) * weight(href, best_n) > opt.tol && anti) {
            r.margin = std::abs(std::abs(c1) - std::abs(c2)) * weight(href, best_n);
            r.notes.push_back("coefficient magnitudes differ (|c| is a C-invariant)");
            return r;
        }
        // candidate phases: e^{-2 i pi n C} = c1/c2, C real modulo 1/n for the
        // antiholomorphic case; for full tables C may be complex, so the
        // magnitude ratio fixes Im C
        const cplx ratio = c1 / c2;
        double imC = 0.0;
        if (!anti) imC = std::log(std::abs(ratio)) / (2.0 * kPi * double(best_n));
        const double base_phase = -std::arg(ratio) / (2.0 * kPi * double(best_n));
        for (int mcand = 0; mcand < std::abs(best_n); ++mcand) {
            const cplx C(base_phase + double(mcand) / std::abs(best_n), imC);
            const double res = residual_for_candidate(m1, mb, C, href);
            if (res <= opt.tol) {
                r.verdict = true;
                r.margin = res;
                r.witnesses["C"] = std::real(C);
                if (!anti) r.witnesses["ImC"] = imC;
                return r;
            }
            r.margin = (mcand == 0) ? res : std::min(r.margin, res);
        }
        return r;
    };

    DecisionReport r1 = attempt(m2, "translation");
    if (r1.verdict) return r1;

    if (anti) {
        if (opt.try_k_even_relation && m1.k % 2 == 0) {
            DecisionReport r2 =
                attempt(k_even_relation_transform(m2), "translation+k-even-reflection");
            if (r2.verdict) return r2;
            r1.margin = std::min(r1.margin, r2.margin);
        }
    } else {
        // full Ecalle-Voronin tables are also identified under the even
        // rotations of the sector labels
        for (int mrot = 1; mrot < m1.k; ++mrot) {
            const auto rot = IndexPermutation::rotation(m1.k, 2 * mrot);
            ModulusDescriptor relabeled = m2;
            relabeled.tables.clear();
            for (auto& [j, t] : m2.tables) relabeled.tables[rot.apply(j)] = t;
            DecisionReport r2 = attempt(relabeled, "translation+rotation");
            if (r2.verdict) {
                r2.witnesses["rotation"] = 2 * mrot;
                return r2;
            }
            r1.margin = std::min(r1.margin, r2.margin);
        }
    }
    r1.case_tag = "not-equivalent";
    return r1;
}

namespace {

// periodic reversion: given Psi(W) = W + c + P(W), find the table of
// Psi^{-1}(W) = W - c + Q(W) with Q = -P(W - c + Q) by fixed point on a
// sampled line
HarmonicTable revert_table(const HarmonicTable& t, int side, double href, int n_max) {
    // choose a line height where the series contracts
    double Y = std::max(1.0, href);
    auto deriv_bound = [&](double y) {
        double s = 0.0;
        for (auto& [n, c] : t.coeffs)
            s += 2.0 * kPi * std::abs(n) * std::abs(c) * std::exp(-2.0 * kPi * std::abs(n) * y);
        return s;
    };
    int guard = 0;
    while (deriv_bound(Y) > 0.4) {
        Y += 0.5;
        if (++guard > 60)
            throw pipeline_error("modulus-inverse",
                                 "periodic reversion diverges (coefficients too large)");
    }
    const double Ys = side * Y;
    const int M = 256;
    std::vector<cplx> Q(M, 0.0);
    auto P = [&](cplx W) {
        cplx s = 0.0;
        for (auto& [n, c] : t.coeffs) s += c * std::exp(2.0 * kPi * kI * double(n) * W);
        return s;
    };
    for (int it = 0; it < 200; ++it) {
        double delta = 0.0;
        for (int s = 0; s < M; ++s) {
            const cplx W(double(s) / M, Ys);
            const cplx q = -P(W - t.constant + Q[std::size_t(s)]);
            delta = std::max(delta, std::abs(q - Q[std::size_t(s)]));
            Q[std::size_t(s)] = q;
        }
        if (delta < 1e-14) break;
        if (it == 199)
            throw pipeline_error("modulus-inverse", "periodic reversion did not converge");
    }
    HarmonicTable out;
    out.constant = -t.constant;
    for (int n = 1; n <= n_max; ++n) {
        const int ns = side * n;
        cplx acc = 0.0;
        for (int s = 0; s < M; ++s)
            acc += Q[std::size_t(s)] * std::exp(cplx(0.0, -2.0 * kPi * ns * s / double(M)));
        acc /= double(M);
        const cplx cn = acc * std::exp(2.0 * kPi * ns * Ys);
        if (std::abs(cn) > 1e-13) out.coeffs[ns] = cn;
    }
    return out;
}

} // namespace

ModulusDescriptor modulus_of_inverse(const ModulusDescriptor& m) {
    if (m.kind != ModulusKind::holomorphic)
        throw domain_error("modulus_of_inverse: full Ecalle-Voronin table required");
    ModulusDescriptor out = m;
    out.b = -m.b;
    out.tables.clear();
    const auto r1 = IndexPermutation::rotation(m.k, 1); // the unit clockwise shift
    const int n_max = std::max(m.n_max, 4);
    for (int j : table_indices(m)) {
        const int src = r1.apply(j);
        const HarmonicTable& ts = m.table(src);
        HarmonicTable inv = revert_table(ts, harmonic_side(src), m.reference_height(), n_max);
        // L_{-1} o Psi^{-1} o L_{-1}: W + c - sum d_n e^{-2 i pi n W}
        HarmonicTable t;
        t.constant = -inv.constant; // = +c of the source table
        for (auto& [n, c] : inv.coeffs) t.coeffs[-n] = -c;
        out.tables[j] = t;
    }
    return out;
}

namespace {

// shared shape of the "these harmonics must vanish" decisions: verdict true
// iff every selected coefficient is below its floor; margin is the largest
// offender (false) or the largest value declared zero (true)
DecisionReport vanishing_test(const ModulusDescriptor& m,
                              const std::function<bool(int)>& must_vanish,
                              const char* tag_true, const char* tag_false) {
    DecisionReport rep;
    double worst_above = 0.0, worst_below = 0.0;
    for (auto& [j, t] : m.tables) {
        for (auto& [n, c] : t.coeffs) {
            if (!must_vanish(n)) continue;
            if (std::abs(c) >= m.floor_at(n)) {
                if (std::abs(c) > worst_above) {
                    worst_above = std::abs(c);
                    rep.witnesses["j"] = j;
                    rep.witnesses["n"] = n;
                }
            } else {
                worst_below = std::max(worst_below, std::abs(c));
                rep.at_precision = true;
            }
        }
    }
    rep.verdict = worst_above == 0.0;
    rep.margin = rep.verdict ? worst_below : worst_above;
    rep.case_tag = rep.verdict ? tag_true : tag_false;
    return rep;
}

} // namespace

DecisionReport decide_embeddable(const ModulusDescriptor& m) {
    return vanishing_test(m, [](int) { return true; }, "translations-only",
                          "nontrivial-transition");
}

DecisionReport decide_real_curve_f(const ModulusDescriptor& m) {
    if (m.kind != ModulusKind::antiholomorphic)
        throw domain_error("decide_real_curve_f: antiholomorphic descriptor required");
    // commutation with T_1/2 multiplies c_n by e^{i pi n}: odd harmonics must die
    return vanishing_test(m, [](int n) { return n % 2 != 0; }, "odd-harmonics-vanish",
                          "odd-harmonic-present");
}

namespace {

// generic solver for conditions conj(c_{n,j}) = phase(n) e^{-2 pi n y} c_{perm}
// over y real; perm maps (n, j) to the partner coefficient
PairCondition solve_reality_family(
    const ModulusDescriptor& m,
    const std::function<std::pair<int, int>(int, int)>& partner,
    const std::function<cplx(int)>& phase, double tol) {
    PairCondition out;
    bool have_y = false;
    const double href = m.reference_height();
    // first pass: magnitudes fix y from the strongest usable pair
    for (auto& [j, t] : m.tables) {
        for (auto& [n, c] : t.coeffs) {
            if (std::abs(c) < m.floor_at(n)) continue;
            auto [pn, pj] = partner(n, j);
            const cplx cp = m.raw_coeff(pj, pn);
            if (std::abs(cp) < m.floor_at(pn)) {
                if (m.observable_size(j, n) < tol) continue;
                out.feasible = false;
                out.violating = "(" + std::to_string(n) + "," + std::to_string(j) +
                                ") has no matching partner";
                out.margin = m.observable_size(j, n);
                return out;
            }
            out.any_data = true;
            const double y_pair = std::log(std::abs(cp) / std::abs(c)) / (2.0 * kPi * n);
            if (!have_y) {
                out.y = y_pair;
                have_y = true;
            }
        }
    }
    // second pass: verify all conditions at the solved y
    for (auto& [j, t] : m.tables) {
        for (auto& [n, c] : t.coeffs) {
            auto [pn, pj] = partner(n, j);
            const cplx cp = m.raw_coeff(pj, pn);
            if (std::abs(c) < m.floor_at(n) && std::abs(cp) < m.floor_at(pn)) continue;
            const cplx lhs = std::conj(c);
            const cplx rhs = phase(n) * std::exp(-2.0 * kPi * n * out.y) * cp;
            const double res = std::abs(lhs - rhs) * weight(href, n);
            if (res > tol) {
                out.feasible = false;
                out.margin = std::max(out.margin, res);
                out.violating = "(" + std::to_string(n) + "," + std::to_string(j) + ")";
            } else {
                out.margin = std::max(out.margin, res);
            }
        }
    }
    return out;
}

} // namespace

DecisionReport decide_real_curve_g(const ModulusDescriptor& m) {
    if (m.kind != ModulusKind::holomorphic)
        throw domain_error("decide_real_curve_g: full Ecalle-Voronin table required");
    DecisionReport rep;
    const double tol = std::max(1e-8, 10.0 * m.noise_floor);
    // constants: conj(c_j) = c_{-j}
    for (int j = 1; j <= m.k; ++j) {
        if (!m.has_table(j) || !m.has_table(-j)) continue;
        const double d = std::abs(std::conj(m.table(j).constant) - m.table(-j).constant);
        if (d > std::max(tol, 1e-6)) {
            rep.case_tag = "constant-terms-incompatible";
            rep.margin = d;
            return rep;
        }
    }
    auto cond = solve_reality_family(
        m, [](int n, int j) { return std::make_pair(-n, -j); },
        [](int) { return cplx(1.0); }, tol);
    rep.verdict = cond.feasible;
    rep.margin = cond.margin;
    rep.witnesses["y"] = cond.y;
    rep.at_precision = !cond.any_data;
    if (!cond.feasible) rep.notes.push_back("violated at " + cond.violating);
    rep.case_tag = cond.feasible ? "reality-condition-holds" : "reality-condition-fails";
    return rep;
}

RootAxisReport decide_antiholo_root_g(const ModulusDescriptor& m, int n) {
    if (m.kind != ModulusKind::holomorphic)
        throw domain_error("decide_antiholo_root_g: full Ecalle-Voronin table required");
    if (n < 2 || n % 2 != 0)
        throw domain_error("decide_antiholo_root_g: n must be even");
    RootAxisReport out;
    const double tol = std::max(1e-8, 10.0 * m.noise_floor);
    const double href = m.reference_height();

    for (int ell = 0; ell < m.k; ++ell) {
        const auto s = IndexPermutation::axis_reflection(m.k, ell);
        // constants: c_j = conj(c_{s(j)})
        bool ok = true;
        double margin = 0.0;
        for (int j : table_indices(m)) {
            const double d = std::abs(m.table(j).constant - std::conj(m.table(s.apply(j)).constant));
            if (d > std::max(tol, 1e-6)) {
                ok = false;
                margin = std::max(margin, d);
            }
        }
        // harmonics: c_{q,j} e^{2 i pi q / n} = conj(c_{-q, s(j)}) e^{-4 pi q v}
        // for a common v = Im C
        bool have_v = false;
        double v = 0.0;
        if (ok) {
            for (int j : table_indices(m)) {
                for (auto& [q, c] : m.table(j).coeffs) {
                    if (std::abs(c) < m.floor_at(q)) continue;
                    const cplx cp = m.raw_coeff(s.apply(j), -q);
                    if (std::abs(cp) < m.floor_at(q)) {
                        if (m.observable_size(j, q) < tol) continue;
                        ok = false;
                        margin = std::max(margin, m.observable_size(j, q));
                        break;
                    }
                    if (!have_v) {
                        v = std::log(std::abs(cp) / std::abs(c)) / (4.0 * kPi * q);
                        have_v = true;
                    }
                }
                if (!ok) break;
            }
        }
        if (ok) {
            for (int j : table_indices(m)) {
                for (auto& [q, c] : m.table(j).coeffs) {
                    const cplx cp = m.raw_coeff(s.apply(j), -q);
                    if (std::abs(c) < m.floor_at(q) && std::abs(cp) < m.floor_at(q)) continue;
                    const cplx lhs = c * std::exp(2.0 * kPi * kI * double(q) / double(n));
                    const cplx rhs = std::conj(cp) * std::exp(-4.0 * kPi * q * v);
                    const double res = std::abs(lhs - rhs) * weight(href, q);
                    margin = std::max(margin, res);
                    if (res > tol) ok = false;
                }
            }
        }
        if (ok) out.axes.push_back(ell);
        out.base.margin = std::max(out.base.margin, margin);
        out.base.witnesses["v_axis_" + std::to_string(ell)] = v;
    }
    out.any = !out.axes.empty();
    out.base.verdict = out.any;
    out.base.case_tag = out.any ? "roots-exist" : "no-axis-admits";
    if (out.any) {
        long g = m.k;
        for (int ell : out.axes) g = std::gcd(g, long(out.axes.back() - ell));
        out.independent_transitions = int(g);
    } else {
        out.independent_transitions = m.k;
    }
    return out;
}

DecisionReport decide_antiholo_root_f(const ModulusDescriptor& m, int n) {
    if (m.kind != ModulusKind::antiholomorphic)
        throw domain_error("decide_antiholo_root_f: antiholomorphic descriptor required");
    if (n < 3 || n % 2 == 0)
        throw domain_error("decide_antiholo_root_f: n must be odd and at least 3");
    DecisionReport rep = vanishing_test(m, [n](int q) { return q % n != 0; },
                                        "commutes-with-T-1/n", "obstructed-harmonic");
    rep.witnesses["order"] = n;
    return rep;
}

CentralizerReport centralizer(const ModulusDescriptor& m) {
    CentralizerReport out;
    const bool f_kind = m.kind == ModulusKind::antiholomorphic;
    const long p = pooled_gcd(m);
    const double tol = std::max(1e-8, 10.0 * m.noise_floor);

    if (p == 0) {
        out.embeddable = true;
        out.case_tag = f_kind ? "embeddable-real-flow" : "embeddable-flow";
        out.schwarz_reflection = true; // the normal form commutes with sigma
        out.base.verdict = true;
        out.base.at_precision = true;
        out.conditions_checked.push_back("all harmonics below noise floor");
        return out;
    }
    out.max_order = p;
    out.divisor_lattice = divisors(p);

    if (f_kind) {
        // conj(c_{n,j}) = e^{i pi n} c_{-n,-j} holds by construction of the
        // negative tables; the case split is the parity of p
        out.schwarz_reflection = (p % 2 == 0);
        out.case_tag = out.schwarz_reflection ? "schwarz-reflection" : "fractional-iterates";
        out.conditions_checked.push_back("p = gcd of active harmonics = " + std::to_string(p));
        out.conditions_checked.push_back(
            out.schwarz_reflection ? "p even: Schwarz reflection present"
                                   : "p odd: antiholomorphic iterates of odd order only");
        out.base.verdict = true;
        out.base.witnesses["p"] = double(p);
        return out;
    }

    // g-kind: search for antiholomorphic elements Sigma T_{a/(2r) + iy}
    const ModulusDescriptor& full = m;
    // condition A (a or p/r even): conj(c_{n,j}) = e^{2 n pi y} c_{-n,-j}
    auto condA = solve_reality_family(
        full, [](int n, int j) { return std::make_pair(-n, -j); },
        [](int) { return cplx(1.0); }, tol);
    // condition B (a and p/r odd): extra factor (-1)^{n/p}
    auto condB = solve_reality_family(
        full,
        [](int n, int j) { return std::make_pair(-n, -j); },
        [p](int n) { return cplx(((n / int(p)) % 2 == 0) ? 1.0 : -1.0); }, tol);

    out.schwarz_reflection = condA.feasible;
    out.base.witnesses["p"] = double(p);
    if (condA.feasible) out.base.witnesses["y_schwarz"] = condA.y;
    if (condB.feasible) out.base.witnesses["y_root"] = condB.y;
    out.conditions_checked.push_back("p = gcd of active harmonics = " + std::to_string(p));
    out.conditions_checked.push_back(std::string("reality condition (Schwarz): ") +
                                     (condA.feasible ? "holds" : "fails"));
    out.conditions_checked.push_back(std::string("alternating condition (2p-root): ") +
                                     (condB.feasible ? "holds" : "fails"));
    if (condA.feasible)
        out.case_tag = "schwarz-reflection";
    else if (condB.feasible)
        out.case_tag = "antiholomorphic-2p-roots";
    else
        out.case_tag = "holomorphic-iterates-only";
    out.base.verdict = true;
    out.base.margin = std::max(condA.margin, condB.margin);
    return out;
}

ConjugacyCheckResult conjugacy_check(const TruncatedSeries& f1, const TruncatedSeries& f2,
                                     const ModulusPipelineConfig& cfg,
                                     const EquivalenceOptions& opt) {
    ConjugacyCheckResult out{DecisionReport{}, compute_modulus(f1, cfg), compute_modulus(f2, cfg)};
    if (out.first.params.k != out.second.params.k) {
        out.report.case_tag = "codimension-differs";
        return out;
    }
    if (std::abs(out.first.params.b - out.second.params.b) > std::max(opt.tol, 1e-8)) {
        out.report.case_tag = "formal-invariant-differs";
        out.report.margin = std::abs(out.first.params.b - out.second.params.b);
        return out;
    }
    out.report = moduli_equivalent(out.first.descriptor, out.second.descriptor, opt);
    if (out.report.verdict) out.report.case_tag = "equivalent-at-precision";
    return out;
}

} // namespace germforge
