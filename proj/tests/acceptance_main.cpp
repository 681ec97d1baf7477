// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <numbers>
#include <vector>

#include "germforge/decisions.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace germforge;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

int g_failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-34s %s\n", pass ? "PASS" : "FAIL", index, name,
                detail.c_str());
    if (!pass) ++g_failures;
}

const std::vector<std::pair<int, double>> kGrid{{1, 0.0}, {1, 0.25}, {2, 0.1}, {3, 0.25}};

struct GridRun {
    int k;
    double b;
    ModulusPipelineResult res;
    double seconds;
};

std::vector<GridRun> run_grid() {
    std::vector<GridRun> out;
    for (auto [k, b] : kGrid) {
        VectorFieldParams p{k, b};
        auto f = normal_form_antiholomorphic(p, 0.5, std::size_t(2 * k + 22));
        const auto t0 = std::chrono::steady_clock::now();
        auto res = compute_modulus(f, {});
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(GridRun{k, b, std::move(res), dt});
    }
    return out;
}

TruncatedSeries random_conjugation(std::size_t order) {
    // polynomial h of degree <= 5 tangent to the identity, |coefficients| <= 0.1
    std::vector<cplx> hc(order + 1, 0.0);
    hc[1] = 1.0;
    for (std::size_t d = 2; d <= 5 && d <= order; ++d) {
        hc[d] = cplx(testutil::uniform(-0.1, 0.1), testutil::uniform(-0.1, 0.1));
    }
    return TruncatedSeries(Parity::holomorphic, hc);
}

// criterion 1: pipeline on the normal-form jets recovers the translation
// modulus with the constants of the c_j identity
void criterion_1(const std::vector<GridRun>& grid) {
    bool pass = true;
    char detail[160] = "";
    double worst_const = 0.0, worst_coeff = 0.0, worst_time = 0.0;
    for (const auto& run : grid) {
        worst_time = std::max(worst_time, run.seconds);
        if (run.seconds > 120.0) pass = false;
        const auto& d = run.res.descriptor;
        for (int j = 1; j <= run.k; ++j) {
            const cplx target = normalized_constant(j, run.k, run.b);
            worst_const = std::max(worst_const, std::abs(d.table(j).constant - target));
            for (auto& [n, c] : d.table(j).coeffs)
                worst_coeff = std::max(worst_coeff, std::abs(d.effective_coeff(j, n)));
        }
    }
    pass = pass && worst_const <= 1e-5 && worst_coeff <= 1e-5;
    std::snprintf(detail, sizeof detail,
                  "max const err %.2e, max |c_n| %.2e, max runtime %.1fs", worst_const,
                  worst_coeff, worst_time);
    report(1, "normal-form modulus recovery", pass, detail);
}

void criterion_2(const std::vector<GridRun>& grid) {
    double worst = 0.0;
    for (const auto& run : grid) worst = std::max(worst, run.res.alternating_sum_residual);
    char detail[80];
    std::snprintf(detail, sizeof detail, "max |alt sum - 2 i pi b| = %.2e", worst);
    report(2, "alternating-sum identity", worst <= 1e-5, detail);
}

void criterion_3(const std::vector<GridRun>& grid) {
    double worst = 0.0;
    for (const auto& run : grid) {
        const double expected = std::exp(2.0 * kPi * kPi * run.b / run.k);
        for (int j = 1; j <= run.k; ++j) {
            const cplx got = horn_map_fixed_end_derivative(run.res.descriptor, j);
            worst = std::max(worst, std::abs(got - expected));
        }
    }
    char detail[80];
    std::snprintf(detail, sizeof detail, "max |psi' - e^{2 pi^2 b / k}| = %.2e", worst);
    report(3, "horn-map derivative", worst <= 1e-4, detail);
}

void criterion_4() {
    bool pass = true;
    double worst = 0.0;
    std::string note;
    for (auto [k, b] : {std::pair<int, double>{1, 0.25}, {2, 0.1}, {3, 0.25}}) {
        VectorFieldParams p{k, b};
        const std::size_t order = k < 3 ? 36 : 40;
        auto f = normal_form_antiholomorphic(p, 0.5, order);
        const int trials = k < 3 ? 2 : 1;
        for (int trial = 0; trial < trials; ++trial) {
            auto h = random_conjugation(order);
            auto conj = conjugate_by(h, f);
            auto res = conjugacy_check(f, conj);
            worst = std::max(worst, res.report.margin);
            if (!res.report.verdict || res.report.margin > 1e-4) {
                pass = false;
                note = " (conjugate pair rejected)";
            }
        }
    }
    // different formal invariant must be rejected
    auto f1 = normal_form_antiholomorphic(VectorFieldParams{1, 0.0}, 0.5, 24);
    auto f2 = normal_form_antiholomorphic(VectorFieldParams{1, 0.25}, 0.5, 24);
    auto neq = conjugacy_check(f1, f2);
    if (neq.report.verdict) {
        pass = false;
        note += " (distinct b accepted)";
    }
    char detail[160];
    std::snprintf(detail, sizeof detail, "max mismatch %.2e, distinct-b case %s%s", worst,
                  neq.report.verdict ? "accepted" : "rejected", note.c_str());
    report(4, "conjugacy invariance", pass, detail);
}

void criterion_5() {
    double worst = 0.0;
    for (auto [k, b] : {std::pair<int, double>{1, 0.25}, {2, 0.1}}) {
        VectorFieldParams p{k, b};
        const std::size_t order = std::size_t(2 * k + 24);
        auto f = normal_form_antiholomorphic(p, 0.5, order);
        std::vector<cplx> hc(order + 1, 0.0);
        hc[1] = 1.0;
        hc[2] = cplx(0.07, -0.04);
        hc[3] = cplx(0.02, 0.03);
        auto conj = conjugate_by(TruncatedSeries(Parity::holomorphic, hc), f);
        auto pre = prenormalize(conj);
        VectorFieldParams q{pre.params.k, std::real(pre.params.b)};
        auto sys = FatouSystem::antiholomorphic(GermMap(conj, pre.change), q, {});
        sys.calibrate_antiholomorphic();
        for (int j = -k; j <= k; ++j) {
            // 100-point validation grid in the Fatou image of chart j
            const double sgn = sys.chart_attracting(j) ? 1.0 : -1.0;
            for (int a = 0; a < 10; ++a) {
                for (int bq = 0; bq < 10; ++bq) {
                    const cplx W(sgn * (16.0 + 3.0 * a), -1.8 + 0.4 * bq);
                    const cplx got = sys.antiholo_in_fatou(j, W);
                    worst = std::max(worst, std::abs(got - (std::conj(W) + 0.5)));
                }
            }
        }
    }
    char detail[80];
    std::snprintf(detail, sizeof detail, "max |Q_j - Sigma T_1/2| = %.2e on 100-pt grids", worst);
    report(5, "antiholomorphic Fatou relation", worst <= 1e-6, detail);
}

void criterion_6() {
    double worst_im = 0.0, worst_res = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        auto f = testutil::random_tangent_series(Parity::antiholomorphic, 12, 0.4);
        auto r = realify(f);
        for (std::size_t d = 1; d <= 12; ++d)
            worst_im = std::max(worst_im, std::abs(std::imag(r.real_form.coeff(d))));
        worst_res = std::max(
            worst_res, coeff_distance(compose(r.change, f), compose(r.real_form, r.change)));
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "max |Im A_n| = %.2e, max conjugacy residual = %.2e",
                  worst_im, worst_res);
    report(6, "realification", worst_im <= 1e-12 && worst_res <= 1e-12, detail);
}

void criterion_7() {
    double worst_law = 0.0, worst_jet = 0.0;
    // sampled where order-12 coefficients stay O(1), so the identity is
    // limited by roundoff rather than by coefficient growth
    for (int trial = 0; trial < 10; ++trial) {
        const int k = 1 + trial % 3;
        VectorFieldParams p{k, testutil::random_cplx(0.25)};
        const cplx t = testutil::random_cplx(0.5);
        const cplx s = testutil::random_cplx(0.5);
        auto lhs = compose(flow_map(p, t, 12), flow_map(p, s, 12));
        worst_law = std::max(worst_law, coeff_distance(lhs, flow_map(p, t + s, 12)));
        if (std::size_t(2 * k + 1) <= 12) {
            auto v1 = flow_map(p, 1.0, 12);
            worst_jet = std::max(worst_jet, std::abs(v1.coeff(std::size_t(k + 1)) - cplx(1.0)));
            for (int m = k + 2; m <= 2 * k; ++m)
                worst_jet = std::max(worst_jet, std::abs(v1.coeff(std::size_t(m))));
            worst_jet = std::max(worst_jet, std::abs(v1.coeff(std::size_t(2 * k + 1)) -
                                                     (cplx(0.5 * (k + 1)) - p.b)));
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "max group-law defect %.2e, max v^1 jet defect %.2e",
                  worst_law, worst_jet);
    report(7, "flow semigroup", worst_law <= 1e-12 && worst_jet <= 1e-12, detail);
}

void criterion_8() {
    double worst = 0.0, worst_oracle = 0.0;
    for (int trial = 0; trial < 12; ++trial) {
        auto f = testutil::random_tangent_series(Parity::antiholomorphic, 13, 0.3);
        auto pre = prenormalize(f);
        auto g = compose(pre.prenormalized, pre.prenormalized);
        const cplx target = cplx(0.5 * (pre.params.k + 1)) - pre.params.b;
        // the independent Laurent-division oracle pins the relation first
        const cplx by_oracle = oracles::residue_by_division(g.coeffs());
        worst_oracle = std::max(worst_oracle, std::abs(by_oracle - target));
        worst = std::max(worst, std::abs(residue_iteratif(g) - target));
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "max |residue - ((k+1)/2 - b)|: oracle %.2e, impl %.2e",
                  worst_oracle, worst);
    report(8, "residue cross-check", worst <= 1e-10 && worst_oracle <= 1e-10, detail);
}

void criterion_9() {
    ModulusDescriptor m;
    m.kind = ModulusKind::holomorphic;
    m.k = 1;
    m.b = 0.0;
    m.noise_floor = 1e-9;
    m.n_max = 4;
    m.tables[1].constant = 0.0;
    m.tables[1].coeffs[1] = 1.0;
    m.tables[-1].constant = 0.0;
    m.tables[-1].coeffs[-1] = 1.0;
    auto rc = decide_real_curve_g(m);
    auto rg = decide_antiholo_root_g(m, 2);
    const bool pass = rc.verdict && std::abs(rc.witnesses.at("y")) < 1e-10 && !rg.any;
    char detail[96];
    std::snprintf(detail, sizeof detail, "real-curve %s (y = %.1e), square root %s",
                  rc.verdict ? "yes" : "no", rc.witnesses.at("y"), rg.any ? "yes" : "no");
    report(9, "paper's explicit modulus", pass, detail);
}

void criterion_10(const std::vector<GridRun>& grid) {
    double worst = 0.0;
    for (const auto& run : grid) {
        auto recon = reconstruct_negative(run.res.descriptor);
        for (int j = 1; j <= run.k; ++j) {
            const auto& direct = run.res.direct_negative.at(-j);
            const auto& rec = recon.at(-j);
            worst = std::max(worst, std::abs(direct.constant - rec.constant));
            for (auto& [n, c] : rec.coeffs) {
                if (run.res.descriptor.floor_at(n) > 1e-4) continue;
                const cplx d = direct.coeffs.count(n) ? direct.coeffs.at(n) : cplx(0.0);
                worst = std::max(worst, std::abs(d - c));
            }
        }
    }
    char detail[80];
    std::snprintf(detail, sizeof detail, "max dual-path deviation %.2e", worst);
    report(10, "transition reflection dual path", worst <= 1e-4, detail);
}

void criterion_11() {
    // a descriptor with structure in every decision's scope
    ModulusDescriptor m;
    m.kind = ModulusKind::antiholomorphic;
    m.k = 2;
    m.b = 0.1;
    m.noise_floor = 1e-9;
    m.n_max = 6;
    m.tables[1].constant = normalized_constant(1, 2, 0.1);
    m.tables[1].coeffs[2] = cplx(0.2, -0.1);
    m.tables[1].coeffs[4] = cplx(0.01, 0.02);
    m.tables[2].constant = normalized_constant(2, 2, 0.1);
    m.tables[2].coeffs[-2] = cplx(0.05, 0.15);

    const bool base_embed = decide_embeddable(m).verdict;
    const bool base_real = decide_real_curve_f(m).verdict;
    const bool base_root3 = decide_antiholo_root_f(m, 3).verdict;
    const auto base_cent = centralizer(m);
    const auto full = to_full_table(m);
    const bool base_realg = decide_real_curve_g(full).verdict;
    const bool base_rootg = decide_antiholo_root_g(full, 2).any;

    bool pass = true;
    for (int trial = 0; trial < 100; ++trial) {
        const double C = testutil::uniform(-5.0, 5.0);
        auto mt = translate_representative(m, C);
        auto ft = translate_representative(full, C);
        pass = pass && decide_embeddable(mt).verdict == base_embed;
        pass = pass && decide_real_curve_f(mt).verdict == base_real;
        pass = pass && decide_antiholo_root_f(mt, 3).verdict == base_root3;
        pass = pass && decide_real_curve_g(ft).verdict == base_realg;
        pass = pass && decide_antiholo_root_g(ft, 2).any == base_rootg;
        auto cent = centralizer(mt);
        pass = pass && cent.case_tag == base_cent.case_tag &&
               cent.max_order == base_cent.max_order &&
               cent.schwarz_reflection == base_cent.schwarz_reflection;
        pass = pass && moduli_equivalent(m, mt).verdict;
        if (!pass) break;
    }
    report(11, "decision invariance under T_C", pass,
           pass ? "verdicts stable over 100 random translations" : "a verdict changed");
}

} // namespace

int main() {
    std::printf("germforge acceptance suite\n");
    auto grid = run_grid();
    criterion_1(grid);
    criterion_2(grid);
    criterion_3(grid);
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(grid);
    criterion_11();
    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
