#include "germforge/modulus.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace germforge {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ModulusDescriptor::floor_at(int n) const {
    double f = noise_floor;
    if (floor_model) {
        const double amp = std::exp(2.0 * kPi * std::abs(n) * floor_model->height);
        f = std::max(f, 10.0 * floor_model->eps * amp);
    }
    auto it = harmonic_floors.find(std::abs(n));
    if (it != harmonic_floors.end()) f = std::max(f, it->second);
    return f;
}

cplx ModulusDescriptor::raw_coeff(int j, int n) const {
    auto it = tables.find(j);
    if (it == tables.end()) return 0.0;
    auto cit = it->second.coeffs.find(n);
    return cit == it->second.coeffs.end() ? cplx(0.0) : cit->second;
}

cplx ModulusDescriptor::effective_coeff(int j, int n) const {
    const cplx c = raw_coeff(j, n);
    return std::abs(c) < floor_at(n) ? cplx(0.0) : c;
}

bool ModulusDescriptor::below_floor(int j, int n) const {
    return std::abs(raw_coeff(j, n)) < floor_at(n);
}

double ModulusDescriptor::observable_size(int j, int n) const {
    return std::abs(raw_coeff(j, n)) * std::exp(-2.0 * kPi * std::abs(n) * reference_height());
}

const HarmonicTable& ModulusDescriptor::table(int j) const {
    auto it = tables.find(j);
    if (it == tables.end())
        throw domain_error("modulus: no table for requested index");
    return it->second;
}

std::vector<int> ModulusDescriptor::active_harmonics() const {
    std::set<int> idx;
    for (auto& [j, t] : tables)
        for (auto& [n, c] : t.coeffs)
            if (std::abs(c) >= floor_at(n)) idx.insert(n);
    return {idx.begin(), idx.end()};
}

int harmonic_side(int j) {
    const bool odd = (std::abs(j) % 2) == 1;
    if (j > 0) return odd ? +1 : -1;
    return odd ? -1 : +1;
}

cplx normalized_constant(int j, int k, cplx b) {
    const cplx cj = cplx(0.0, (std::abs(j) % 2 == 1) ? -kPi : kPi) * b / double(k);
    return j > 0 ? cj : std::conj(cj);
}

std::map<int, HarmonicTable> reconstruct_negative(const ModulusDescriptor& m) {
    if (m.kind != ModulusKind::antiholomorphic)
        throw domain_error("reconstruct_negative: antiholomorphic descriptor required");
    std::map<int, HarmonicTable> out;
    for (int j = 1; j <= m.k; ++j) {
        if (!m.has_table(j)) continue;
        const HarmonicTable& t = m.table(j);
        HarmonicTable neg;
        neg.constant = std::conj(t.constant);
        for (auto& [n, c] : t.coeffs) {
            // e^{i pi n} = (-1)^n
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            neg.coeffs[-n] = sign * std::conj(c);
        }
        out[-j] = neg;
    }
    return out;
}

ModulusDescriptor to_full_table(const ModulusDescriptor& m) {
    ModulusDescriptor full = m;
    full.kind = ModulusKind::holomorphic;
    for (auto& [j, t] : reconstruct_negative(m)) full.tables[j] = t;
    return full;
}

ModulusDescriptor translate_representative(const ModulusDescriptor& m, cplx C) {
    if (m.kind == ModulusKind::antiholomorphic && std::abs(std::imag(C)) > 0.0)
        throw domain_error("translate_representative: C must be real for antiholomorphic moduli");
    ModulusDescriptor out = m;
    for (auto& [j, t] : out.tables) {
        HarmonicTable nt;
        nt.constant = t.constant;
        for (auto& [n, c] : t.coeffs)
            nt.coeffs[n] = c * std::exp(cplx(0.0, -2.0 * kPi * n) * C);
        t = nt;
    }
    return out;
}

cplx table_eval(const HarmonicTable& t, cplx W) {
    cplx out = W + t.constant;
    for (auto& [n, c] : t.coeffs)
        out += c * std::exp(cplx(0.0, 2.0 * kPi * n) * W);
    return out;
}

} // namespace germforge
