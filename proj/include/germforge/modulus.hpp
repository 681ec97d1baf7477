#pragma once

#include <map>
#include <optional>

#include "germforge/normal_form.hpp"
#include "germforge/series.hpp"

namespace germforge {

enum class ModulusKind { antiholomorphic, holomorphic };

// Fourier data of one transition function: Psi_j(W) = W + constant +
// sum_n c_n exp(2 i pi n W), with n running over one side only (which side
// depends on the sign and parity of j).
struct HarmonicTable {
    cplx constant = 0.0;
    std::map<int, cplx> coeffs;
};

// Noise model of an extracted table: the error of the coefficient at
// harmonic n grows like eps * exp(2 pi |n| height).
struct FloorModel {
    double eps = 1e-12;
    double height = 2.0;
};

struct ModulusDescriptor {
    ModulusKind kind = ModulusKind::antiholomorphic;
    int k = 1;
    cplx b = 0.0;
    double noise_floor = 1e-9;
    int n_max = 12;
    std::optional<FloorModel> floor_model;
    // per-harmonic floors measured during extraction (override the model)
    std::map<int, double> harmonic_floors;
    // j = 1..k for antiholomorphic descriptors, j = -k..-1,1..k for full
    // Ecalle-Voronin descriptors
    std::map<int, HarmonicTable> tables;

    double floor_at(int n) const;
    cplx raw_coeff(int j, int n) const;
    // coefficient with the noise floor applied (exact zero below floor)
    cplx effective_coeff(int j, int n) const;
    bool below_floor(int j, int n) const;
    // height of the line the tables were measured on (0 for synthetic data)
    double reference_height() const { return floor_model ? floor_model->height : 0.0; }
    // |c_{n,j}| scaled to its size on the measurement line; coefficient
    // comparisons happen in this norm
    double observable_size(int j, int n) const;
    const HarmonicTable& table(int j) const;
    bool has_table(int j) const { return tables.count(j) != 0; }

    // all harmonic indices carrying an above-floor coefficient in any table
    std::vector<int> active_harmonics() const;
};

// which harmonic side the expansion of Psi_j lives on: +1 for n >= 1,
// -1 for n <= -1
int harmonic_side(int j);

// For an antiholomorphic descriptor, the tables for j = -k..-1 determined
// by Psi_{-j} = Sigma T_{1/2} Psi_j Sigma T_{-1/2}:
//   constant: conj(c_j);  c_{-n,-j} = e^{i pi n} conj(c_{n,j}).
std::map<int, HarmonicTable> reconstruct_negative(const ModulusDescriptor& m);

// A full 2k-table descriptor assembled from an antiholomorphic one.
ModulusDescriptor to_full_table(const ModulusDescriptor& m);

// Representative change W -> W + C applied to every table (harmonics pick
// up e^{-2 i pi n C}); C real for antiholomorphic descriptors.
ModulusDescriptor translate_representative(const ModulusDescriptor& m, cplx C);

// expected normalized constant, c_j = (-1)^j i pi b / k extended to j < 0
// by c_{-j} = conj(c_j) (= -c_j for the holomorphic convention, b real)
cplx normalized_constant(int j, int k, cplx b);

// Psi_j evaluated through its table
cplx table_eval(const HarmonicTable& t, cplx W);

} // namespace germforge
