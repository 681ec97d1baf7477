#pragma once

#include <string>

#include "germforge/dihedral.hpp"
#include "germforge/fatou.hpp"
#include "germforge/modulus.hpp"

namespace germforge {

// Verdict of one coefficient-level decision.  Verdicts taken at the noise
// floor are flagged at_precision; margin records the largest residual (false
// verdicts: the witness size) or the largest magnitude that was declared
// zero (true verdicts).
struct DecisionReport {
    bool verdict = false;
    std::string case_tag;
    std::map<std::string, double> witnesses;
    double margin = 0.0;
    bool at_precision = false;
    std::vector<std::string> notes;
};

struct EquivalenceOptions {
    double tol = 1e-4;
    bool try_k_even_relation = true;
};

// Are two descriptors the same modulus, i.e. equal up to the representative
// translation T_C (C real for antiholomorphic moduli, complex for full
// tables), and, for even codimension, up to the extra reflection relation?
// Coefficients are compared in the observable norm of their measurement
// height.
DecisionReport moduli_equivalent(const ModulusDescriptor& m1, const ModulusDescriptor& m2,
                                 const EquivalenceOptions& opt = {});

// The extra identification available in even codimension:
// Psi'_j = Sigma T_1/2 Psi_{k-j+1} Sigma T_{-1/2}.
ModulusDescriptor k_even_relation_transform(const ModulusDescriptor& m);

// Modulus of the inverse germ: b -> -b and
// Psi~_j = L_{-1} o Psi_{r(j)}^{-1} o L_{-1} with r the unit clockwise
// index rotation; the functional inverse is computed by periodic reversion.
ModulusDescriptor modulus_of_inverse(const ModulusDescriptor& m);

// Embeddability in (the conjugate of) a flow: all transition functions are
// translations.
DecisionReport decide_embeddable(const ModulusDescriptor& m);

// Invariant real-analytic curve for an antiholomorphic germ:
// Psi_j T_1/2 = T_1/2 Psi_j, i.e. no odd harmonics.
DecisionReport decide_real_curve_f(const ModulusDescriptor& m);

// Invariant real-analytic curve for a holomorphic germ: exists y real with
// Sigma T_iy Psi_j = Psi_{-j} Sigma T_iy; in coefficients
// conj(c_{n,j}) = e^{-2 pi n y} c_{-n,-j}.
DecisionReport decide_real_curve_g(const ModulusDescriptor& m);

struct RootAxisReport {
    bool any = false;
    std::vector<int> axes;           // admitting axes l in 0..k-1
    int independent_transitions = 0; // gcd(l_m - l_1, ..., k) when roots exist
    DecisionReport base;
};

// Antiholomorphic n-th roots (n even) of a holomorphic germ, tested per
// formal symmetry axis through the representative search.
RootAxisReport decide_antiholo_root_g(const ModulusDescriptor& m, int n);

// Antiholomorphic n-th roots (n odd >= 3) of an antiholomorphic germ:
// Psi_j T_{1/n} = T_{1/n} Psi_j, i.e. harmonics only at multiples of n.
DecisionReport decide_antiholo_root_f(const ModulusDescriptor& m, int n);

struct CentralizerReport {
    std::string case_tag;
    bool embeddable = false;
    long max_order = 1;              // p; ignored when embeddable
    std::vector<long> divisor_lattice;
    bool schwarz_reflection = false;
    std::vector<std::string> conditions_checked;
    DecisionReport base;
};

// Centralizer structure in the group of holomorphic and antiholomorphic
// tangent-to-identity germs; the descriptor kind selects the f- or g-case.
CentralizerReport centralizer(const ModulusDescriptor& m);

struct ConjugacyCheckResult {
    DecisionReport report;
    ModulusPipelineResult first;
    ModulusPipelineResult second;
};

// End-to-end conjugacy test: prenormalize, extract both moduli, compare.
ConjugacyCheckResult conjugacy_check(const TruncatedSeries& f1, const TruncatedSeries& f2,
                                     const ModulusPipelineConfig& cfg = {},
                                     const EquivalenceOptions& opt = {});

} // namespace germforge
