#pragma once

#include <optional>

#include "germforge/series.hpp"

namespace germforge {

// Parameters (k, b) of the model vector field  dz/dt = z^{k+1}/(1 + b z^k).
struct VectorFieldParams {
    int k = 1;
    cplx b = 0.0;
};

enum class TypeSign { positive, negative, not_applicable };

struct FormalClass {
    int k = 0;
    TypeSign type_sign = TypeSign::not_applicable;
    cplx b = 0.0;
    bool degenerate = false; // f o f = id to the working order
};

struct RealifyResult {
    TruncatedSeries real_form;   // coefficients real to tolerance
    TruncatedSeries change;      // holomorphic h with h o f = real_form o h
};

struct PrenormalizeResult {
    TruncatedSeries prenormalized;
    VectorFieldParams params;
    TruncatedSeries change;      // polynomial of degree <= 2k+2
};

// Formal conjugation of an antiholomorphic germ with |a_1| = 1 to a series
// with real coefficients, to the jet order of the input.  Free real parts
// of the change are set to zero; the linear scaling takes the principal
// argument branch.
RealifyResult realify(const TruncatedSeries& f);

// Codimension alone (cheaper than classify; no jet-order requirement beyond
// seeing the first nonlinear term).  Returns 0 for degenerate germs.
int codimension_of(const TruncatedSeries& f);

// Codimension, type, degeneracy and formal invariant of a parabolic germ
// (antiholomorphic, or holomorphic tangent to the identity).  The input jet
// is read as a polynomial, so it is zero-extended when the formal invariant
// needs more orders than were given.
FormalClass classify(const TruncatedSeries& f);

// Brings an antiholomorphic germ to
//   conj(z) + 1/2 conj(z)^{k+1} + ((k+1)/8 - b/2) conj(z)^{2k+1} + o(..)
// or a holomorphic germ to
//   z + z^{k+1} + ((k+1)/2 - b) z^{2k+1} + o(..),
// returning the transformed jet, (k, b) and the polynomial change of
// variable (degree <= 2k+2).  Refuses negative-type inputs.
PrenormalizeResult prenormalize(const TruncatedSeries& f);

// Order-N jet of the time-t map of dz/dt = z^{k+1}/(1 + b z^k), by Lie
// series.  The coefficient of z^{k+1} is exactly t.
TruncatedSeries flow_map(const VectorFieldParams& p, cplx t, std::size_t order);

// Normal-form germs as jets: v^t (holomorphic) and sigma_ell o v^t
// (antiholomorphic), where sigma_ell(z) = exp(2 i pi ell / k) conj(z).
TruncatedSeries normal_form_holomorphic(const VectorFieldParams& p, cplx t, std::size_t order);
TruncatedSeries normal_form_antiholomorphic(const VectorFieldParams& p, cplx t,
                                            std::size_t order, int ell = 0);

// Antiholomorphic n-th roots of the normal forms.  For n even these are the
// k one-parameter families sigma_ell o v^{1/n + iy} (roots of v^1); for n
// odd the single root sigma o v^{1/(2n)} of sigma o v^{1/2}.
struct RootFamilyDescription {
    int n = 2;
    bool even = true;
    int family_count = 0;        // k for n even, 1 for n odd
    bool one_parameter = false;  // y in R freedom (n even)
};

RootFamilyDescription normal_form_root_families(const VectorFieldParams& p, int n);

// A concrete member of one of the families above, as an order-N jet.
// For n odd, ell and y are ignored.
TruncatedSeries make_normal_form_root(const VectorFieldParams& p, int n, int ell,
                                      double y, std::size_t order);

} // namespace germforge
