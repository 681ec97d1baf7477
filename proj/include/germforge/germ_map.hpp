#pragma once

#include <optional>

#include "germforge/normal_form.hpp"
#include "germforge/series.hpp"

namespace germforge {

// Horner evaluation of a degree-indexed coefficient table at z (no parity).
cplx poly_eval(const std::vector<cplx>& c, cplx z);
// derivative of the table at z
cplx poly_deriv_eval(const std::vector<cplx>& c, cplx z);

// A germ evaluated exactly as a map: a polynomial jet `base`, optionally
// conjugated by a polynomial change of variable h (germ = h o base o h^{-1},
// with h^{-1} computed by Newton).  The jet IS the germ here; no truncation
// error enters pointwise evaluation.
class GermMap {
public:
    explicit GermMap(TruncatedSeries base);
    GermMap(TruncatedSeries base, TruncatedSeries change);

    bool anti() const { return base_.anti(); }

    cplx eval(cplx z) const;          // the germ itself
    cplx eval_inverse(cplx w) const;  // Newton solution of eval(u) = w
    cplx eval_square(cplx z) const;   // second iterate f(f(z))
    cplx eval_square_inverse(cplx w) const;

    // jets of the germ and of its second iterate, to any order
    TruncatedSeries jet(std::size_t order) const;
    TruncatedSeries square_jet(std::size_t order) const;

    const TruncatedSeries& base() const { return base_; }
    const TruncatedSeries& change() const { return h_; }

private:
    cplx base_forward(cplx z) const;
    cplx base_backward(cplx w) const;
    cplx to_base_coords(cplx z) const;   // h^{-1}
    cplx from_base_coords(cplx u) const; // h

    TruncatedSeries base_;
    TruncatedSeries h_;
    std::vector<cplx> base_rep_inv_;   // jet inverse of the holomorphic rep of base
    std::vector<cplx> h_inv_;          // jet inverse of h (Newton seed)
    bool h_is_identity_ = true;
};

// Newton solve p(u) = w for a polynomial table p (p[0]=0, p[1] != 0),
// seeded by the jet-inverse table.
cplx poly_solve(const std::vector<cplx>& p, const std::vector<cplx>& inv_seed, cplx w,
                const char* stage);

} // namespace germforge
