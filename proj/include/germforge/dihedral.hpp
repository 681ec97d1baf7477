#pragma once

#include <vector>

#include "germforge/errors.hpp"

namespace germforge {

// The symmetry group of the 2k sectors cut out of the regular k-gon by the
// k axes e^{i pi l / k} R, acting on the transition-function indices
// {-k..-1, 1..k}.  Sectors are ordered anticlockwise 1, 2, ..., k, -k,
// ..., -1 starting just above the positive real axis; rotations advance by
// multiples of pi/k and reflections run across lines at angles l pi/(2k).
// The permutation convention is the figure's: u^{-1}(sector_j) = sector_{u(j)}.
class IndexPermutation {
public:
    enum class Kind { rotation, reflection };

    static IndexPermutation rotation(int k, int m);
    static IndexPermutation reflection(int k, int ell);
    // reflection across the formal axis e^{i pi l / k} R (the s_l of the
    // root-extraction conditions)
    static IndexPermutation axis_reflection(int k, int ell);

    int apply(int j) const;
    IndexPermutation inverse() const;
    // composition as maps: (a * b)(j) = a(b(j))
    friend IndexPermutation operator*(const IndexPermutation& a, const IndexPermutation& b);
    friend bool operator==(const IndexPermutation& a, const IndexPermutation& b);

    Kind kind() const { return kind_; }
    int parameter() const { return param_; }
    int codimension() const { return k_; }

    static int position_of(int j, int k); // 0..2k-1
    static int label_of(int pos, int k);

private:
    IndexPermutation(Kind kind, int k, int param);
    Kind kind_;
    int k_;
    int param_; // rotation steps, or reflection line index, mod 2k
};

// all 4k elements, rotations first
std::vector<IndexPermutation> dihedral_elements(int k);

// named constructor matching the decision procedures' vocabulary
IndexPermutation dihedral_permute(int k, IndexPermutation::Kind kind, int parameter);

} // namespace germforge
