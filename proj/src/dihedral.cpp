#include "germforge/dihedral.hpp"

namespace germforge {

namespace {
int mod2k(int x, int k) {
    const int m = 2 * k;
    int r = x % m;
    return r < 0 ? r + m : r;
}
} // namespace

IndexPermutation::IndexPermutation(Kind kind, int k, int param)
    : kind_(kind), k_(k), param_(mod2k(param, k)) {
    if (k < 1) throw domain_error("dihedral: k must be positive");
}

IndexPermutation IndexPermutation::rotation(int k, int m) {
    return IndexPermutation(Kind::rotation, k, m);
}

IndexPermutation IndexPermutation::reflection(int k, int ell) {
    return IndexPermutation(Kind::reflection, k, ell);
}

IndexPermutation IndexPermutation::axis_reflection(int k, int ell) {
    return reflection(k, 2 * ell);
}

int IndexPermutation::position_of(int j, int k) {
    if (j == 0 || j > k || j < -k)
        throw domain_error("dihedral: index out of range");
    return j > 0 ? j - 1 : 2 * k + j;
}

int IndexPermutation::label_of(int pos, int k) {
    pos = mod2k(pos, k);
    return pos < k ? pos + 1 : pos - 2 * k;
}

int IndexPermutation::apply(int j) const {
    const int p = position_of(j, k_);
    if (kind_ == Kind::rotation) return label_of(p - param_, k_);
    return label_of(param_ - 1 - p, k_);
}

IndexPermutation IndexPermutation::inverse() const {
    if (kind_ == Kind::rotation) return rotation(k_, -param_);
    return *this; // reflections are involutions
}

IndexPermutation operator*(const IndexPermutation& a, const IndexPermutation& b) {
    if (a.k_ != b.k_) throw domain_error("dihedral: mixed codimensions");
    using K = IndexPermutation::Kind;
    // track p -> +-p + c in position space: rotation(m): p - m; reflection(l): l-1-p
    if (a.kind_ == K::rotation && b.kind_ == K::rotation)
        return IndexPermutation::rotation(a.k_, a.param_ + b.param_);
    if (a.kind_ == K::rotation && b.kind_ == K::reflection)
        return IndexPermutation::reflection(a.k_, b.param_ - a.param_);
    if (a.kind_ == K::reflection && b.kind_ == K::rotation)
        return IndexPermutation::reflection(a.k_, a.param_ + b.param_);
    return IndexPermutation::rotation(a.k_, b.param_ - a.param_);
}

bool operator==(const IndexPermutation& a, const IndexPermutation& b) {
    return a.kind_ == b.kind_ && a.k_ == b.k_ && a.param_ == b.param_;
}

IndexPermutation dihedral_permute(int k, IndexPermutation::Kind kind, int parameter) {
    return kind == IndexPermutation::Kind::rotation ? IndexPermutation::rotation(k, parameter)
                                                    : IndexPermutation::reflection(k, parameter);
}

std::vector<IndexPermutation> dihedral_elements(int k) {
    std::vector<IndexPermutation> out;
    for (int m = 0; m < 2 * k; ++m) out.push_back(IndexPermutation::rotation(k, m));
    for (int l = 0; l < 2 * k; ++l) out.push_back(IndexPermutation::reflection(k, l));
    return out;
}

} // namespace germforge
