#pragma once

#include <map>
#include <vector>

#include "ninefold/matrix.hpp"
#include "ninefold/rng.hpp"

namespace ninefold {

// Bounded cochain complex: finite window of degrees, differential raising
// degree by one, d(n+1) * d(n) = 0 enforced at construction. The window is
// kept canonical by trimming zero ranks at both ends, so equality of
// complexes is plain representation equality. Outside the stored window,
// rank() and d() synthesize zero shapes, which lets every consumer iterate
// over whatever degree range it likes.
class ChainComplex {
public:
    ChainComplex() : field_(FieldSpec::rationals()), min_deg_(0) {}

    static ChainComplex zero(const FieldSpec& f);
    // One copy of k^rank sitting in a single degree.
    static ChainComplex concentrated(const FieldSpec& f, int deg, int rank);
    // diffs[i] is the differential out of degree min_deg + i and must have
    // shape ranks[i+1] x ranks[i]; diffs.size() == ranks.size() - 1.
    ChainComplex(const FieldSpec& f, int min_deg, std::vector<int> ranks,
                 std::vector<Matrix> diffs);

    const FieldSpec& field() const { return field_; }
    bool is_zero_complex() const { return ranks_.empty(); }
    // Inclusive window; the zero complex reports (0, -1).
    int min_deg() const { return min_deg_; }
    int max_deg() const { return min_deg_ + static_cast<int>(ranks_.size()) - 1; }

    int rank(int n) const;
    Matrix d(int n) const;  // shape rank(n+1) x rank(n) everywhere
    int total_rank() const;

    bool operator==(const ChainComplex& o) const;
    bool operator!=(const ChainComplex& o) const { return !(*this == o); }

private:
    void trim();

    FieldSpec field_;
    int min_deg_;
    std::vector<int> ranks_;
    std::vector<Matrix> diffs_;
};

// X[k]^n = X^{n+k}, with differential (-1)^k d.
ChainComplex shift(const ChainComplex& x, int k);
ChainComplex direct_sum(const ChainComplex& x, const ChainComplex& y);

// Dimension of H^n for every degree in the window (zeros included), by
// rank-nullity: dim ker d(n) - rank d(n-1).
std::map<int, int> homology_dims(const ChainComplex& x);
bool is_acyclic(const ChainComplex& x);

// Euler characteristic = alternating sum of ranks (= of homology dims).
Scalar euler_characteristic(const ChainComplex& x);

// Uniformly random ranks in [0, max_rank] over the window, differentials
// drawn from the exact solution space of d(n+1) d(n) = 0 degree by degree,
// so every output is a valid complex (no rejection).
ChainComplex random_complex(Rng& rng, const FieldSpec& f, int min_deg, int max_deg, int max_rank);

}  // namespace ninefold
