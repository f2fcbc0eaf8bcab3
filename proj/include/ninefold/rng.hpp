#pragma once

#include <cstdint>

#include "ninefold/matrix.hpp"

namespace ninefold {

// SplitMix64. Chosen over std::mt19937_64 because the standard does not pin
// distribution algorithms, and every generated case here must be bit-stable
// across platforms and toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent deterministic substream: one per test case, so parallel
    // batch execution and case-level replay see identical inputs.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
        mix.next();  // decorrelate adjacent indices
        return Rng(mix.next());
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by rejection (no modulo bias).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) fail(Err::Domain, "Rng::below(0)");
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    int range(int lo, int hi) {  // inclusive endpoints
        if (hi < lo) fail(Err::Domain, "Rng::range: empty interval");
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return below(2) == 1; }

    // Small elements only: rationals are drawn as n/d with |n| <= 3, d <= 3,
    // keeping downstream gcd work bounded; residues are uniform.
    Scalar element(const FieldSpec& f) {
        if (f.is_rationals()) {
            long long num = range(-3, 3);
            long long den = range(1, 3);
            return Scalar::rational(BigRat(num) / den);
        }
        return Scalar::residue(below(f.p()), f);
    }

    Scalar nonzero_element(const FieldSpec& f) {
        for (;;) {
            Scalar s = element(f);
            if (!s.is_zero()) return s;
        }
    }

    Matrix matrix(const FieldSpec& f, int rows, int cols) {
        Matrix m = Matrix::zeros(f, rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.set(i, j, element(f));
        return m;
    }

    // Random field-linear combination of the columns of `basis`.
    Matrix column_combination(const Matrix& basis) {
        Matrix coeff = matrix(basis.field(), basis.cols(), 1);
        return basis * coeff;
    }

private:
    std::uint64_t state_;
};

}  // namespace ninefold
