#pragma once

#include <map>
#include <optional>

#include "ninefold/complex.hpp"

namespace ninefold {

// Degreewise linear map between complexes. Construction checks shapes only;
// commuting with the differentials is a separate, on-demand predicate so that
// candidate witnesses and perturbed maps can be represented and *reported* as
// invalid rather than being unconstructible. Components that are zero are not
// stored, making representation equality canonical.
class ChainMap {
public:
    ChainMap() = default;
    ChainMap(ChainComplex source, ChainComplex target, std::map<int, Matrix> comps);

    static ChainMap zero(const ChainComplex& source, const ChainComplex& target);
    static ChainMap identity(const ChainComplex& x);
    // Diagonal matrix c * id in every degree.
    static ChainMap scalar(const ChainComplex& x, const Scalar& c);

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    const FieldSpec& field() const { return source_.field(); }

    Matrix comp(int n) const;  // shape target.rank(n) x source.rank(n)
    bool is_zero() const { return comps_.empty(); }

    // f d_X = d_Y f in every degree.
    bool is_chain_map() const;
    void require_chain_map(const char* what) const;  // Err::Validation otherwise

    bool operator==(const ChainMap& o) const;
    bool operator!=(const ChainMap& o) const { return !(*this == o); }

    ChainMap operator+(const ChainMap& o) const;
    ChainMap operator-(const ChainMap& o) const;
    ChainMap operator-() const;

private:
    ChainComplex source_, target_;
    std::map<int, Matrix> comps_;
};

ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f
ChainMap scale_map(const Scalar& c, const ChainMap& f);
// f[k]: X[k] -> Y[k], component in degree n is f(n + k). No sign.
ChainMap shift_map(const ChainMap& f, int k);
// diag(f, g) between the direct sums.
ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g);

// Degreewise homotopy data s(n): X^n -> Y^{n-1}.
struct Homotopy {
    std::map<int, Matrix> s;
};
// f = d_Y s + s d_X, found by exact linear solve; nullopt when f is not
// null-homotopic.
std::optional<Homotopy> find_null_homotopy(const ChainMap& f);
ChainMap homotopy_boundary(const ChainComplex& x, const ChainComplex& y, const Homotopy& h);

// Random chain map X -> Y: a uniform draw from the solution space of the
// degreewise commutation equations.
ChainMap random_chain_map(Rng& rng, const ChainComplex& x, const ChainComplex& y);

// Complex structure on base (+) piece whose differential extends both given
// ones by a coupling block piece^n -> base^{n+1} sampled from the exact
// solution space of d^2 = 0. The inclusion of base and the projection onto
// piece are then chain maps by construction.
ChainComplex random_extension(Rng& rng, const ChainComplex& base, const ChainComplex& piece);

}  // namespace ninefold
