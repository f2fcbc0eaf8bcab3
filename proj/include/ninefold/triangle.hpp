#pragma once

#include "ninefold/chain_map.hpp"

namespace ninefold {

// Mapping cone: degree n is X^{n+1} (+) Y^n (X block first) with differential
//   [ -d_X(n+1)   0      ]
//   [  f(n+1)     d_Y(n) ].
ChainComplex cone(const ChainMap& f);

// Y -> cone(f), inclusion of the second block.
ChainMap cone_in(const ChainMap& f);

// cone(f) -> X[1], projection onto the first block.
ChainMap cone_out(const ChainMap& f);

// cone(f)[-1]: degree n is X^n (+) Y^{n-1} with differential
// [[d_X, 0], [-f, -d_Y]].
ChainComplex fiber(const ChainMap& f);

// f is invertible up to homotopy exactly when its cone has no homology.
bool is_quasi_iso(const ChainMap& f);

// A candidate exact triangle X -> Y -> Z together with a witness
// w: X[1] -> Z. Construction enforces the strict identities: f and g are
// chain maps with g o f = 0 and the witness has the right shape; whether the
// witness actually exhibits exactness is the job of validate_triangle.
class Triangle {
public:
    Triangle(ChainMap f, ChainMap g, ChainMap w);

    const ChainComplex& x() const { return f_.source(); }
    const ChainComplex& y() const { return f_.target(); }
    const ChainComplex& z() const { return g_.target(); }
    const ChainMap& f() const { return f_; }
    const ChainMap& g() const { return g_; }
    const ChainMap& w() const { return w_; }

private:
    ChainMap f_, g_, w_;
};

enum class TriangleStatus {
    Exact,            // the comparison map below is a quasi-isomorphism
    WitnessNotChain,  // w fails to commute with the differentials
    NotExact,         // w is a chain map but the comparison is not invertible
};

// The comparison [w | g]: cone(f) -> Z. A chain map precisely when the
// witness is one.
ChainMap triangle_comparison(const Triangle& t);

TriangleStatus validate_triangle(const Triangle& t);
bool is_exact(const Triangle& t);
// Err::Witness or Err::NotExact on failure.
void require_exact(const Triangle& t, const char* what);

// The strict triangle Y -> cone(f) -> X[1] of a map f: X -> Y, with zero
// witness. Always exact.
Triangle canonical_triangle(const ChainMap& f);

// A strictly commuting square
//        f
//    X ----> Y
//    | g     | p        with  p o f = q o g  on the nose,
//    v   q   v
//    Z ----> W
// plus a witness w: X[1] -> W for the folded triangle.
class CommSquare {
public:
    CommSquare(ChainMap f, ChainMap g, ChainMap p, ChainMap q, ChainMap w);

    const ChainComplex& x() const { return f_.source(); }
    const ChainComplex& y() const { return f_.target(); }
    const ChainComplex& z() const { return g_.target(); }
    const ChainComplex& corner() const { return p_.target(); }
    const ChainMap& f() const { return f_; }
    const ChainMap& g() const { return g_; }
    const ChainMap& p() const { return p_; }
    const ChainMap& q() const { return q_; }
    const ChainMap& w() const { return w_; }

private:
    ChainMap f_, g_, p_, q_, w_;
};

// X -> Y (+) Z -> W with maps (f; g) and (p, -q) and the square's witness.
Triangle fold_square(const CommSquare& sq);
TriangleStatus validate_square(const CommSquare& sq);
bool is_exact_square(const CommSquare& sq);

// cone(f) -> cone(q), (x, y) |-> (g x, p y); a chain map for every strictly
// commuting square. For squares with zero witness, exactness of the square
// is equivalent to this map being a quasi-isomorphism, which gives an
// independent oracle for validate_square.
ChainMap square_cone_comparison(const CommSquare& sq);

// A map of triangles: components on the three corners. Valid when all three
// naturality squares commute strictly, including the witness square
// w' o a[1] = c o w.
struct TriangleMap {
    Triangle source, target;
    ChainMap a, b, c;  // on x, y, z respectively
};

// Empty when the map is valid; otherwise one line per broken square.
std::vector<std::string> triangle_map_violations(const TriangleMap& m);

// Random strictly commuting square with zero witness over the given degree
// window. Corners are built from graded pieces glued by sampled couplings:
// with `exact` the lower-right corner is the strict pushout of the span
// (degreewise split, hence also the homotopy pushout); otherwise an extra
// rank-1 summand with zero differential is hidden in the corner, which the
// folded triangle cannot reach.
CommSquare random_square(Rng& rng, const FieldSpec& f, int min_deg, int max_deg, int max_rank,
                         bool exact);

}  // namespace ninefold
