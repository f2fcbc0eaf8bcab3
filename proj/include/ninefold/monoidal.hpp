#pragma once

#include <vector>

#include "ninefold/chain_map.hpp"

namespace ninefold {

// Tensor product of complexes. Degree n is the direct sum of blocks
// X^p (x) Y^q over p + q = n, ordered by ascending p, with the X index
// outer and the Y index inner inside each block. The differential acts by
// d_X (x) id on the first factor and (-1)^p id (x) d_Y on the second.
// Tensoring with the unit on either side returns the other factor
// *representation-equal*, so no unitor bookkeeping is ever needed.
ChainComplex tensor(const ChainComplex& x, const ChainComplex& y);

// The monoidal unit: one copy of the field in degree 0.
ChainComplex unit_complex(const FieldSpec& f);

// Offset of block (p, n - p) inside degree n of x (x) y.
int tensor_offset(const ChainComplex& x, const ChainComplex& y, int n, int p);

// f (x) g on blocks: kron(f(p), g(q)), no sign (both maps are degreewise).
ChainMap tensor_map(const ChainMap& f, const ChainMap& g);

// x (x) y -> y (x) x, sending a block-(p, q) basis vector to its swap with
// sign (-1)^{pq}.
ChainMap braiding(const ChainComplex& x, const ChainComplex& y);

// (x (x) y) (x) z -> x (x) (y (x) z). Both sides carry identical ranks and
// differentials, so this is a signless basis permutation; the inverse is the
// transpose in every degree.
ChainMap associator(const ChainComplex& x, const ChainComplex& y, const ChainComplex& z);
ChainMap associator_inv(const ChainComplex& x, const ChainComplex& y, const ChainComplex& z);

// Sign convention for the dual differential: d_dual(n) is
// sign * (-1)^n (when alternating) times the transpose of d(-n-1). Any of
// the four candidates yields a valid complex; exactly one makes evaluation
// and coevaluation chain maps, and search_dual_signs recovers it.
struct DualSignRule {
    int sign = -1;
    bool alternating = true;

    Scalar factor(const FieldSpec& f, int n) const;
    bool operator==(const DualSignRule& o) const {
        return sign == o.sign && alternating == o.alternating;
    }
};

// The convention used by every default below: sign = -1, alternating.
DualSignRule dual_sign_rule();
std::vector<DualSignRule> all_dual_sign_rules();

// Returns the rules under which evaluation and coevaluation are chain maps
// and both zigzag composites are identities, for every sample. Samples whose
// window spans at least two degrees cut the list down to the shipped default.
std::vector<DualSignRule> search_dual_signs(const std::vector<ChainComplex>& samples);

// Dual complex: degree n is the linear dual of degree -n, with the
// differential transposed and rescaled by the sign rule.
ChainComplex dual_complex(const ChainComplex& x);
ChainComplex dual_complex(const ChainComplex& x, const DualSignRule& rule);

// dual(x) (x) x -> unit, pairing each block (p, -p) by <e_i*, e_j> = delta_ij.
ChainMap evaluation(const ChainComplex& x);
ChainMap evaluation(const ChainComplex& x, const DualSignRule& rule);

// unit -> x (x) dual(x), 1 |-> sum of e_i (x) e_i* over every degree.
ChainMap coevaluation(const ChainComplex& x);
ChainMap coevaluation(const ChainComplex& x, const DualSignRule& rule);

// The triangle composites that certify the duality: both must be literal
// identity chain maps (of x, respectively dual(x)).
ChainMap zigzag_object(const ChainComplex& x);
ChainMap zigzag_object(const ChainComplex& x, const DualSignRule& rule);
ChainMap zigzag_dual(const ChainComplex& x);
ChainMap zigzag_dual(const ChainComplex& x, const DualSignRule& rule);

// Alternating sum of degreewise traces of an endomorphism.
Scalar lefschetz_trace(const ChainMap& f);

// The categorical trace: unit -> unit composite
//   coevaluation, then f (x) id, then braiding, then evaluation,
// read off as the single matrix entry in degree 0. Agrees with
// lefschetz_trace exactly.
Scalar trace_via_duality(const ChainMap& f);

// Pairing of a: F -> G against b: G -> F through one coevaluation on F and
// one evaluation on F; equals lefschetz_trace(compose(b, a)).
Scalar verdier_pairing_point(const ChainMap& a, const ChainMap& b);

// Internal hom complex: degree n collects the blocks Lin(X^k, Y^{k+n}) with
// k ascending; inside a block the X index is outer and the Y index inner, so
// the coordinate at (i, j) stores the matrix entry phi[j][i]. The
// differential is post-composition with d_Y minus (-1)^n pre-composition
// with d_X. Hom(unit, y) equals y representation-exactly.
ChainComplex internal_hom(const ChainComplex& x, const ChainComplex& y);

// Offset of block k inside degree n of internal_hom(x, y).
int hom_offset(const ChainComplex& x, const ChainComplex& y, int n, int k);

// Post-composition with g: Y -> Y' as a chain map Hom(x, Y) -> Hom(x, Y').
ChainMap hom_post(const ChainComplex& x, const ChainMap& g);
// Pre-composition with h: X' -> X as a chain map Hom(X, y) -> Hom(X', y).
ChainMap hom_pre(const ChainMap& h, const ChainComplex& y);

// Coordinates of a degreewise map f: X -> Y as a degree-0 element of
// Hom(X, Y); a cycle precisely when f is a chain map.
Matrix hom_vector(const ChainMap& f);

// Extracts block k of a degree-n coordinate column as a rank_Y(k+n) x
// rank_X(k) matrix.
Matrix hom_component(const ChainComplex& x, const ChainComplex& y, int n, int k, const Matrix& v);

// The chain map unit -> Hom(X, Y) whose degree-0 component is hom_vector(f).
// Requires f to be a chain map.
ChainMap hom_cycle(const ChainMap& f);

// For b: Y -> X, the chain map Hom(X, Y) -> unit sending phi to the
// alternating sum of traces of b(k) phi(k). Kills boundaries, so it descends
// to homotopy classes; applied to hom_vector(f) it returns
// lefschetz_trace(compose(b, f)).
ChainMap trace_functional(const ChainMap& b);

}  // namespace ninefold
