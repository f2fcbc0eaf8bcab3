#pragma once

#include <array>

#include "ninefold/triangle.hpp"

namespace ninefold {

// A 3x3 grid of bounded complexes
//
//     x(0,0) --> x(0,1) --> x(0,2)
//       |          |          |
//       v          v          v
//     x(1,0) --> x(1,1) --> x(1,2)
//       |          |          |
//       v          v          v
//     x(2,0) --> x(2,1) --> x(2,2)
//
// with horizontal maps dh[j][k]: x(j,k) -> x(j,k+1) for k in {0,1}, vertical
// maps dv[j][k]: x(j,k) -> x(j+1,k) for j in {0,1}, and eight witnesses:
//
//   w_row[j]: x(j,0)[1] -> x(j,2)    one per row
//   w_col[k]: x(0,k)[1] -> x(2,k)    one per column
//   w_ul:     x(0,0)[1] -> x(1,1)    across the upper-left square
//   w_lr:     x(1,1)[1] -> x(2,2)    across the lower-right square
//
// The struct itself is plain data so that broken candidates can be built and
// reported on; nine_violations spells out what a valid diagram satisfies.
struct NineDiagram {
    std::array<std::array<ChainMap, 2>, 3> dh;
    std::array<std::array<ChainMap, 3>, 2> dv;
    std::array<ChainMap, 3> w_row;
    std::array<ChainMap, 3> w_col;
    ChainMap w_ul, w_lr;

    // Grid entry, read off the stored maps (row j, column k).
    const ChainComplex& x(int j, int k) const;
    const FieldSpec& field() const { return x(0, 0).field(); }
};

// Validity of a nine diagram, reported as a list of human-readable
// violations (empty means valid):
//   1. all maps and witnesses run between the right complexes;
//   2. every structure map and every witness is a chain map;
//   3. the four elementary squares commute strictly;
//   4. the two-step composites along each row and each column vanish;
//   5. each row and each column is an exact triangle with its witness;
//   6. the witnesses satisfy the five compatibility identities
//        (i)   dv[0][2] w_row[0]  =  dh[1][1] w_ul
//        (ii)  dv[1][1] w_ul      =  dh[2][0] w_col[0]
//        (iii) w_col[2] dh[0][1][1]  =  w_lr dv[0][1][1]
//        (iv)  w_lr dh[1][0][1]      =  w_row[2] dv[1][0][1]
//        (v)   w_col[2] w_row[0][1] - w_lr w_ul[1] + w_row[2] w_col[0][1] = 0.
// Checks that cannot run because an earlier layer failed are skipped.
std::vector<std::string> nine_violations(const NineDiagram& n);
bool is_valid_nine(const NineDiagram& n);
void require_valid_nine(const NineDiagram& n, const char* what);  // Err::Validation

// Flip the grid across the main diagonal: rows become columns. Validity is
// preserved; the two square witnesses stay in place.
NineDiagram transpose_nine(const NineDiagram& n);

// The five-term complex folded from the anti-diagonals of the grid:
//   c[i] = (+)_{j+k=i} x(j,k), summands ordered by ascending row index j,
// with connecting chain maps built from the structure maps,
//   d[i] restricted to x(j,k) = dh[j][k] + (-1)^{j+k} dv[j][k].
// Consecutive composites vanish whenever squares commute strictly and the
// row/column composites are zero.
struct FiveTermChain {
    std::array<ChainComplex, 5> c;
    std::array<ChainMap, 4> d;  // d[i]: c[i] -> c[i+1]
};
FiveTermChain five_term_chain(const NineDiagram& n);

// Total complex of the five-term chain: degree n is (+)_{i+m=n} c[i]^m with
// blocks ordered by ascending i, and differential d[i] + (-1)^i d_internal.
// Acyclic for grids glued from strict short exact sequences with zero
// witnesses, which makes it an independent consistency oracle.
ChainComplex total_complex(const FiveTermChain& ft);

// The two maps that fold a nine diagram into a triangle:
//   u: cone(d[0]) -> c[2],  [ (w_row[0], -w_ul, w_col[0]) | d[1] ]
//   v: c[2] -> fiber(d[3]), [ d[2] ; (w_col[2], w_lr, w_row[2]) ]
// where the witness columns act on the shifted c[0] block of the cone and
// the witness row lands in the shifted c[4] block of the fiber. Both are
// chain maps once the witnesses are; v o u = 0 is equivalent to the five
// compatibility identities.
ChainMap nine_u(const NineDiagram& n);
ChainMap nine_v(const NineDiagram& n);

// Triangle (u, v, 0) of a valid diagram. Err::Construction if the result
// fails to be exact, which does not happen for valid input.
Triangle associated_triangle(const NineDiagram& n);

// The source template S(X): rows (X[-1], 0, X), (0, X, X), (X, X, 0); all
// structure maps identities where both ends are X, the three witnesses
// touching the upper-left corner are identities, everything else zero. Its
// associated triangle starts at cone(X[-1] -> 0) = X.
NineDiagram source_nine(const ChainComplex& x);

// The target template T(X): rows (0, X, X), (X, X, 0), (X, 0, X[1]); the
// three witnesses into the lower-right corner are identities. Its associated
// triangle ends at fiber(X -> X[1] twist) = X.
NineDiagram target_nine(const ChainComplex& x);

// Entrywise map of nine diagrams.
struct NineMap {
    NineDiagram source, target;
    std::array<std::array<ChainMap, 3>, 3> phi;  // phi[j][k]: x(j,k) -> x'(j,k)
};

// Empty when every component is a chain map between the matching entries and
// all twelve naturality squares against dh and dv commute strictly.
// Compatibility with the witnesses is deliberately *not* part of validity;
// see intertwines_witnesses.
std::vector<std::string> nine_map_violations(const NineMap& m);
bool is_valid_nine_map(const NineMap& m);
void require_valid_nine_map(const NineMap& m, const char* what);  // Err::Validation

// Whether the map also commutes with all eight witnesses on the nose. Maps
// arising in practice often fail this even though they still induce a map of
// folded triangles after correction, which is what apply_nine_map computes.
bool intertwines_witnesses(const NineMap& m);

// Entrywise composition a o b.
NineMap compose_nine(const NineMap& a, const NineMap& b);

// Push a valid nine map to a map of the associated triangles. The middle
// component is the diagonal map on c[2]; the outer components are the
// diagonal maps corrected by a homotopy-level block (solved exactly) so that
// both naturality squares against u and v commute strictly. Err::Naturality
// when no correction exists.
TriangleMap apply_nine_map(const NineMap& m);

// Rebuild a full diagram, with zero witnesses, from its lower-right part:
// the six entries x(0,2), x(1,1), x(1,2), x(2,0), x(2,1), x(2,2) and the six
// maps between them. The missing entries are cut out as degreewise kernels
// with induced differentials:
//   x(1,0) = ker dh[1][1],  x(0,1) = ker dv[1][1],  x(0,0) = ker of the
// induced x(1,0) -> x(2,0), with the remaining maps obtained by exact
// preimage solves. Err::Completion when the input does not extend to a valid
// diagram (e.g. a non-surjective quotient map or broken square).
struct LowerNine {
    ChainComplex x02, x11, x12, x20, x21, x22;
    ChainMap dv02;  // x02 -> x12
    ChainMap dh11;  // x11 -> x12
    ChainMap dv11;  // x11 -> x21
    ChainMap dv12;  // x12 -> x22
    ChainMap dh20;  // x20 -> x21
    ChainMap dh21;  // x21 -> x22
};
NineDiagram complete_lower_nine(const LowerNine& low);

// The lower-right part of a diagram, the input complete_lower_nine expects.
LowerNine restrict_lower_nine(const NineDiagram& n);

// Random valid diagram glued from four graded pieces m[a][b]: entry x(j,k)
// sums the pieces with a in A_j, b in B_k for A,B = {0},{0,1},{1}, rows and
// columns are the evident inclusion/projection short exact sequences, all
// witnesses zero. The joint differential couples a piece only to pieces with
// componentwise smaller index, sampled exactly from the d^2 = 0 equations.
NineDiagram random_ses_grid(Rng& rng, const FieldSpec& f, int min_deg, int max_deg, int max_rank);

// Uniform exact sample from the space of valid maps source -> target: all
// nine components chain, all twelve naturality squares strict, drawn jointly.
NineMap random_nine_map(Rng& rng, const NineDiagram& source, const NineDiagram& target);

// Sign conventions for folding a diagram into its five-term chain and
// triangle: the three witness components of u's column, the four
// off-diagonal blocks of d[1], and the three witness components of v's row.
struct FoldSigns {
    std::array<int, 3> u_w;  // (w_row[0], w_ul, w_col[0])
    std::array<int, 4> d1;   // (dh[0][1], dv[0][1], dh[1][0], dv[1][0])
    std::array<int, 3> v_w;  // (w_col[2], w_lr, w_row[2])

    bool operator==(const FoldSigns& o) const = default;
};

// The convention this library ships: (+,-,+), (+,-,+,-), (+,+,+).
FoldSigns fold_signs();

// Exhaustive search over all 1024 sign assignments, keeping those for which,
// on S(X) and T(X) for every sample X, the five-term chain composites
// vanish, u and v are chain maps with v o u = 0, and the unit-complex
// templates S(R), T(R) reproduce the frozen u and v matrices. For any
// nonempty sample list the shipped convention is the unique survivor, which
// pins the convention against silent sign regressions.
std::vector<FoldSigns> search_fold_signs(const std::vector<ChainComplex>& samples);

}  // namespace ninefold
