#pragma once

#include "ninefold/nine.hpp"

namespace ninefold {

// Short exact sequence of bounded complexes, strict and degreewise split:
//   0 -> sub --incl--> total --proj--> quot -> 0
// with incl degreewise injective, proj degreewise surjective, and
// proj o incl = 0. Over a field the rank bookkeeping
//   rank incl(n) = rank sub^n,  rank proj(n) = rank quot^n,
//   rank total^n = rank sub^n + rank quot^n
// already forces im incl = ker proj in every degree, which is what the
// validator checks.
struct SplitSES {
    ChainComplex sub, total, quot;
    ChainMap incl;  // sub -> total
    ChainMap proj;  // total -> quot

    bool operator==(const SplitSES& o) const = default;
};

std::vector<std::string> ses_violations(const SplitSES& e);
bool is_valid_ses(const SplitSES& e);
void require_valid_ses(const SplitSES& e, const char* what);  // Err::Validation

// One degree of splitting data: retraction r (r incl = id on sub) and
// section s (proj s = id on quot) with the complementarity
// incl r + s proj = id on total and r s = 0. Exists for every valid
// sequence over a field; computed by exact solves, not stored.
struct DegreeSplitting {
    Matrix retraction;  // total^n -> sub^n
    Matrix section;     // quot^n -> total^n
};
DegreeSplitting ses_splitting(const SplitSES& e, int n);

// Map of split sequences: components on sub, total, quot with both squares
// strict, total o incl = incl' o sub and proj' o total = quot o proj. An
// endomorphism is a map whose source and target are the same sequence.
struct SESMap {
    SplitSES source, target;
    ChainMap sub, total, quot;

    bool operator==(const SESMap& o) const = default;
};

std::vector<std::string> ses_map_violations(const SESMap& m);
bool is_valid_ses_map(const SESMap& m);
void require_valid_ses_map(const SESMap& m, const char* what);  // Err::Validation

// Random split sequence: sub and quot are random complexes and total is a
// random extension, the block differential [[d_sub, u], [0, d_quot]] with u
// sampled exactly from the chain equation; incl and proj are the block
// inclusion and projection.
SplitSES random_split_ses(Rng& rng, const FieldSpec& f, int min_deg, int max_deg, int max_rank);

// Uniform exact sample from the space of valid maps source -> target. The
// total component is parameterized through the splittings as
//   total = incl' sub r + s' quot proj + incl' w proj
// with w free, which makes both squares automatic and leaves only the three
// chain conditions to solve jointly.
SESMap random_ses_map(Rng& rng, const SplitSES& source, const SplitSES& target);

// Lefschetz traces of an endomorphism triple and their defect
//   defect = total - sub - quot,
// which is exactly zero: additivity of traces along a split sequence.
struct TraceAdditivity {
    Scalar sub, total, quot;
    Scalar defect;
};
TraceAdditivity trace_additivity(const SESMap& endo);

// For alpha: E_F -> E_G and beta: E_G -> E_F, the alternating sum of the
// three point pairings,
//   <alpha_sub, beta_sub> - <alpha, beta> + <alpha_quot, beta_quot>,
// each computed as a categorical trace. Exactly zero: additivity of the
// pairing along split sequences.
Scalar pairing_defect(const SESMap& alpha, const SESMap& beta);

// The 3x3 grid of internal hom complexes
//   entry (j, k) = Hom(F_{2-j}, G_k),   (F_0, F_1, F_2) = (sub, total, quot)
// with rows mapped by post-composition with E_G's maps and columns by
// pre-composition with E_F's maps, all witnesses zero. Rows and columns are
// again degreewise split strict sequences, so the grid is a valid diagram.
NineDiagram hom_grid(const SplitSES& ef, const SplitSES& eg);

// Coevaluation of alpha: E_F -> E_G as a map of nine diagrams from the
// source template over the unit into hom_grid(E_F, E_G). The six components
// with nonzero source send 1 to the classes of
//   (1,1) alpha,   (0,2) alpha_quot,   (2,0) alpha_sub,
//   (1,2) proj_G o alpha,   (2,1) incl_G o alpha_sub,
// and the degree-shifted (0,0) component is solved exactly from its three
// commutation constraints (canonically zero in this split model).
NineMap coev_nine(const SESMap& alpha);

// Evaluation of beta: E_G -> E_F as a map of nine diagrams from
// hom_grid(E_F, E_G) into the target template over the unit. The components
// are trace functionals:
//   (0,2) phi |-> Tr(beta_quot o phi),   (1,1) phi |-> Tr(beta o phi),
//   (2,0) phi |-> Tr(beta_sub o phi),
//   (0,1) phi |-> Tr(proj_F o beta o phi),
//   (1,0) phi |-> Tr(beta o incl_G o phi),
// and the degree-shifted (2,2) component is solved exactly from its three
// commutation constraints (canonically zero in this split model).
NineMap ev_nine(const SESMap& beta);

// The folded evaluation-after-coevaluation pipeline. theta1 is the middle
// component of the induced triangle map; in the anti-diagonal block basis it
// is diagonal with entries the three independent pairings, and
//   defect = t2 * theta1 * s1
// (s1 the folded column of the source template, t2 the folded row of the
// target template) is the alternating sum of pairings, forced to zero by the
// commuting triangle-map squares.
struct PipelineResult {
    Scalar defect;
    bool squares_commute;               // both naturality squares, checked strictly
    bool theta1_diagonal;
    std::array<Scalar, 3> theta1_diag;  // block order (0,2), (1,1), (2,0)
};
PipelineResult run_pipeline(const SESMap& alpha, const SESMap& beta);

// run_pipeline with the contract enforced: throws Err::Naturality if a
// square fails to commute, Err::Validation if theta1 is not the diagonal of
// the three independent pairings; returns the (zero) defect otherwise.
Scalar pipeline_defect(const SESMap& alpha, const SESMap& beta);

}  // namespace ninefold
