#include <array>
#include <optional>
#include <utility>

#include "doctest.h"
#include "ninefold/additivity.hpp"
#include "ninefold/monoidal.hpp"

using namespace ninefold;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F5 = FieldSpec::prime(5);
const FieldSpec F7 = FieldSpec::prime(7);

ChainComplex interval(const FieldSpec& f) {
    return ChainComplex(f, 0, {1, 1}, {Matrix::from_rows(f, {{1}})});
}

template <class F>
std::optional<Err> code_of(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

// The standard block inclusion/projection pair on total = sub (+) quot.
SplitSES block_ses(const ChainComplex& sub, const ChainComplex& quot) {
    SplitSES e;
    e.sub = sub;
    e.quot = quot;
    e.total = direct_sum(sub, quot);
    std::map<int, Matrix> in, pr;
    const FieldSpec& f = sub.field();
    for (int n = std::min(sub.min_deg(), quot.min_deg());
         n <= std::max(sub.max_deg(), quot.max_deg()); ++n) {
        if (sub.rank(n) > 0) {
            Matrix m = Matrix::zeros(f, e.total.rank(n), sub.rank(n));
            paste(m, 0, 0, Matrix::identity(f, sub.rank(n)));
            in.emplace(n, std::move(m));
        }
        if (quot.rank(n) > 0) {
            Matrix m = Matrix::zeros(f, quot.rank(n), e.total.rank(n));
            paste(m, 0, sub.rank(n), Matrix::identity(f, quot.rank(n)));
            pr.emplace(n, std::move(m));
        }
    }
    e.incl = ChainMap(e.sub, e.total, std::move(in));
    e.proj = ChainMap(e.total, e.quot, std::move(pr));
    return e;
}

SESMap identity_ses_map(const SplitSES& e) {
    return {e, e, ChainMap::identity(e.sub), ChainMap::identity(e.total),
            ChainMap::identity(e.quot)};
}

void check_splitting(const SplitSES& e) {
    const FieldSpec& f = e.total.field();
    for (int n = e.total.min_deg() - 1; n <= e.total.max_deg() + 1; ++n) {
        DegreeSplitting s = ses_splitting(e, n);
        CHECK(s.retraction * e.incl.comp(n) == Matrix::identity(f, e.sub.rank(n)));
        CHECK(e.proj.comp(n) * s.section == Matrix::identity(f, e.quot.rank(n)));
        CHECK(e.incl.comp(n) * s.retraction + s.section * e.proj.comp(n) ==
              Matrix::identity(f, e.total.rank(n)));
        CHECK(s.retraction * s.section == Matrix::zeros(f, e.sub.rank(n), e.quot.rank(n)));
    }
}

}  // namespace

TEST_CASE("split sequences validate and split in every degree") {
    SplitSES e = block_ses(interval(Q), ChainComplex::concentrated(Q, 0, 1));
    CHECK(is_valid_ses(e));
    check_splitting(e);

    // Zero sub and zero quot edge cases.
    CHECK(is_valid_ses(block_ses(ChainComplex::zero(Q), interval(Q))));
    CHECK(is_valid_ses(block_ses(interval(Q), ChainComplex::zero(Q))));

    Rng rng(41);
    for (int i = 0; i < 4; ++i) {
        const FieldSpec& f = (i % 2 == 0) ? F7 : Q;
        SplitSES r = random_split_ses(rng, f, -1, 1, 3);
        CHECK(ses_violations(r).empty());
        check_splitting(r);
        // The extension need not be split as a complex, but ranks always add.
        for (int n = -1; n <= 1; ++n)
            CHECK(r.total.rank(n) == r.sub.rank(n) + r.quot.rank(n));
    }
}

TEST_CASE("sequence violations are reported precisely") {
    // Ranks that do not add up.
    SplitSES bad;
    bad.sub = ChainComplex::concentrated(Q, 0, 2);
    bad.total = ChainComplex::concentrated(Q, 0, 2);
    bad.quot = ChainComplex::concentrated(Q, 0, 1);
    bad.incl = ChainMap::identity(bad.sub);
    bad.proj = ChainMap::zero(bad.total, bad.quot);
    auto v = ses_violations(bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "ranks do not add up in degree 0");
    CHECK(code_of([&] { require_valid_ses(bad, "test"); }) == Err::Validation);
    CHECK(code_of([&] { ses_splitting(bad, 0); }) == Err::Validation);

    // Inclusion that is not injective.
    SplitSES flat;
    flat.sub = ChainComplex::concentrated(Q, 0, 1);
    flat.total = ChainComplex::concentrated(Q, 0, 2);
    flat.quot = ChainComplex::concentrated(Q, 0, 1);
    flat.incl = ChainMap::zero(flat.sub, flat.total);
    flat.proj = ChainMap(flat.total, flat.quot, {{0, Matrix::from_rows(Q, {{0, 1}})}});
    v = ses_violations(flat);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "incl is not injective in degree 0");

    // Wiring breaks are reported before anything is composed.
    SplitSES wired = block_ses(interval(Q), ChainComplex::concentrated(Q, 0, 1));
    wired.incl = ChainMap::zero(wired.quot, wired.total);
    v = ses_violations(wired);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "incl does not run sub -> total");
}

TEST_CASE("map violations are reported precisely") {
    SplitSES e = block_ses(ChainComplex::concentrated(Q, 0, 1),
                           ChainComplex::concentrated(Q, 0, 1));

    // A lower-triangular total component breaks both squares.
    SESMap m = identity_ses_map(e);
    m.total = ChainMap(e.total, e.total, {{0, Matrix::from_rows(Q, {{1, 0}, {1, 1}})}});
    auto v = ses_map_violations(m);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == "incl square does not commute");
    CHECK(v[1] == "proj square does not commute");

    // Non-chain components are caught.
    SplitSES d = block_ses(interval(Q), ChainComplex::zero(Q));
    SESMap nc = identity_ses_map(d);
    std::map<int, Matrix> comps = {{0, Matrix::from_rows(Q, {{1}})}};
    nc.sub = ChainMap(d.sub, d.sub, comps);
    nc.total = ChainMap(d.total, d.total, comps);
    REQUIRE(!nc.sub.is_chain_map());
    v = ses_map_violations(nc);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == "sub component is not a chain map");
    CHECK(v[1] == "total component is not a chain map");

    // Component endpoint breaks.
    SESMap w = identity_ses_map(e);
    w.quot = ChainMap::identity(e.total);
    v = ses_map_violations(w);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "quot component does not run between the quot complexes");

    // Error codes on the compute entry points.
    Rng rng(42);
    SplitSES a = random_split_ses(rng, Q, 0, 1, 2);
    SplitSES b = random_split_ses(rng, Q, 0, 1, 2);
    SESMap ab = random_ses_map(rng, a, b);
    CHECK(code_of([&] { trace_additivity(ab); }) == Err::Validation);
    CHECK(code_of([&] { pairing_defect(ab, ab); }) == Err::Shape);
    CHECK(code_of([&] { run_pipeline(ab, ab); }) == Err::Shape);
}

TEST_CASE("traces add across hand-built endomorphisms") {
    for (const FieldSpec& f : {Q, F5}) {
        SplitSES e = block_ses(ChainComplex::concentrated(f, 0, 2),
                               ChainComplex::concentrated(f, 0, 1));
        SESMap m;
        m.source = m.target = e;
        m.sub = ChainMap(e.sub, e.sub, {{0, Matrix::from_rows(f, {{1, 2}, {3, 4}})}});
        m.quot = ChainMap(e.quot, e.quot, {{0, Matrix::from_rows(f, {{5}})}});
        m.total = ChainMap(e.total, e.total,
                           {{0, Matrix::from_rows(f, {{1, 2, 7}, {3, 4, 8}, {0, 0, 5}})}});
        REQUIRE(is_valid_ses_map(m));
        TraceAdditivity t = trace_additivity(m);
        CHECK(t.sub == Scalar::from_int(5, f));
        CHECK(t.quot == Scalar::from_int(5, f));
        CHECK(t.total == Scalar::from_int(10, f));
        CHECK(t.defect.is_zero());
    }
}

TEST_CASE("identity endomorphisms recover Euler characteristic additivity") {
    Rng rng(43);
    for (int i = 0; i < 4; ++i) {
        const FieldSpec& f = (i % 2 == 0) ? F5 : Q;
        SplitSES e = random_split_ses(rng, f, -2, 1, 3);
        TraceAdditivity t = trace_additivity(identity_ses_map(e));
        CHECK(t.sub == euler_characteristic(e.sub));
        CHECK(t.total == euler_characteristic(e.total));
        CHECK(t.quot == euler_characteristic(e.quot));
        CHECK(t.defect.is_zero());

        SESMap z = {e, e, ChainMap::zero(e.sub, e.sub), ChainMap::zero(e.total, e.total),
                    ChainMap::zero(e.quot, e.quot)};
        TraceAdditivity tz = trace_additivity(z);
        CHECK(tz.total.is_zero());
        CHECK(tz.defect.is_zero());
    }
}

TEST_CASE("random endomorphisms have additive traces and pairings") {
    Rng rng(44);
    for (int i = 0; i < 12; ++i) {
        const FieldSpec& f = (i % 3 == 2) ? Q : F7;
        SplitSES e = random_split_ses(rng, f, -1, 1, 3);
        SESMap alpha = random_ses_map(rng, e, e);
        SESMap beta = random_ses_map(rng, e, e);
        REQUIRE(is_valid_ses_map(alpha));
        CHECK(trace_additivity(alpha).defect.is_zero());
        CHECK(pairing_defect(alpha, beta).is_zero());
    }

    // Maps between two different sequences pair additively as well.
    for (int i = 0; i < 6; ++i) {
        const FieldSpec& f = (i % 2 == 0) ? F7 : Q;
        SplitSES ef = random_split_ses(rng, f, -1, 1, 2);
        SplitSES eg = random_split_ses(rng, f, -1, 1, 2);
        SESMap alpha = random_ses_map(rng, ef, eg);
        SESMap beta = random_ses_map(rng, eg, ef);
        REQUIRE(is_valid_ses_map(alpha));
        REQUIRE(is_valid_ses_map(beta));
        CHECK(pairing_defect(alpha, beta).is_zero());
    }
}

TEST_CASE("the hom grid of two sequences is a valid nine diagram") {
    // 0 -> R -> R and R -> R -> 0 pin the orientation of the grid.
    SplitSES right = block_ses(ChainComplex::zero(Q), unit_complex(Q));
    SplitSES left = block_ses(unit_complex(Q), ChainComplex::zero(Q));

    NineDiagram g = hom_grid(left, left);
    CHECK(nine_violations(g).empty());
    // Row 0 is maps out of the quot (zero here); row 2 is maps out of the sub.
    CHECK(g.x(0, 0).rank(0) == 0);
    CHECK(g.x(2, 0).rank(0) == 1);
    CHECK(g.x(2, 1).rank(0) == 1);
    CHECK(g.x(2, 2).rank(0) == 0);
    CHECK(g.dh[2][0].comp(0) == Matrix::identity(Q, 1));

    NineDiagram h = hom_grid(right, right);
    CHECK(nine_violations(h).empty());
    CHECK(h.x(0, 2).rank(0) == 1);  // Hom(quot, quot)
    CHECK(h.x(1, 1).rank(0) == 1);  // Hom(total, total)
    CHECK(h.x(2, 0).rank(0) == 0);  // Hom(sub, sub) with sub = 0

    Rng rng(45);
    for (int i = 0; i < 2; ++i) {
        const FieldSpec& f = (i == 0) ? F7 : Q;
        SplitSES ef = random_split_ses(rng, f, -1, 0, 2);
        SplitSES eg = random_split_ses(rng, f, 0, 1, 2);
        NineDiagram grid = hom_grid(ef, eg);
        CHECK(nine_violations(grid).empty());
        // Entries are the hom complexes, contravariant down the rows.
        const ChainComplex* fs[3] = {&ef.sub, &ef.total, &ef.quot};
        const ChainComplex* gs[3] = {&eg.sub, &eg.total, &eg.quot};
        CHECK(grid.x(0, 0) == internal_hom(*fs[2], *gs[0]));
        CHECK(grid.x(1, 2) == internal_hom(*fs[1], *gs[2]));
        CHECK(grid.x(2, 1) == internal_hom(*fs[0], *gs[1]));
    }
}

TEST_CASE("coevaluation and evaluation are valid nine maps") {
    // Unit case: everything is a copy of R and the components are 1x1 identities.
    SplitSES e = block_ses(ChainComplex::zero(Q), unit_complex(Q));
    SESMap id = identity_ses_map(e);

    NineMap cv = coev_nine(id);
    CHECK(nine_map_violations(cv).empty());
    Matrix one = Matrix::identity(Q, 1);
    CHECK(cv.phi[1][1].comp(0) == one);
    CHECK(cv.phi[0][2].comp(0) == one);
    CHECK(cv.phi[1][2].comp(0) == one);
    CHECK(cv.phi[2][0].is_zero());
    CHECK(cv.phi[2][1].is_zero());
    CHECK(cv.phi[0][0].is_zero());

    NineMap ev = ev_nine(id);
    CHECK(nine_map_violations(ev).empty());
    CHECK(ev.phi[1][1].comp(0) == one);
    CHECK(ev.phi[0][2].comp(0) == one);
    CHECK(ev.phi[0][1].comp(0) == one);
    CHECK(ev.phi[1][0].is_zero());
    CHECK(ev.phi[2][0].is_zero());
    CHECK(ev.phi[2][2].is_zero());

    Rng rng(46);
    for (int i = 0; i < 2; ++i) {
        const FieldSpec& f = (i == 0) ? F7 : Q;
        SplitSES ef = random_split_ses(rng, f, -1, 0, 2);
        SplitSES eg = random_split_ses(rng, f, 0, 1, 2);
        SESMap alpha = random_ses_map(rng, ef, eg);
        SESMap beta = random_ses_map(rng, eg, ef);
        CHECK(nine_map_violations(coev_nine(alpha)).empty());
        CHECK(nine_map_violations(ev_nine(beta)).empty());
    }
}

TEST_CASE("the pipeline folds to the three pairings") {
    // Unit case by hand: pairings (1, 1, 0) and zero defect.
    SplitSES e = block_ses(ChainComplex::zero(Q), unit_complex(Q));
    SESMap id = identity_ses_map(e);
    PipelineResult r = run_pipeline(id, id);
    CHECK(r.squares_commute);
    CHECK(r.theta1_diagonal);
    CHECK(r.theta1_diag ==
          std::array<Scalar, 3>{Scalar::one(Q), Scalar::one(Q), Scalar::zero(Q)});
    CHECK(r.defect.is_zero());
    CHECK(pipeline_defect(id, id).is_zero());

    Rng rng(47);
    for (int i = 0; i < 6; ++i) {
        const FieldSpec& f = (i % 3 == 2) ? Q : F7;
        SplitSES ef = random_split_ses(rng, f, -1, 1, 2);
        SplitSES eg = random_split_ses(rng, f, -1, 1, 2);
        SESMap alpha = random_ses_map(rng, ef, eg);
        SESMap beta = random_ses_map(rng, eg, ef);
        PipelineResult p = run_pipeline(alpha, beta);
        CHECK(p.squares_commute);
        CHECK(p.theta1_diagonal);
        CHECK(p.defect.is_zero());
        // The diagonal matches pairings computed without any nine diagram.
        CHECK(p.theta1_diag ==
              std::array<Scalar, 3>{verdier_pairing_point(alpha.quot, beta.quot),
                                    verdier_pairing_point(alpha.total, beta.total),
                                    verdier_pairing_point(alpha.sub, beta.sub)});
        CHECK(pipeline_defect(alpha, beta).is_zero());
    }
}
