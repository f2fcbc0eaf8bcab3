#include "doctest.h"
#include "ninefold/monoidal.hpp"

using namespace ninefold;

namespace {
const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F5 = FieldSpec::prime(5);
const FieldSpec F7 = FieldSpec::prime(7);

ChainComplex interval(const FieldSpec& f, int deg) {
    return ChainComplex(f, deg, {1, 1}, {Matrix::identity(f, 1)});
}

Scalar q(long long n) { return Scalar::from_int(n, Q); }
}  // namespace

TEST_CASE("tensor with the unit is literal on both sides") {
    ChainComplex u = unit_complex(Q);
    CHECK(u == ChainComplex::concentrated(Q, 0, 1));
    Rng rng(101);
    for (int c = 0; c < 8; ++c) {
        ChainComplex x = random_complex(rng, Q, -2, 2, 3);
        CHECK(tensor(x, u) == x);
        CHECK(tensor(u, x) == x);
    }
    CHECK(tensor(ChainComplex::zero(Q), u).is_zero_complex());
}

TEST_CASE("tensor of two intervals: frozen ranks and differentials") {
    ChainComplex x = interval(Q, 0);
    ChainComplex t = tensor(x, x);
    CHECK(t.min_deg() == 0);
    CHECK(t.max_deg() == 2);
    CHECK(t.rank(0) == 1);
    CHECK(t.rank(1) == 2);
    CHECK(t.rank(2) == 1);
    // Degree-1 basis is (block p=0, then p=1); d(0) hits both with +1,
    // d(1) carries the Koszul sign on the p=1 block.
    CHECK(t.d(0) == Matrix::from_rows(Q, {{1}, {1}}));
    CHECK(t.d(1) == Matrix::from_rows(Q, {{1, -1}}));
}

TEST_CASE("tensor multiplies Euler characteristics and respects ranks") {
    Rng rng(202);
    for (int c = 0; c < 6; ++c) {
        ChainComplex x = random_complex(rng, F7, -1, 1, 3);
        ChainComplex y = random_complex(rng, F7, 0, 2, 3);
        ChainComplex t = tensor(x, y);
        CHECK(euler_characteristic(t) ==
              euler_characteristic(x) * euler_characteristic(y));
        for (int n = t.min_deg(); n <= t.max_deg(); ++n) {
            int expect = 0;
            for (int p = x.min_deg(); p <= x.max_deg(); ++p)
                expect += x.rank(p) * y.rank(n - p);
            CHECK(t.rank(n) == expect);
        }
    }
}

TEST_CASE("tensor_map is functorial and bilinear in traces") {
    Rng rng(303);
    for (int c = 0; c < 5; ++c) {
        ChainComplex x = random_complex(rng, F7, -1, 1, 2);
        ChainComplex y = random_complex(rng, F7, 0, 1, 2);
        ChainMap f = random_chain_map(rng, x, x);
        ChainMap g = random_chain_map(rng, y, y);
        ChainMap fg = tensor_map(f, g);
        CHECK(fg.is_chain_map());
        // identity (x) identity = identity
        CHECK(tensor_map(ChainMap::identity(x), ChainMap::identity(y)) ==
              ChainMap::identity(tensor(x, y)));
        // composition is respected
        ChainMap f2 = random_chain_map(rng, x, x);
        ChainMap g2 = random_chain_map(rng, y, y);
        CHECK(tensor_map(compose(f2, f), compose(g2, g)) ==
              compose(tensor_map(f2, g2), tensor_map(f, g)));
    }
}

TEST_CASE("braiding: concentrated sign, symmetry, naturality") {
    // On R[-1] (x) R[-1] both factors sit in odd degree, so the swap is -1.
    ChainComplex r1 = ChainComplex::concentrated(Q, 1, 1);
    ChainMap b = braiding(r1, r1);
    CHECK(b.comp(2) == Matrix::from_rows(Q, {{-1}}));
    ChainComplex r0 = ChainComplex::concentrated(Q, 0, 1);
    CHECK(braiding(r0, r0).comp(0) == Matrix::identity(Q, 1));

    Rng rng(404);
    for (int c = 0; c < 5; ++c) {
        ChainComplex x = random_complex(rng, F7, -1, 1, 2);
        ChainComplex y = random_complex(rng, F7, 0, 2, 2);
        ChainMap bxy = braiding(x, y);
        CHECK(bxy.is_chain_map());
        CHECK(compose(braiding(y, x), bxy) == ChainMap::identity(tensor(x, y)));
        ChainMap f = random_chain_map(rng, x, x);
        ChainMap g = random_chain_map(rng, y, y);
        CHECK(compose(braiding(x, y), tensor_map(f, g)) ==
              compose(tensor_map(g, f), braiding(x, y)));
    }
}

TEST_CASE("associator: chain iso, pentagon, unit triangle") {
    Rng rng(505);
    ChainComplex x = random_complex(rng, F5, -1, 1, 2);
    ChainComplex y = random_complex(rng, F5, 0, 1, 2);
    ChainComplex z = random_complex(rng, F5, -1, 0, 2);
    ChainMap a = associator(x, y, z);
    CHECK(a.is_chain_map());
    CHECK(compose(associator_inv(x, y, z), a) == ChainMap::identity(tensor(tensor(x, y), z)));
    CHECK(compose(a, associator_inv(x, y, z)) == ChainMap::identity(tensor(x, tensor(y, z))));
    // both bracketings carry identical ranks and differentials
    CHECK(tensor(tensor(x, y), z) == tensor(x, tensor(y, z)));

    // triangle: the associator across the unit is the identity permutation
    CHECK(associator(x, unit_complex(F5), y) == ChainMap::identity(tensor(x, y)));

    // pentagon on a fourth factor
    ChainComplex w = random_complex(rng, F5, 0, 1, 2);
    ChainMap route1 = compose(associator(w, x, tensor(y, z)), associator(tensor(w, x), y, z));
    ChainMap route2 = compose(
        tensor_map(ChainMap::identity(w), associator(x, y, z)),
        compose(associator(w, tensor(x, y), z),
                tensor_map(associator(w, x, y), ChainMap::identity(z))));
    CHECK(route1 == route2);

    // naturality
    ChainMap f = random_chain_map(rng, x, x);
    ChainMap g = random_chain_map(rng, y, y);
    ChainMap h = random_chain_map(rng, z, z);
    CHECK(compose(tensor_map(f, tensor_map(g, h)), a) ==
          compose(a, tensor_map(tensor_map(f, g), h)));
}

TEST_CASE("dual complex: window, concentrated shift, double dual") {
    ChainComplex x(Q, 0, {1, 2, 1},
                   {Matrix::from_rows(Q, {{1}, {0}}), Matrix::from_rows(Q, {{0, 1}})});
    ChainComplex xd = dual_complex(x);
    CHECK(xd.min_deg() == -2);
    CHECK(xd.max_deg() == 0);
    CHECK(xd.rank(-1) == 2);
    CHECK(dual_complex(ChainComplex::concentrated(Q, 3, 2)) ==
          ChainComplex::concentrated(Q, -3, 2));

    // Double dual has the original ranks with the differential negated; the
    // degreewise sign (-1)^n is a chain isomorphism back to x.
    ChainComplex xdd = dual_complex(xd);
    std::map<int, Matrix> comps;
    for (int n = x.min_deg(); n <= x.max_deg(); ++n) {
        if (x.rank(n) == 0) continue;
        Matrix m = Matrix::identity(Q, x.rank(n));
        if (n % 2 != 0) m = -m;
        comps[n] = m;
    }
    ChainMap sigma(xdd, x, comps);
    CHECK(sigma.is_chain_map());
    for (int n = x.min_deg(); n < x.max_deg(); ++n) CHECK(xdd.d(n) == -x.d(n));
}

TEST_CASE("evaluation and coevaluation are chain maps; zigzags are identities") {
    Rng rng(606);
    for (int c = 0; c < 6; ++c) {
        const FieldSpec& f = (c % 2 == 0) ? Q : F7;
        ChainComplex x = random_complex(rng, f, -2, 2, 3);
        CHECK(evaluation(x).is_chain_map());
        CHECK(coevaluation(x).is_chain_map());
        CHECK(zigzag_object(x) == ChainMap::identity(x));
        CHECK(zigzag_dual(x) == ChainMap::identity(dual_complex(x)));
    }
    // zero and concentrated edge cases
    CHECK(zigzag_object(ChainComplex::zero(Q)) == ChainMap::identity(ChainComplex::zero(Q)));
    ChainComplex pt = ChainComplex::concentrated(Q, -1, 2);
    CHECK(zigzag_object(pt) == ChainMap::identity(pt));
}

TEST_CASE("sign rule search: wide windows pin the shipped convention") {
    Rng rng(707);
    std::vector<ChainComplex> wide;
    for (int c = 0; c < 4; ++c) wide.push_back(random_complex(rng, Q, -1, 1, 2));
    wide.push_back(interval(Q, 0));
    std::vector<DualSignRule> rules = search_dual_signs(wide);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0] == dual_sign_rule());

    // Complexes concentrated in one degree have no chain conditions to
    // violate, so every candidate passes.
    std::vector<ChainComplex> narrow = {ChainComplex::concentrated(Q, 0, 2),
                                        ChainComplex::concentrated(Q, 1, 1)};
    CHECK(search_dual_signs(narrow).size() == 4);
}

TEST_CASE("lefschetz trace: hand values") {
    // Two-degree complex with zero differential; the degree-1 part enters
    // with a minus sign and cancels the degree-0 part.
    ChainComplex x(Q, 0, {2, 1}, {Matrix::zeros(Q, 1, 2)});
    ChainMap f(x, x, {{0, Matrix::from_rows(Q, {{2, 0}, {0, 3}})},
                      {1, Matrix::from_rows(Q, {{5}})}});
    REQUIRE(f.is_chain_map());
    CHECK(lefschetz_trace(f) == q(0));
    CHECK(lefschetz_trace(ChainMap::identity(x)) == q(1));
    CHECK(lefschetz_trace(ChainMap::identity(x)) == euler_characteristic(x));

    ChainComplex r1 = ChainComplex::concentrated(Q, 1, 1);
    CHECK(lefschetz_trace(ChainMap::identity(r1)) == q(-1));
    CHECK(trace_via_duality(ChainMap::identity(r1)) == q(-1));

    ChainComplex y = ChainComplex::concentrated(Q, 0, 2);
    Rng rng(1);
    CHECK_THROWS_AS(lefschetz_trace(random_chain_map(rng, x, y)), Error);
}

TEST_CASE("categorical trace agrees with the alternating trace") {
    Rng rng(808);
    for (int c = 0; c < 6; ++c) {
        const FieldSpec& f = (c % 2 == 0) ? F7 : Q;
        ChainComplex x = random_complex(rng, f, -2, 1, 3);
        ChainMap g = random_chain_map(rng, x, x);
        CHECK(trace_via_duality(g) == lefschetz_trace(g));
    }
}

TEST_CASE("trace is cyclic, additive over sums, multiplicative over tensors") {
    Rng rng(909);
    for (int c = 0; c < 5; ++c) {
        ChainComplex x = random_complex(rng, F7, -1, 1, 3);
        ChainComplex y = random_complex(rng, F7, 0, 2, 3);
        ChainMap f = random_chain_map(rng, x, y);
        ChainMap g = random_chain_map(rng, y, x);
        CHECK(lefschetz_trace(compose(g, f)) == lefschetz_trace(compose(f, g)));

        ChainMap a = random_chain_map(rng, x, x);
        ChainMap b = random_chain_map(rng, y, y);
        CHECK(lefschetz_trace(direct_sum_map(a, b)) ==
              lefschetz_trace(a) + lefschetz_trace(b));
        CHECK(lefschetz_trace(tensor_map(a, b)) ==
              lefschetz_trace(a) * lefschetz_trace(b));
    }
}

TEST_CASE("trace is homotopy invariant") {
    Rng rng(1010);
    for (int c = 0; c < 5; ++c) {
        ChainComplex x = random_complex(rng, Q, -1, 1, 2);
        ChainMap f = random_chain_map(rng, x, x);
        std::map<int, Matrix> s;
        for (int n = x.min_deg(); n <= x.max_deg() + 1; ++n) {
            if (x.rank(n) == 0 || x.rank(n - 1) == 0) continue;
            s[n] = rng.matrix(Q, x.rank(n - 1), x.rank(n));
        }
        ChainMap g = f + homotopy_boundary(x, x, Homotopy{s});
        REQUIRE(g.is_chain_map());
        CHECK(lefschetz_trace(g) == lefschetz_trace(f));
        CHECK(trace_via_duality(g) == trace_via_duality(f));
    }
}

TEST_CASE("pairing of maps in both directions equals the trace of the composite") {
    // Frozen 2x2 case over the point complex.
    ChainComplex r2 = ChainComplex::concentrated(Q, 0, 2);
    ChainMap a(r2, r2, {{0, Matrix::from_rows(Q, {{1, 2}, {0, 1}})}});
    ChainMap b(r2, r2, {{0, Matrix::from_rows(Q, {{1, 0}, {3, 1}})}});
    CHECK(verdier_pairing_point(a, b) == q(8));

    Rng rng(1111);
    for (int c = 0; c < 6; ++c) {
        const FieldSpec& fld = (c % 2 == 0) ? F7 : Q;
        ChainComplex fc = random_complex(rng, fld, -1, 1, 3);
        ChainComplex gc = random_complex(rng, fld, -1, 1, 3);
        ChainMap al = random_chain_map(rng, fc, gc);
        ChainMap be = random_chain_map(rng, gc, fc);
        Scalar p = verdier_pairing_point(al, be);
        CHECK(p == lefschetz_trace(compose(be, al)));
        CHECK(p == lefschetz_trace(compose(al, be)));
    }
}

TEST_CASE("internal hom of the unit is literal; ranks match block sums") {
    Rng rng(1212);
    ChainComplex y = random_complex(rng, Q, -2, 2, 3);
    CHECK(internal_hom(unit_complex(Q), y) == y);

    ChainComplex x = random_complex(rng, Q, -1, 1, 2);
    ChainComplex h = internal_hom(x, y);
    for (int n = h.min_deg(); n <= h.max_deg(); ++n) {
        int expect = 0;
        for (int k = x.min_deg(); k <= x.max_deg(); ++k) expect += x.rank(k) * y.rank(k + n);
        CHECK(h.rank(n) == expect);
    }
    CHECK(internal_hom(x, ChainComplex::zero(Q)).is_zero_complex());
}

TEST_CASE("degree-zero cycles of the hom complex are exactly the chain maps") {
    Rng rng(1313);
    for (int c = 0; c < 5; ++c) {
        ChainComplex x = random_complex(rng, F7, -1, 1, 2);
        ChainComplex y = random_complex(rng, F7, -1, 1, 2);
        ChainComplex h = internal_hom(x, y);
        if (h.is_zero_complex()) continue;

        ChainMap f = random_chain_map(rng, x, y);
        CHECK((h.d(0) * hom_vector(f)).is_zero());

        // a degreewise map that fails the chain condition gives a non-cycle
        std::map<int, Matrix> comps;
        for (int n = y.min_deg(); n <= y.max_deg(); ++n)
            if (x.rank(n) > 0 && y.rank(n) > 0) comps[n] = rng.matrix(F7, y.rank(n), x.rank(n));
        ChainMap g(x, y, comps);
        CHECK((h.d(0) * hom_vector(g)).is_zero() == g.is_chain_map());

        // round trip through block extraction
        for (int k = x.min_deg(); k <= x.max_deg(); ++k)
            CHECK(hom_component(x, y, 0, k, hom_vector(f)) == f.comp(k));

        CHECK(hom_cycle(f).is_chain_map());
    }
}

TEST_CASE("hom boundaries are exactly the homotopy boundaries") {
    Rng rng(1414);
    for (int c = 0; c < 4; ++c) {
        ChainComplex x = random_complex(rng, Q, -1, 1, 2);
        ChainComplex y = random_complex(rng, Q, -1, 1, 2);
        ChainComplex h = internal_hom(x, y);
        if (h.is_zero_complex() || h.rank(0) == 0) continue;

        std::map<int, Matrix> s;
        for (int n = x.min_deg(); n <= x.max_deg(); ++n)
            if (x.rank(n) > 0 && y.rank(n - 1) > 0)
                s[n] = rng.matrix(Q, y.rank(n - 1), x.rank(n));
        ChainMap bd = homotopy_boundary(x, y, Homotopy{s});
        // its coordinate vector lies in the image of d(-1)
        CHECK(solve_matrix(h.d(-1), hom_vector(bd)).has_value());
    }
}

TEST_CASE("hom_post and hom_pre are functorial chain maps") {
    Rng rng(1515);
    ChainComplex x = random_complex(rng, F7, -1, 1, 2);
    ChainComplex y = random_complex(rng, F7, -1, 1, 2);
    ChainComplex y2 = random_complex(rng, F7, -1, 1, 2);
    ChainComplex x2 = random_complex(rng, F7, -1, 1, 2);
    ChainMap g = random_chain_map(rng, y, y2);
    ChainMap h = random_chain_map(rng, x2, x);

    CHECK(hom_post(x, g).is_chain_map());
    CHECK(hom_pre(h, y).is_chain_map());
    CHECK(hom_post(x, ChainMap::identity(y)) == ChainMap::identity(internal_hom(x, y)));
    CHECK(hom_pre(ChainMap::identity(x), y) == ChainMap::identity(internal_hom(x, y)));

    ChainMap g2 = random_chain_map(rng, y2, y);
    CHECK(hom_post(x, compose(g2, g)) == compose(hom_post(x, g2), hom_post(x, g)));
    ChainMap h2 = random_chain_map(rng, x, x2);
    // pre-composition is contravariant
    CHECK(hom_pre(compose(h, h2), y) == compose(hom_pre(h2, y), hom_pre(h, y)));

    // post and pre commute
    CHECK(compose(hom_pre(h, y2), hom_post(x, g)) == compose(hom_post(x2, g), hom_pre(h, y)));

    // they transport hom vectors the expected way
    ChainMap f = random_chain_map(rng, x, y);
    CHECK(hom_post(x, g).comp(0) * hom_vector(f) == hom_vector(compose(g, f)));
    CHECK(hom_pre(h, y).comp(0) * hom_vector(f) == hom_vector(compose(f, h)));
}

TEST_CASE("trace functional: chain map, pairs to traces, kills boundaries") {
    Rng rng(1616);
    for (int c = 0; c < 5; ++c) {
        const FieldSpec& fld = (c % 2 == 0) ? F7 : Q;
        ChainComplex x = random_complex(rng, fld, -1, 1, 2);
        ChainComplex y = random_complex(rng, fld, -1, 1, 2);
        ChainComplex h = internal_hom(x, y);
        if (h.is_zero_complex()) continue;
        ChainMap b = random_chain_map(rng, y, x);
        ChainMap tf = trace_functional(b);
        CHECK(tf.is_chain_map());

        ChainMap f = random_chain_map(rng, x, y);
        Matrix paired = tf.comp(0) * hom_vector(f);
        CHECK(paired.at(0, 0) == lefschetz_trace(compose(b, f)));

        std::map<int, Matrix> s;
        for (int n = x.min_deg(); n <= x.max_deg(); ++n)
            if (x.rank(n) > 0 && y.rank(n - 1) > 0)
                s[n] = rng.matrix(fld, y.rank(n - 1), x.rank(n));
        ChainMap bd = homotopy_boundary(x, y, Homotopy{s});
        CHECK((tf.comp(0) * hom_vector(bd)).is_zero());
    }
}
