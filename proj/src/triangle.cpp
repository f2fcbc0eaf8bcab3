#include "ninefold/triangle.hpp"

#include <algorithm>

namespace ninefold {

ChainComplex cone(const ChainMap& f) {
    f.require_chain_map("cone");
    const ChainComplex& x = f.source();
    const ChainComplex& y = f.target();
    const FieldSpec& fld = f.field();
    if (x.is_zero_complex() && y.is_zero_complex()) return ChainComplex::zero(fld);
    int lo = std::min(x.min_deg() - 1, y.min_deg());
    int hi = std::max(x.max_deg() - 1, y.max_deg());
    std::vector<int> ranks;
    for (int n = lo; n <= hi; ++n) ranks.push_back(x.rank(n + 1) + y.rank(n));
    std::vector<Matrix> diffs;
    for (int n = lo; n < hi; ++n) {
        Matrix dn = Matrix::zeros(fld, ranks[n + 1 - lo], ranks[n - lo]);
        paste(dn, 0, 0, -x.d(n + 1));
        paste(dn, x.rank(n + 2), 0, f.comp(n + 1));
        paste(dn, x.rank(n + 2), x.rank(n + 1), y.d(n));
        diffs.push_back(dn);
    }
    return ChainComplex(fld, lo, std::move(ranks), std::move(diffs));
}

ChainMap cone_in(const ChainMap& f) {
    const ChainComplex& x = f.source();
    const ChainComplex& y = f.target();
    ChainComplex c = cone(f);
    std::map<int, Matrix> comps;
    for (int n = y.min_deg(); n <= y.max_deg(); ++n) {
        if (y.rank(n) == 0) continue;
        Matrix m = Matrix::zeros(f.field(), c.rank(n), y.rank(n));
        paste(m, x.rank(n + 1), 0, Matrix::identity(f.field(), y.rank(n)));
        comps[n] = m;
    }
    return ChainMap(y, c, std::move(comps));
}

ChainMap cone_out(const ChainMap& f) {
    const ChainComplex& x = f.source();
    ChainComplex c = cone(f);
    ChainComplex x1 = shift(x, 1);
    std::map<int, Matrix> comps;
    for (int n = x1.min_deg(); n <= x1.max_deg(); ++n) {
        if (x.rank(n + 1) == 0) continue;
        Matrix m = Matrix::zeros(f.field(), x.rank(n + 1), c.rank(n));
        paste(m, 0, 0, Matrix::identity(f.field(), x.rank(n + 1)));
        comps[n] = m;
    }
    return ChainMap(c, x1, std::move(comps));
}

ChainComplex fiber(const ChainMap& f) { return shift(cone(f), -1); }

bool is_quasi_iso(const ChainMap& f) {
    f.require_chain_map("is_quasi_iso");
    return is_acyclic(cone(f));
}

Triangle::Triangle(ChainMap f, ChainMap g, ChainMap w)
    : f_(std::move(f)), g_(std::move(g)), w_(std::move(w)) {
    f_.require_chain_map("triangle map f");
    g_.require_chain_map("triangle map g");
    if (!(f_.target() == g_.source()))
        fail(Err::Shape, "triangle: f must land in the source of g");
    if (!(w_.source() == shift(f_.source(), 1) && w_.target() == g_.target()))
        fail(Err::Shape, "triangle: witness must map X[1] to Z");
    if (!compose(g_, f_).is_zero()) fail(Err::Validation, "triangle: g o f must vanish");
}

ChainMap triangle_comparison(const Triangle& t) {
    const ChainComplex& x = t.x();
    ChainComplex c = cone(t.f());
    std::map<int, Matrix> comps;
    for (int n = c.min_deg(); n <= c.max_deg(); ++n) {
        if (c.rank(n) == 0 || t.z().rank(n) == 0) continue;
        Matrix m = Matrix::zeros(t.f().field(), t.z().rank(n), c.rank(n));
        paste(m, 0, 0, t.w().comp(n));
        paste(m, 0, x.rank(n + 1), t.g().comp(n));
        if (!m.is_zero()) comps[n] = m;
    }
    return ChainMap(c, t.z(), std::move(comps));
}

TriangleStatus validate_triangle(const Triangle& t) {
    if (!t.w().is_chain_map()) return TriangleStatus::WitnessNotChain;
    return is_quasi_iso(triangle_comparison(t)) ? TriangleStatus::Exact
                                                : TriangleStatus::NotExact;
}

bool is_exact(const Triangle& t) { return validate_triangle(t) == TriangleStatus::Exact; }

void require_exact(const Triangle& t, const char* what) {
    switch (validate_triangle(t)) {
        case TriangleStatus::Exact:
            return;
        case TriangleStatus::WitnessNotChain:
            fail(Err::Witness, std::string(what) + ": witness is not a chain map");
        case TriangleStatus::NotExact:
            fail(Err::NotExact, std::string(what) + ": triangle is not exact");
    }
}

Triangle canonical_triangle(const ChainMap& f) {
    ChainMap w = ChainMap::zero(shift(f.target(), 1), shift(f.source(), 1));
    return Triangle(cone_in(f), cone_out(f), std::move(w));
}

CommSquare::CommSquare(ChainMap f, ChainMap g, ChainMap p, ChainMap q, ChainMap w)
    : f_(std::move(f)), g_(std::move(g)), p_(std::move(p)), q_(std::move(q)), w_(std::move(w)) {
    f_.require_chain_map("square map f");
    g_.require_chain_map("square map g");
    p_.require_chain_map("square map p");
    q_.require_chain_map("square map q");
    if (!(f_.source() == g_.source() && p_.source() == f_.target() &&
          q_.source() == g_.target() && p_.target() == q_.target()))
        fail(Err::Shape, "square: sides do not share their corners");
    if (!(compose(p_, f_) == compose(q_, g_)))
        fail(Err::Validation, "square: p o f and q o g must agree on the nose");
    if (!(w_.source() == shift(f_.source(), 1) && w_.target() == p_.target()))
        fail(Err::Shape, "square: witness must map X[1] to the far corner");
}

Triangle fold_square(const CommSquare& sq) {
    const FieldSpec& fld = sq.f().field();
    ChainComplex yz = direct_sum(sq.y(), sq.z());
    const ChainComplex& x = sq.x();
    const ChainComplex& w = sq.corner();

    std::map<int, Matrix> in_comps;
    for (int n = x.min_deg(); n <= x.max_deg(); ++n) {
        if (x.rank(n) == 0 || yz.rank(n) == 0) continue;
        Matrix m = Matrix::zeros(fld, yz.rank(n), x.rank(n));
        paste(m, 0, 0, sq.f().comp(n));
        paste(m, sq.y().rank(n), 0, sq.g().comp(n));
        if (!m.is_zero()) in_comps[n] = m;
    }
    std::map<int, Matrix> out_comps;
    for (int n = yz.min_deg(); n <= yz.max_deg(); ++n) {
        if (yz.rank(n) == 0 || w.rank(n) == 0) continue;
        Matrix m = Matrix::zeros(fld, w.rank(n), yz.rank(n));
        paste(m, 0, 0, sq.p().comp(n));
        paste(m, 0, sq.y().rank(n), -sq.q().comp(n));
        if (!m.is_zero()) out_comps[n] = m;
    }
    return Triangle(ChainMap(x, yz, std::move(in_comps)), ChainMap(yz, w, std::move(out_comps)),
                    sq.w());
}

TriangleStatus validate_square(const CommSquare& sq) { return validate_triangle(fold_square(sq)); }

bool is_exact_square(const CommSquare& sq) {
    return validate_square(sq) == TriangleStatus::Exact;
}

ChainMap square_cone_comparison(const CommSquare& sq) {
    const FieldSpec& fld = sq.f().field();
    ChainComplex cf = cone(sq.f());
    ChainComplex cq = cone(sq.q());
    std::map<int, Matrix> comps;
    int lo = std::min(cf.min_deg(), cq.min_deg());
    int hi = std::max(cf.max_deg(), cq.max_deg());
    for (int n = lo; n <= hi; ++n) {
        if (cf.rank(n) == 0 || cq.rank(n) == 0) continue;
        Matrix m = Matrix::zeros(fld, cq.rank(n), cf.rank(n));
        paste(m, 0, 0, sq.g().comp(n + 1));
        paste(m, sq.z().rank(n + 1), sq.x().rank(n + 1), sq.p().comp(n));
        if (!m.is_zero()) comps[n] = m;
    }
    return ChainMap(cf, cq, std::move(comps));
}

CommSquare random_square(Rng& rng, const FieldSpec& f, int min_deg, int max_deg, int max_rank,
                         bool exact) {
    ChainComplex m00 = random_complex(rng, f, min_deg, max_deg, max_rank);
    ChainComplex m01 = random_complex(rng, f, min_deg, max_deg, max_rank);
    ChainComplex m10 = random_complex(rng, f, min_deg, max_deg, max_rank);

    // y = m00 (+) m01 and z = m00 (+) m10 with sampled couplings into m00.
    ChainComplex y = random_extension(rng, m00, m01);
    ChainComplex z = random_extension(rng, m00, m10);

    // The strict pushout glues both couplings onto the shared m00 block:
    //   d_w = [ d00  u01  u10 ]
    //         [  0   d01   0  ]
    //         [  0    0   d10 ]
    // d_w^2 = 0 already follows from y and z being complexes. Degreewise
    // everything splits, so this is also a pushout up to homotopy and the
    // folded triangle is exact. The non-exact variant hides one extra rank
    // with zero differential inside the corner; it is a cycle the fold never
    // reaches, and no boundary can cancel it.
    int lo = std::min({m00.min_deg(), m01.min_deg(), m10.min_deg()});
    int hi = std::max({m00.max_deg(), m01.max_deg(), m10.max_deg()});
    ChainComplex w0;
    if (lo <= hi) {
        std::vector<int> wranks;
        for (int n = lo; n <= hi; ++n)
            wranks.push_back(m00.rank(n) + m01.rank(n) + m10.rank(n));
        std::vector<Matrix> wdiffs;
        for (int n = lo; n < hi; ++n) {
            Matrix dn = Matrix::zeros(f, wranks[n + 1 - lo], wranks[n - lo]);
            paste(dn, 0, 0, m00.d(n));
            paste(dn, 0, m00.rank(n), block(y.d(n), 0, m00.rank(n), m00.rank(n + 1), m01.rank(n)));
            paste(dn, 0, m00.rank(n) + m01.rank(n),
                  block(z.d(n), 0, m00.rank(n), m00.rank(n + 1), m10.rank(n)));
            paste(dn, m00.rank(n + 1), m00.rank(n), m01.d(n));
            paste(dn, m00.rank(n + 1) + m01.rank(n + 1), m00.rank(n) + m01.rank(n), m10.d(n));
            wdiffs.push_back(dn);
        }
        w0 = ChainComplex(f, lo, std::move(wranks), std::move(wdiffs));
    } else {
        w0 = ChainComplex::zero(f);
    }
    ChainComplex w =
        exact ? w0 : direct_sum(w0, ChainComplex::concentrated(f, rng.range(min_deg, max_deg), 1));

    auto inclusion = [&](const ChainComplex& sub, const ChainComplex& big) {
        std::map<int, Matrix> comps;
        for (int n = sub.min_deg(); n <= sub.max_deg(); ++n) {
            if (sub.rank(n) == 0) continue;
            Matrix m = Matrix::zeros(f, big.rank(n), sub.rank(n));
            paste(m, 0, 0, Matrix::identity(f, sub.rank(n)));
            comps[n] = m;
        }
        return ChainMap(sub, big, std::move(comps));
    };
    // Block order: y = [m00 | m01], z = [m00 | m10], w = [m00 | m01 | m10 | extra].
    const ChainComplex& x = m00;
    ChainMap fmap = inclusion(x, y);
    ChainMap gmap = inclusion(x, z);
    ChainMap pmap = inclusion(y, w);
    std::map<int, Matrix> qcomps;
    for (int n = z.min_deg(); n <= z.max_deg(); ++n) {
        if (z.rank(n) == 0 || w.rank(n) == 0) continue;
        Matrix m = Matrix::zeros(f, w.rank(n), z.rank(n));
        paste(m, 0, 0, Matrix::identity(f, m00.rank(n)));
        paste(m, m00.rank(n) + m01.rank(n), m00.rank(n), Matrix::identity(f, m10.rank(n)));
        if (!m.is_zero()) qcomps[n] = m;
    }
    ChainMap qmap(z, w, std::move(qcomps));
    ChainMap witness = ChainMap::zero(shift(x, 1), w);
    return CommSquare(fmap, gmap, pmap, qmap, witness);
}

std::vector<std::string> triangle_map_violations(const TriangleMap& m) {
    std::vector<std::string> out;
    if (m.a.source() != m.source.x() || m.a.target() != m.target.x())
        out.push_back("a does not run between the x corners");
    if (m.b.source() != m.source.y() || m.b.target() != m.target.y())
        out.push_back("b does not run between the y corners");
    if (m.c.source() != m.source.z() || m.c.target() != m.target.z())
        out.push_back("c does not run between the z corners");
    if (!out.empty()) return out;
    if (!m.a.is_chain_map()) out.push_back("a is not a chain map");
    if (!m.b.is_chain_map()) out.push_back("b is not a chain map");
    if (!m.c.is_chain_map()) out.push_back("c is not a chain map");
    if (compose(m.b, m.source.f()) != compose(m.target.f(), m.a))
        out.push_back("f square does not commute");
    if (compose(m.c, m.source.g()) != compose(m.target.g(), m.b))
        out.push_back("g square does not commute");
    if (compose(m.target.w(), shift_map(m.a, 1)) != compose(m.c, m.source.w()))
        out.push_back("witness square does not commute");
    return out;
}

}  // namespace ninefold
