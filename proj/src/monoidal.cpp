#include "ninefold/monoidal.hpp"

namespace ninefold {

namespace {

bool odd(int k) { return k % 2 != 0; }

}  // namespace

ChainComplex unit_complex(const FieldSpec& f) { return ChainComplex::concentrated(f, 0, 1); }

int tensor_offset(const ChainComplex& x, const ChainComplex& y, int n, int p) {
    int off = 0;
    for (int pp = x.min_deg(); pp < p; ++pp) off += x.rank(pp) * y.rank(n - pp);
    return off;
}

ChainComplex tensor(const ChainComplex& x, const ChainComplex& y) {
    require_same_field(x.field(), y.field(), "tensor");
    const FieldSpec& f = x.field();
    if (x.is_zero_complex() || y.is_zero_complex()) return ChainComplex::zero(f);
    int lo = x.min_deg() + y.min_deg();
    int hi = x.max_deg() + y.max_deg();
    std::vector<int> ranks;
    for (int n = lo; n <= hi; ++n) {
        int r = 0;
        for (int p = x.min_deg(); p <= x.max_deg(); ++p) r += x.rank(p) * y.rank(n - p);
        ranks.push_back(r);
    }
    std::vector<Matrix> diffs;
    for (int n = lo; n < hi; ++n) {
        Matrix dn = Matrix::zeros(f, ranks[n + 1 - lo], ranks[n - lo]);
        for (int p = x.min_deg(); p <= x.max_deg(); ++p) {
            int q = n - p;
            int s = x.rank(p), t = y.rank(q);
            if (s == 0 || t == 0) continue;
            int col = tensor_offset(x, y, n, p);
            if (x.rank(p + 1) > 0)
                paste(dn, tensor_offset(x, y, n + 1, p + 1), col,
                      kron(x.d(p), Matrix::identity(f, t)));
            if (y.rank(q + 1) > 0) {
                Matrix vert = kron(Matrix::identity(f, s), y.d(q));
                if (odd(p)) vert = -vert;
                paste(dn, tensor_offset(x, y, n + 1, p), col, vert);
            }
        }
        diffs.push_back(dn);
    }
    return ChainComplex(f, lo, std::move(ranks), std::move(diffs));
}

ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
    require_same_field(f.field(), g.field(), "tensor_map");
    const FieldSpec& fld = f.field();
    ChainComplex src = tensor(f.source(), g.source());
    ChainComplex tgt = tensor(f.target(), g.target());
    std::map<int, Matrix> comps;
    for (int n = src.min_deg(); n <= src.max_deg(); ++n) {
        if (src.rank(n) == 0 || tgt.rank(n) == 0) continue;
        Matrix m = Matrix::zeros(fld, tgt.rank(n), src.rank(n));
        for (int p = f.source().min_deg(); p <= f.source().max_deg(); ++p) {
            int q = n - p;
            int s = f.source().rank(p), t = g.source().rank(q);
            if (s == 0 || t == 0) continue;
            if (f.target().rank(p) == 0 || g.target().rank(q) == 0) continue;
            paste(m, tensor_offset(f.target(), g.target(), n, p),
                  tensor_offset(f.source(), g.source(), n, p), kron(f.comp(p), g.comp(q)));
        }
        if (!m.is_zero()) comps[n] = m;
    }
    return ChainMap(src, tgt, std::move(comps));
}

ChainMap braiding(const ChainComplex& x, const ChainComplex& y) {
    require_same_field(x.field(), y.field(), "braiding");
    const FieldSpec& f = x.field();
    ChainComplex src = tensor(x, y);
    ChainComplex tgt = tensor(y, x);
    std::map<int, Matrix> comps;
    for (int n = src.min_deg(); n <= src.max_deg(); ++n) {
        if (src.rank(n) == 0) continue;
        Matrix m = Matrix::zeros(f, tgt.rank(n), src.rank(n));
        for (int p = x.min_deg(); p <= x.max_deg(); ++p) {
            int q = n - p;
            int s = x.rank(p), t = y.rank(q);
            if (s == 0 || t == 0) continue;
            Scalar sign = Scalar::from_int(odd(p) && odd(q) ? -1 : 1, f);
            int cbase = tensor_offset(x, y, n, p);
            int rbase = tensor_offset(y, x, n, q);
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < t; ++j) m.set(rbase + j * s + i, cbase + i * t + j, sign);
        }
        comps[n] = m;
    }
    return ChainMap(src, tgt, std::move(comps));
}

ChainMap associator(const ChainComplex& x, const ChainComplex& y, const ChainComplex& z) {
    require_same_field(x.field(), y.field(), "associator");
    require_same_field(x.field(), z.field(), "associator");
    const FieldSpec& f = x.field();
    ChainComplex xy = tensor(x, y);
    ChainComplex yz = tensor(y, z);
    ChainComplex src = tensor(xy, z);
    ChainComplex tgt = tensor(x, yz);
    Scalar one = Scalar::one(f);
    std::map<int, Matrix> comps;
    for (int n = src.min_deg(); n <= src.max_deg(); ++n) {
        if (src.rank(n) == 0) continue;
        Matrix m = Matrix::zeros(f, tgt.rank(n), src.rank(n));
        for (int p = x.min_deg(); p <= x.max_deg(); ++p) {
            for (int q = y.min_deg(); q <= y.max_deg(); ++q) {
                int r = n - p - q;
                int a = x.rank(p), b = y.rank(q), c = z.rank(r);
                if (a == 0 || b == 0 || c == 0) continue;
                int sblock = tensor_offset(xy, z, n, p + q);
                int sinner = tensor_offset(x, y, p + q, p);
                int tblock = tensor_offset(x, yz, n, p);
                int tinner = tensor_offset(y, z, q + r, q);
                int tyz = yz.rank(q + r);
                for (int i = 0; i < a; ++i)
                    for (int j = 0; j < b; ++j)
                        for (int k = 0; k < c; ++k) {
                            int scol = sblock + (sinner + i * b + j) * c + k;
                            int trow = tblock + i * tyz + (tinner + j * c + k);
                            m.set(trow, scol, one);
                        }
            }
        }
        comps[n] = m;
    }
    return ChainMap(src, tgt, std::move(comps));
}

ChainMap associator_inv(const ChainComplex& x, const ChainComplex& y, const ChainComplex& z) {
    ChainMap a = associator(x, y, z);
    std::map<int, Matrix> comps;
    for (int n = a.source().min_deg(); n <= a.source().max_deg(); ++n) {
        if (a.source().rank(n) == 0) continue;
        Matrix m = transpose(a.comp(n));  // permutation, so transpose = inverse
        if (!m.is_zero()) comps[n] = m;
    }
    return ChainMap(a.target(), a.source(), std::move(comps));
}

Scalar DualSignRule::factor(const FieldSpec& f, int n) const {
    Scalar s = Scalar::from_int(sign, f);
    if (alternating && odd(n)) s = -s;
    return s;
}

DualSignRule dual_sign_rule() { return DualSignRule{-1, true}; }

std::vector<DualSignRule> all_dual_sign_rules() {
    return {DualSignRule{1, false}, DualSignRule{-1, false}, DualSignRule{1, true},
            DualSignRule{-1, true}};
}

ChainComplex dual_complex(const ChainComplex& x) { return dual_complex(x, dual_sign_rule()); }

ChainComplex dual_complex(const ChainComplex& x, const DualSignRule& rule) {
    if (x.is_zero_complex()) return x;
    const FieldSpec& f = x.field();
    int lo = -x.max_deg(), hi = -x.min_deg();
    std::vector<int> ranks;
    for (int n = lo; n <= hi; ++n) ranks.push_back(x.rank(-n));
    std::vector<Matrix> diffs;
    for (int n = lo; n < hi; ++n) diffs.push_back(scale(rule.factor(f, n), transpose(x.d(-n - 1))));
    return ChainComplex(f, lo, std::move(ranks), std::move(diffs));
}

ChainMap evaluation(const ChainComplex& x) { return evaluation(x, dual_sign_rule()); }

ChainMap evaluation(const ChainComplex& x, const DualSignRule& rule) {
    const FieldSpec& f = x.field();
    ChainComplex xd = dual_complex(x, rule);
    ChainComplex src = tensor(xd, x);
    ChainComplex unit = unit_complex(f);
    if (src.is_zero_complex()) return ChainMap::zero(src, unit);
    Matrix row = Matrix::zeros(f, 1, src.rank(0));
    Scalar one = Scalar::one(f);
    for (int p = xd.min_deg(); p <= xd.max_deg(); ++p) {
        int m = x.rank(-p);
        if (m == 0) continue;
        int off = tensor_offset(xd, x, 0, p);
        for (int i = 0; i < m; ++i) row.set(0, off + i * m + i, one);
    }
    return ChainMap(src, unit, {{0, row}});
}

ChainMap coevaluation(const ChainComplex& x) { return coevaluation(x, dual_sign_rule()); }

ChainMap coevaluation(const ChainComplex& x, const DualSignRule& rule) {
    const FieldSpec& f = x.field();
    ChainComplex xd = dual_complex(x, rule);
    ChainComplex tgt = tensor(x, xd);
    ChainComplex unit = unit_complex(f);
    if (tgt.is_zero_complex()) return ChainMap::zero(unit, tgt);
    Matrix col = Matrix::zeros(f, tgt.rank(0), 1);
    Scalar one = Scalar::one(f);
    for (int p = x.min_deg(); p <= x.max_deg(); ++p) {
        int m = x.rank(p);
        if (m == 0) continue;
        int off = tensor_offset(x, xd, 0, p);
        for (int i = 0; i < m; ++i) col.set(off + i * m + i, 0, one);
    }
    return ChainMap(unit, tgt, {{0, col}});
}

ChainMap zigzag_object(const ChainComplex& x) { return zigzag_object(x, dual_sign_rule()); }

ChainMap zigzag_object(const ChainComplex& x, const DualSignRule& rule) {
    ChainComplex xd = dual_complex(x, rule);
    ChainMap id = ChainMap::identity(x);
    ChainMap step1 = tensor_map(coevaluation(x, rule), id);  // x -> (x . xd) . x
    ChainMap step2 = associator(x, xd, x);                   // -> x . (xd . x)
    ChainMap step3 = tensor_map(id, evaluation(x, rule));    // -> x
    return compose(step3, compose(step2, step1));
}

ChainMap zigzag_dual(const ChainComplex& x) { return zigzag_dual(x, dual_sign_rule()); }

ChainMap zigzag_dual(const ChainComplex& x, const DualSignRule& rule) {
    ChainComplex xd = dual_complex(x, rule);
    ChainMap id = ChainMap::identity(xd);
    ChainMap step1 = tensor_map(id, coevaluation(x, rule));  // xd -> xd . (x . xd)
    ChainMap step2 = associator_inv(xd, x, xd);              // -> (xd . x) . xd
    ChainMap step3 = tensor_map(evaluation(x, rule), id);    // -> xd
    return compose(step3, compose(step2, step1));
}

std::vector<DualSignRule> search_dual_signs(const std::vector<ChainComplex>& samples) {
    std::vector<DualSignRule> out;
    for (const DualSignRule& rule : all_dual_sign_rules()) {
        bool ok = true;
        for (const ChainComplex& x : samples) {
            if (!evaluation(x, rule).is_chain_map() || !coevaluation(x, rule).is_chain_map() ||
                zigzag_object(x, rule) != ChainMap::identity(x) ||
                zigzag_dual(x, rule) != ChainMap::identity(dual_complex(x, rule))) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(rule);
    }
    return out;
}

Scalar lefschetz_trace(const ChainMap& f) {
    if (!(f.source() == f.target()))
        fail(Err::Domain, "lefschetz_trace: source and target must coincide");
    Scalar total = Scalar::zero(f.field());
    for (int n = f.source().min_deg(); n <= f.source().max_deg(); ++n) {
        Scalar t = trace(f.comp(n));
        total = odd(n) ? total - t : total + t;
    }
    return total;
}

Scalar trace_via_duality(const ChainMap& f) {
    if (!(f.source() == f.target()))
        fail(Err::Domain, "trace_via_duality: source and target must coincide");
    const ChainComplex& x = f.source();
    ChainComplex xd = dual_complex(x);
    ChainMap loop = compose(
        evaluation(x),
        compose(braiding(x, xd), compose(tensor_map(f, ChainMap::identity(xd)), coevaluation(x))));
    return loop.comp(0).at(0, 0);
}

Scalar verdier_pairing_point(const ChainMap& a, const ChainMap& b) {
    if (!(a.source() == b.target() && a.target() == b.source()))
        fail(Err::Domain, "verdier_pairing_point: maps must pair F -> G against G -> F");
    const ChainComplex& fc = a.source();
    const ChainComplex& gc = a.target();
    ChainComplex fd = dual_complex(fc);
    // unit -> G . F*
    ChainMap coev_a = compose(tensor_map(a, ChainMap::identity(fd)), coevaluation(fc));
    // G . F* -> unit
    ChainMap ev_b = compose(
        evaluation(fc), compose(tensor_map(ChainMap::identity(fd), b), braiding(gc, fd)));
    return compose(ev_b, coev_a).comp(0).at(0, 0);
}

int hom_offset(const ChainComplex& x, const ChainComplex& y, int n, int k) {
    int off = 0;
    for (int kk = x.min_deg(); kk < k; ++kk) off += x.rank(kk) * y.rank(kk + n);
    return off;
}

ChainComplex internal_hom(const ChainComplex& x, const ChainComplex& y) {
    require_same_field(x.field(), y.field(), "internal_hom");
    const FieldSpec& f = x.field();
    if (x.is_zero_complex() || y.is_zero_complex()) return ChainComplex::zero(f);
    int lo = y.min_deg() - x.max_deg();
    int hi = y.max_deg() - x.min_deg();
    std::vector<int> ranks;
    for (int n = lo; n <= hi; ++n) {
        int r = 0;
        for (int k = x.min_deg(); k <= x.max_deg(); ++k) r += x.rank(k) * y.rank(k + n);
        ranks.push_back(r);
    }
    std::vector<Matrix> diffs;
    for (int n = lo; n < hi; ++n) {
        Matrix dn = Matrix::zeros(f, ranks[n + 1 - lo], ranks[n - lo]);
        for (int k = x.min_deg(); k <= x.max_deg(); ++k) {
            int s = x.rank(k), t = y.rank(k + n);
            if (s == 0 || t == 0) continue;
            int col = hom_offset(x, y, n, k);
            if (y.rank(k + n + 1) > 0)
                paste(dn, hom_offset(x, y, n + 1, k), col,
                      kron(Matrix::identity(f, s), y.d(k + n)));
            if (x.rank(k - 1) > 0) {
                Matrix pre = kron(transpose(x.d(k - 1)), Matrix::identity(f, t));
                if (!odd(n)) pre = -pre;  // total sign -(-1)^n
                paste(dn, hom_offset(x, y, n + 1, k - 1), col, pre);
            }
        }
        diffs.push_back(dn);
    }
    return ChainComplex(f, lo, std::move(ranks), std::move(diffs));
}

ChainMap hom_post(const ChainComplex& x, const ChainMap& g) {
    require_same_field(x.field(), g.field(), "hom_post");
    const FieldSpec& f = x.field();
    ChainComplex src = internal_hom(x, g.source());
    ChainComplex tgt = internal_hom(x, g.target());
    std::map<int, Matrix> comps;
    for (int n = src.min_deg(); n <= src.max_deg(); ++n) {
        if (src.rank(n) == 0 || tgt.rank(n) == 0) continue;
        Matrix m = Matrix::zeros(f, tgt.rank(n), src.rank(n));
        for (int k = x.min_deg(); k <= x.max_deg(); ++k) {
            int s = x.rank(k);
            if (s == 0 || g.source().rank(k + n) == 0 || g.target().rank(k + n) == 0) continue;
            paste(m, hom_offset(x, g.target(), n, k), hom_offset(x, g.source(), n, k),
                  kron(Matrix::identity(f, s), g.comp(k + n)));
        }
        if (!m.is_zero()) comps[n] = m;
    }
    return ChainMap(src, tgt, std::move(comps));
}

ChainMap hom_pre(const ChainMap& h, const ChainComplex& y) {
    require_same_field(h.field(), y.field(), "hom_pre");
    const FieldSpec& f = y.field();
    ChainComplex src = internal_hom(h.target(), y);
    ChainComplex tgt = internal_hom(h.source(), y);
    std::map<int, Matrix> comps;
    for (int n = src.min_deg(); n <= src.max_deg(); ++n) {
        if (src.rank(n) == 0 || tgt.rank(n) == 0) continue;
        Matrix m = Matrix::zeros(f, tgt.rank(n), src.rank(n));
        for (int k = h.source().min_deg(); k <= h.source().max_deg(); ++k) {
            int t = y.rank(k + n);
            if (t == 0 || h.source().rank(k) == 0 || h.target().rank(k) == 0) continue;
            paste(m, hom_offset(h.source(), y, n, k), hom_offset(h.target(), y, n, k),
                  kron(transpose(h.comp(k)), Matrix::identity(f, t)));
        }
        if (!m.is_zero()) comps[n] = m;
    }
    return ChainMap(src, tgt, std::move(comps));
}

Matrix hom_vector(const ChainMap& f) {
    const ChainComplex& x = f.source();
    const ChainComplex& y = f.target();
    ChainComplex h = internal_hom(x, y);
    Matrix v = Matrix::zeros(f.field(), h.rank(0), 1);
    for (int k = x.min_deg(); k <= x.max_deg(); ++k) {
        int s = x.rank(k), t = y.rank(k);
        if (s == 0 || t == 0) continue;
        int off = hom_offset(x, y, 0, k);
        Matrix c = f.comp(k);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < t; ++j) v.set(off + i * t + j, 0, c.at(j, i));
    }
    return v;
}

Matrix hom_component(const ChainComplex& x, const ChainComplex& y, int n, int k, const Matrix& v) {
    const FieldSpec& f = x.field();
    int s = x.rank(k), t = y.rank(k + n);
    Matrix m = Matrix::zeros(f, t, s);
    int off = hom_offset(x, y, n, k);
    if (off + s * t > v.rows() || v.cols() != 1)
        fail(Err::Shape, "hom_component: coordinate column has wrong length");
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < t; ++j) m.set(j, i, v.at(off + i * t + j, 0));
    return m;
}

ChainMap hom_cycle(const ChainMap& f) {
    f.require_chain_map("hom_cycle");
    ChainComplex h = internal_hom(f.source(), f.target());
    std::map<int, Matrix> comps;
    Matrix v = hom_vector(f);
    if (!v.is_zero()) comps[0] = v;
    return ChainMap(unit_complex(f.field()), h, std::move(comps));
}

ChainMap trace_functional(const ChainMap& b) {
    b.require_chain_map("trace_functional");
    const ChainComplex& x = b.target();
    const ChainComplex& y = b.source();
    const FieldSpec& f = b.field();
    ChainComplex h = internal_hom(x, y);
    if (h.is_zero_complex()) return ChainMap::zero(h, unit_complex(f));
    Matrix row = Matrix::zeros(f, 1, h.rank(0));
    for (int k = x.min_deg(); k <= x.max_deg(); ++k) {
        int s = x.rank(k), t = y.rank(k);
        if (s == 0 || t == 0) continue;
        int off = hom_offset(x, y, 0, k);
        Matrix c = b.comp(k);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < t; ++j) {
                Scalar val = c.at(i, j);
                if (odd(k)) val = -val;
                row.set(0, off + i * t + j, val);
            }
    }
    std::map<int, Matrix> comps;
    if (!row.is_zero()) comps[0] = row;
    return ChainMap(h, unit_complex(f), std::move(comps));
}

}  // namespace ninefold
