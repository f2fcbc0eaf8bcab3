#include "ninefold/nine.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <utility>

#include "ninefold/linsys.hpp"
#include "ninefold/monoidal.hpp"

namespace ninefold {

namespace {

// Anti-diagonal positions (j, k) with j + k = i, ascending row index.
std::vector<std::pair<int, int>> diag_positions(int i) {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j <= 2; ++j) {
        int k = i - j;
        if (k >= 0 && k <= 2) out.emplace_back(j, k);
    }
    return out;
}

ChainComplex diag_sum(const NineDiagram& nd, int i) {
    auto ps = diag_positions(i);
    ChainComplex c = nd.x(ps[0].first, ps[0].second);
    for (std::size_t t = 1; t < ps.size(); ++t) c = direct_sum(c, nd.x(ps[t].first, ps[t].second));
    return c;
}

// Offset of the summand in row j inside degree `deg` of anti-diagonal i.
int diag_offset(const NineDiagram& nd, int i, int j, int deg) {
    int off = 0;
    for (auto [jj, kk] : diag_positions(i)) {
        if (jj == j) return off;
        off += nd.x(jj, kk).rank(deg);
    }
    fail(Err::Domain, "diag_offset: no summand in row " + std::to_string(j));
}

Matrix signed_block(const FieldSpec& f, const Matrix& m, int sg) {
    return sg >= 0 ? m : scale(-Scalar::one(f), m);
}

FiveTermChain build_five(const NineDiagram& nd, const FoldSigns& s) {
    const FieldSpec& f = nd.field();
    FiveTermChain ft;
    for (int i = 0; i < 5; ++i) ft.c[i] = diag_sum(nd, i);
    for (int i = 0; i < 4; ++i) {
        int lo = std::min(ft.c[i].min_deg(), ft.c[i + 1].min_deg());
        int hi = std::max(ft.c[i].max_deg(), ft.c[i + 1].max_deg());
        std::map<int, Matrix> comps;
        for (int m = lo; m <= hi; ++m) {
            int rows = ft.c[i + 1].rank(m), cols = ft.c[i].rank(m);
            if (rows == 0 || cols == 0) continue;
            Matrix d = Matrix::zeros(f, rows, cols);
            for (auto [j, k] : diag_positions(i)) {
                int co = diag_offset(nd, i, j, m);
                if (k + 1 <= 2) {
                    int sg = (i == 1) ? (j == 0 ? s.d1[0] : s.d1[2]) : 1;
                    paste(d, diag_offset(nd, i + 1, j, m), co,
                          signed_block(f, nd.dh[j][k].comp(m), sg));
                }
                if (j + 1 <= 2) {
                    int sg = (i == 1) ? (j == 0 ? s.d1[1] : s.d1[3]) : (i % 2 == 0 ? 1 : -1);
                    paste(d, diag_offset(nd, i + 1, j + 1, m), co,
                          signed_block(f, nd.dv[j][k].comp(m), sg));
                }
            }
            comps[m] = std::move(d);
        }
        ft.d[i] = ChainMap(ft.c[i], ft.c[i + 1], std::move(comps));
    }
    return ft;
}

ChainMap build_u(const NineDiagram& nd, const FiveTermChain& ft, const FoldSigns& s) {
    const FieldSpec& f = nd.field();
    ChainComplex cn = cone(ft.d[0]);
    const ChainComplex& c0 = ft.c[0];
    const ChainComplex& c2 = ft.c[2];
    const ChainMap* ws[3] = {&nd.w_row[0], &nd.w_ul, &nd.w_col[0]};
    int lo = std::min(cn.min_deg(), c2.min_deg());
    int hi = std::max(cn.max_deg(), c2.max_deg());
    std::map<int, Matrix> comps;
    for (int m = lo; m <= hi; ++m) {
        int rows = c2.rank(m), cols = cn.rank(m);
        if (rows == 0 || cols == 0) continue;
        Matrix um = Matrix::zeros(f, rows, cols);
        for (int t = 0; t < 3; ++t)
            paste(um, diag_offset(nd, 2, t, m), 0, signed_block(f, ws[t]->comp(m), s.u_w[t]));
        paste(um, 0, c0.rank(m + 1), ft.d[1].comp(m));
        comps[m] = std::move(um);
    }
    return ChainMap(cn, c2, std::move(comps));
}

ChainMap build_v(const NineDiagram& nd, const FiveTermChain& ft, const FoldSigns& s) {
    const FieldSpec& f = nd.field();
    ChainComplex fb = fiber(ft.d[3]);
    const ChainComplex& c2 = ft.c[2];
    const ChainComplex& c3 = ft.c[3];
    const ChainMap* ws[3] = {&nd.w_col[2], &nd.w_lr, &nd.w_row[2]};
    int lo = std::min(fb.min_deg(), c2.min_deg());
    int hi = std::max(fb.max_deg(), c2.max_deg());
    std::map<int, Matrix> comps;
    for (int m = lo; m <= hi; ++m) {
        int rows = fb.rank(m), cols = c2.rank(m);
        if (rows == 0 || cols == 0) continue;
        Matrix vm = Matrix::zeros(f, rows, cols);
        paste(vm, 0, 0, ft.d[2].comp(m));
        for (int t = 0; t < 3; ++t)
            paste(vm, c3.rank(m), diag_offset(nd, 2, t, m),
                  signed_block(f, ws[t]->comp(m - 1), s.v_w[t]));
        comps[m] = std::move(vm);
    }
    return ChainMap(c2, fb, std::move(comps));
}

// Wiring only: every stored map runs between the entries its indices claim.
// Everything else in nine_violations assumes this layer holds.
std::vector<std::string> wiring_violations(const NineDiagram& n) {
    std::vector<std::string> out;
    auto name = [](const char* base, int a, int b) {
        return std::string(base) + "[" + std::to_string(a) + "][" + std::to_string(b) + "]";
    };
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 2; ++k)
            if (n.dh[j][k].source() != n.x(j, k) || n.dh[j][k].target() != n.x(j, k + 1))
                out.push_back(name("dh", j, k) + " does not run between its grid entries");
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 3; ++k)
            if (n.dv[j][k].source() != n.x(j, k) || n.dv[j][k].target() != n.x(j + 1, k))
                out.push_back(name("dv", j, k) + " does not run between its grid entries");
    for (int j = 0; j < 3; ++j)
        if (n.w_row[j].source() != shift(n.x(j, 0), 1) || n.w_row[j].target() != n.x(j, 2))
            out.push_back("w_row[" + std::to_string(j) + "] has the wrong endpoints");
    for (int k = 0; k < 3; ++k)
        if (n.w_col[k].source() != shift(n.x(0, k), 1) || n.w_col[k].target() != n.x(2, k))
            out.push_back("w_col[" + std::to_string(k) + "] has the wrong endpoints");
    if (n.w_ul.source() != shift(n.x(0, 0), 1) || n.w_ul.target() != n.x(1, 1))
        out.push_back("w_ul has the wrong endpoints");
    if (n.w_lr.source() != shift(n.x(1, 1), 1) || n.w_lr.target() != n.x(2, 2))
        out.push_back("w_lr has the wrong endpoints");
    return out;
}

}  // namespace

const ChainComplex& NineDiagram::x(int j, int k) const {
    if (j < 0 || j > 2 || k < 0 || k > 2) fail(Err::Domain, "NineDiagram entry index out of range");
    if (k == 0) return dh[j][0].source();
    if (k == 1) return dh[j][0].target();
    return dh[j][1].target();
}

std::vector<std::string> nine_violations(const NineDiagram& n) {
    std::vector<std::string> out = wiring_violations(n);
    if (!out.empty()) return out;  // nothing below is well-posed

    auto name = [](const char* base, int a, int b) {
        return std::string(base) + "[" + std::to_string(a) + "][" + std::to_string(b) + "]";
    };
    auto check_chain = [&](const ChainMap& m, const std::string& label) {
        if (!m.is_chain_map()) out.push_back(label + " is not a chain map");
    };
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 2; ++k) check_chain(n.dh[j][k], name("dh", j, k));
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 3; ++k) check_chain(n.dv[j][k], name("dv", j, k));
    for (int j = 0; j < 3; ++j) check_chain(n.w_row[j], "w_row[" + std::to_string(j) + "]");
    for (int k = 0; k < 3; ++k) check_chain(n.w_col[k], "w_col[" + std::to_string(k) + "]");
    check_chain(n.w_ul, "w_ul");
    check_chain(n.w_lr, "w_lr");

    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            if (compose(n.dv[j][k + 1], n.dh[j][k]) != compose(n.dh[j + 1][k], n.dv[j][k]))
                out.push_back("square (" + std::to_string(j) + "," + std::to_string(k) +
                              ") does not commute strictly");
    for (int j = 0; j < 3; ++j)
        if (!compose(n.dh[j][1], n.dh[j][0]).is_zero())
            out.push_back("row " + std::to_string(j) + " composite is nonzero");
    for (int k = 0; k < 3; ++k)
        if (!compose(n.dv[1][k], n.dv[0][k]).is_zero())
            out.push_back("column " + std::to_string(k) + " composite is nonzero");

    // Rows and columns must be exact triangles. Skip a line whose triangle
    // cannot even be formed; its defects are already reported above, and a
    // non-chain witness is reported above as well.
    for (int j = 0; j < 3; ++j) {
        if (!n.dh[j][0].is_chain_map() || !n.dh[j][1].is_chain_map() ||
            !compose(n.dh[j][1], n.dh[j][0]).is_zero())
            continue;
        TriangleStatus st = validate_triangle(Triangle(n.dh[j][0], n.dh[j][1], n.w_row[j]));
        if (st == TriangleStatus::NotExact)
            out.push_back("row " + std::to_string(j) + " is not an exact triangle");
    }
    for (int k = 0; k < 3; ++k) {
        if (!n.dv[0][k].is_chain_map() || !n.dv[1][k].is_chain_map() ||
            !compose(n.dv[1][k], n.dv[0][k]).is_zero())
            continue;
        TriangleStatus st = validate_triangle(Triangle(n.dv[0][k], n.dv[1][k], n.w_col[k]));
        if (st == TriangleStatus::NotExact)
            out.push_back("column " + std::to_string(k) + " is not an exact triangle");
    }

    auto id_check = [&](const ChainMap& lhs, const ChainMap& rhs, const char* label) {
        if (lhs != rhs) out.push_back(std::string("witness identity ") + label + " fails");
    };
    id_check(compose(n.dv[0][2], n.w_row[0]), compose(n.dh[1][1], n.w_ul), "(i)");
    id_check(compose(n.dv[1][1], n.w_ul), compose(n.dh[2][0], n.w_col[0]), "(ii)");
    id_check(compose(n.w_col[2], shift_map(n.dh[0][1], 1)),
             compose(n.w_lr, shift_map(n.dv[0][1], 1)), "(iii)");
    id_check(compose(n.w_lr, shift_map(n.dh[1][0], 1)),
             compose(n.w_row[2], shift_map(n.dv[1][0], 1)), "(iv)");
    ChainMap alternating = compose(n.w_col[2], shift_map(n.w_row[0], 1)) -
                           compose(n.w_lr, shift_map(n.w_ul, 1)) +
                           compose(n.w_row[2], shift_map(n.w_col[0], 1));
    if (!alternating.is_zero()) out.push_back("witness identity (v) fails");
    return out;
}

bool is_valid_nine(const NineDiagram& n) { return nine_violations(n).empty(); }

void require_valid_nine(const NineDiagram& n, const char* what) {
    auto v = nine_violations(n);
    if (!v.empty()) fail(Err::Validation, std::string(what) + ": " + v.front());
}

NineDiagram transpose_nine(const NineDiagram& n) {
    NineDiagram t;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 2; ++k) t.dh[j][k] = n.dv[k][j];
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 3; ++k) t.dv[j][k] = n.dh[k][j];
    t.w_row = n.w_col;
    t.w_col = n.w_row;
    t.w_ul = n.w_ul;
    t.w_lr = n.w_lr;
    return t;
}

FiveTermChain five_term_chain(const NineDiagram& n) { return build_five(n, fold_signs()); }

ChainComplex total_complex(const FiveTermChain& ft) {
    const FieldSpec& f = ft.c[0].field();
    int lo = 0, hi = -1;
    bool any = false;
    for (int i = 0; i < 5; ++i) {
        if (ft.c[i].max_deg() < ft.c[i].min_deg()) continue;
        lo = any ? std::min(lo, ft.c[i].min_deg() + i) : ft.c[i].min_deg() + i;
        hi = any ? std::max(hi, ft.c[i].max_deg() + i) : ft.c[i].max_deg() + i;
        any = true;
    }
    if (!any) return ChainComplex::zero(f);
    std::vector<int> ranks;
    for (int n = lo; n <= hi; ++n) {
        int r = 0;
        for (int i = 0; i < 5; ++i) r += ft.c[i].rank(n - i);
        ranks.push_back(r);
    }
    std::vector<Matrix> diffs;
    for (int n = lo; n < hi; ++n) {
        Matrix d = Matrix::zeros(f, ranks[n + 1 - lo], ranks[n - lo]);
        auto roff = [&](int ip) {
            int off = 0;
            for (int t = 0; t < ip; ++t) off += ft.c[t].rank(n + 1 - t);
            return off;
        };
        int co = 0;
        for (int i = 0; i < 5; ++i) {
            int m = n - i;
            int cols = ft.c[i].rank(m);
            if (cols > 0) {
                if (i + 1 < 5) paste(d, roff(i + 1), co, ft.d[i].comp(m));
                paste(d, roff(i), co, signed_block(f, ft.c[i].d(m), i % 2 == 0 ? 1 : -1));
            }
            co += cols;
        }
        diffs.push_back(std::move(d));
    }
    return ChainComplex(f, lo, std::move(ranks), std::move(diffs));
}

ChainMap nine_u(const NineDiagram& n) {
    FoldSigns s = fold_signs();
    return build_u(n, build_five(n, s), s);
}

ChainMap nine_v(const NineDiagram& n) {
    FoldSigns s = fold_signs();
    return build_v(n, build_five(n, s), s);
}

Triangle associated_triangle(const NineDiagram& n) {
    FoldSigns s = fold_signs();
    FiveTermChain ft = build_five(n, s);
    ChainMap u = build_u(n, ft, s);
    ChainMap v = build_v(n, ft, s);
    try {
        Triangle t(u, v, ChainMap::zero(shift(u.source(), 1), v.target()));
        if (validate_triangle(t) != TriangleStatus::Exact)
            fail(Err::Construction, "associated triangle of the diagram is not exact");
        return t;
    } catch (const Error& e) {
        if (e.code() == Err::Construction) throw;
        fail(Err::Construction,
             std::string("associated triangle could not be formed: ") + e.what());
    }
}

NineDiagram source_nine(const ChainComplex& x) {
    const FieldSpec& f = x.field();
    ChainComplex z = ChainComplex::zero(f);
    ChainComplex xm = shift(x, -1);
    ChainComplex xp = shift(x, 1);
    NineDiagram n;
    // rows: (x[-1], 0, x), (0, x, x), (x, x, 0)
    n.dh[0][0] = ChainMap::zero(xm, z);
    n.dh[0][1] = ChainMap::zero(z, x);
    n.dh[1][0] = ChainMap::zero(z, x);
    n.dh[1][1] = ChainMap::identity(x);
    n.dh[2][0] = ChainMap::identity(x);
    n.dh[2][1] = ChainMap::zero(x, z);
    n.dv[0][0] = ChainMap::zero(xm, z);
    n.dv[0][1] = ChainMap::zero(z, x);
    n.dv[0][2] = ChainMap::identity(x);
    n.dv[1][0] = ChainMap::zero(z, x);
    n.dv[1][1] = ChainMap::identity(x);
    n.dv[1][2] = ChainMap::zero(x, z);
    // x(0,0)[1] = x[-1][1] = x on the nose, so the corner witnesses are
    // literal identities.
    n.w_row[0] = ChainMap::identity(x);
    n.w_row[1] = ChainMap::zero(z, x);
    n.w_row[2] = ChainMap::zero(xp, z);
    n.w_col[0] = ChainMap::identity(x);
    n.w_col[1] = ChainMap::zero(z, x);
    n.w_col[2] = ChainMap::zero(xp, z);
    n.w_ul = ChainMap::identity(x);
    n.w_lr = ChainMap::zero(xp, z);
    return n;
}

NineDiagram target_nine(const ChainComplex& x) {
    const FieldSpec& f = x.field();
    ChainComplex z = ChainComplex::zero(f);
    ChainComplex xp = shift(x, 1);
    NineDiagram n;
    // rows: (0, x, x), (x, x, 0), (x, 0, x[1])
    n.dh[0][0] = ChainMap::zero(z, x);
    n.dh[0][1] = ChainMap::identity(x);
    n.dh[1][0] = ChainMap::identity(x);
    n.dh[1][1] = ChainMap::zero(x, z);
    n.dh[2][0] = ChainMap::zero(x, z);
    n.dh[2][1] = ChainMap::zero(z, xp);
    n.dv[0][0] = ChainMap::zero(z, x);
    n.dv[0][1] = ChainMap::identity(x);
    n.dv[0][2] = ChainMap::zero(x, z);
    n.dv[1][0] = ChainMap::identity(x);
    n.dv[1][1] = ChainMap::zero(x, z);
    n.dv[1][2] = ChainMap::zero(z, xp);
    n.w_row[0] = ChainMap::zero(z, x);
    n.w_row[1] = ChainMap::zero(xp, z);
    n.w_row[2] = ChainMap::identity(xp);
    n.w_col[0] = ChainMap::zero(z, x);
    n.w_col[1] = ChainMap::zero(xp, z);
    n.w_col[2] = ChainMap::identity(xp);
    n.w_ul = ChainMap::zero(z, x);
    n.w_lr = ChainMap::identity(xp);
    return n;
}

std::vector<std::string> nine_map_violations(const NineMap& m) {
    std::vector<std::string> out;
    for (auto v : wiring_violations(m.source)) out.push_back("source diagram: " + v);
    for (auto v : wiring_violations(m.target)) out.push_back("target diagram: " + v);
    if (!out.empty()) return out;
    auto name = [](int j, int k) {
        return "phi[" + std::to_string(j) + "][" + std::to_string(k) + "]";
    };
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            if (m.phi[j][k].source() != m.source.x(j, k) ||
                m.phi[j][k].target() != m.target.x(j, k))
                out.push_back(name(j, k) + " does not run between the matching entries");
    if (!out.empty()) return out;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            if (!m.phi[j][k].is_chain_map()) out.push_back(name(j, k) + " is not a chain map");
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 2; ++k)
            if (compose(m.target.dh[j][k], m.phi[j][k]) !=
                compose(m.phi[j][k + 1], m.source.dh[j][k]))
                out.push_back("horizontal square at (" + std::to_string(j) + "," +
                              std::to_string(k) + ") does not commute");
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 3; ++k)
            if (compose(m.target.dv[j][k], m.phi[j][k]) !=
                compose(m.phi[j + 1][k], m.source.dv[j][k]))
                out.push_back("vertical square at (" + std::to_string(j) + "," +
                              std::to_string(k) + ") does not commute");
    return out;
}

bool is_valid_nine_map(const NineMap& m) { return nine_map_violations(m).empty(); }

void require_valid_nine_map(const NineMap& m, const char* what) {
    auto v = nine_map_violations(m);
    if (!v.empty()) fail(Err::Validation, std::string(what) + ": " + v.front());
}

bool intertwines_witnesses(const NineMap& m) {
    for (int j = 0; j < 3; ++j)
        if (compose(m.target.w_row[j], shift_map(m.phi[j][0], 1)) !=
            compose(m.phi[j][2], m.source.w_row[j]))
            return false;
    for (int k = 0; k < 3; ++k)
        if (compose(m.target.w_col[k], shift_map(m.phi[0][k], 1)) !=
            compose(m.phi[2][k], m.source.w_col[k]))
            return false;
    if (compose(m.target.w_ul, shift_map(m.phi[0][0], 1)) !=
        compose(m.phi[1][1], m.source.w_ul))
        return false;
    return compose(m.target.w_lr, shift_map(m.phi[1][1], 1)) ==
           compose(m.phi[2][2], m.source.w_lr);
}

NineMap compose_nine(const NineMap& a, const NineMap& b) {
    NineMap out;
    out.source = b.source;
    out.target = a.target;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) out.phi[j][k] = compose(a.phi[j][k], b.phi[j][k]);
    return out;
}

NineMap random_nine_map(Rng& rng, const NineDiagram& source, const NineDiagram& target) {
    require_valid_nine(source, "random_nine_map source");
    require_valid_nine(target, "random_nine_map target");
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (const ChainComplex* x : {&source.x(j, k), &target.x(j, k)})
                if (x->min_deg() <= x->max_deg()) {
                    lo = std::min(lo, x->min_deg());
                    hi = std::max(hi, x->max_deg());
                }
    NineMap out;
    out.source = source;
    out.target = target;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            out.phi[j][k] = ChainMap::zero(source.x(j, k), target.x(j, k));
    if (lo > hi) return out;

    const FieldSpec& f = source.field();
    LinSys sys(f);
    std::map<int, int> h[3][3];  // degree -> unknown handle, per entry
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (int n = lo; n <= hi; ++n)
                if (target.x(j, k).rank(n) > 0 && source.x(j, k).rank(n) > 0)
                    h[j][k][n] =
                        sys.add_unknown(target.x(j, k).rank(n), source.x(j, k).rank(n));
    auto left_term = [&](int j, int k, int n, const Matrix& l) {
        auto it = h[j][k].find(n);
        if (it != h[j][k].end()) sys.add_left_term(it->second, l);
    };
    auto right_term = [&](int j, int k, int n, const Matrix& r) {
        auto it = h[j][k].find(n);
        if (it != h[j][k].end()) sys.add_right_term(it->second, r);
    };
    Scalar minus = Scalar::from_int(-1, f);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            const ChainComplex& sx = source.x(j, k);
            const ChainComplex& tx = target.x(j, k);
            // Chain condition d' phi = phi d in every degree.
            for (int n = lo - 1; n <= hi; ++n) {
                if (tx.rank(n + 1) == 0 || sx.rank(n) == 0) continue;
                sys.begin_equation(Matrix::zeros(f, tx.rank(n + 1), sx.rank(n)));
                left_term(j, k, n, tx.d(n));
                right_term(j, k, n + 1, scale(minus, sx.d(n)));
            }
            // Horizontal naturality dh' phi = phi' dh.
            if (k < 2)
                for (int n = lo; n <= hi; ++n) {
                    if (target.x(j, k + 1).rank(n) == 0 || sx.rank(n) == 0) continue;
                    sys.begin_equation(
                        Matrix::zeros(f, target.x(j, k + 1).rank(n), sx.rank(n)));
                    left_term(j, k, n, target.dh[j][k].comp(n));
                    right_term(j, k + 1, n, scale(minus, source.dh[j][k].comp(n)));
                }
            // Vertical naturality dv' phi = phi' dv.
            if (j < 2)
                for (int n = lo; n <= hi; ++n) {
                    if (target.x(j + 1, k).rank(n) == 0 || sx.rank(n) == 0) continue;
                    sys.begin_equation(
                        Matrix::zeros(f, target.x(j + 1, k).rank(n), sx.rank(n)));
                    left_term(j, k, n, target.dv[j][k].comp(n));
                    right_term(j + 1, k, n, scale(minus, source.dv[j][k].comp(n)));
                }
        }
    auto sol = sys.sample(rng);
    if (!sol) fail(Err::Construction, "random_nine_map: homogeneous system inconsistent");
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            std::map<int, Matrix> comps;
            for (auto& [n, u] : h[j][k]) comps.emplace(n, (*sol)[u]);
            out.phi[j][k] = ChainMap(source.x(j, k), target.x(j, k), std::move(comps));
        }
    return out;
}

TriangleMap apply_nine_map(const NineMap& m) {
    require_valid_nine_map(m, "apply_nine_map");
    const FieldSpec& f = m.source.field();
    FoldSigns fs = fold_signs();
    FiveTermChain cs = build_five(m.source, fs);
    FiveTermChain ct = build_five(m.target, fs);
    Triangle src = associated_triangle(m.source);
    Triangle tgt = associated_triangle(m.target);
    const ChainMap& u = src.f();
    const ChainMap& v = src.g();
    const ChainMap& up = tgt.f();
    const ChainMap& vp = tgt.g();

    ChainMap theta1 = direct_sum_map(direct_sum_map(m.phi[0][2], m.phi[1][1]), m.phi[2][0]);

    // The witness column of u and the witness row of v, as matrices.
    auto wcol = [](const ChainMap& uu, const FiveTermChain& c, int n) {
        return block(uu.comp(n), 0, 0, c.c[2].rank(n), c.c[0].rank(n + 1));
    };
    auto srow = [](const ChainMap& vv, const FiveTermChain& c, int n) {
        return block(vv.comp(n), c.c[3].rank(n), 0, c.c[4].rank(n - 1), c.c[2].rank(n));
    };

    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    for (const FiveTermChain* c : {&cs, &ct})
        for (int i = 0; i < 5; ++i) {
            if (c->c[i].max_deg() < c->c[i].min_deg()) continue;
            lo = std::min(lo, c->c[i].min_deg());
            hi = std::max(hi, c->c[i].max_deg());
        }
    if (lo > hi) {  // everything is zero
        ChainMap za(cone(cs.d[0]), cone(ct.d[0]), {});
        ChainMap zb(cs.c[2], ct.c[2], {});
        ChainMap zc(fiber(cs.d[3]), fiber(ct.d[3]), {});
        return TriangleMap{src, tgt, za, zb, zc};
    }
    lo -= 2;
    hi += 2;

    // Correction for the cone side: theta0 = [[phi00[1] + dA[1], 0], [B, diag]]
    // must be a chain map with u' theta0 = theta1 u. With dA(m): c0^m -> c0'^m
    // and B(m): c0^m -> c1'^{m-1}, the equations are, degreewise,
    //   d_{c0'} dA - dA d_{c0}                  = 0
    //   d0' dA(n+1) + d_{c1'} B(n+1) + B(n+2) d_{c0}(n+1) = 0
    //   W0' dA(n+1) + d1' B(n+1)                = theta1 W0 - W0' phi00[1].
    LinSys sysA(f);
    std::map<int, int> hA, hB;
    for (int n = lo; n <= hi; ++n) {
        if (cs.c[0].rank(n) > 0 && ct.c[0].rank(n) > 0)
            hA[n] = sysA.add_unknown(ct.c[0].rank(n), cs.c[0].rank(n));
        if (cs.c[0].rank(n) > 0 && ct.c[1].rank(n - 1) > 0)
            hB[n] = sysA.add_unknown(ct.c[1].rank(n - 1), cs.c[0].rank(n));
    }
    for (int n = lo; n <= hi; ++n) {
        if (ct.c[0].rank(n + 1) > 0 && cs.c[0].rank(n) > 0) {
            sysA.begin_equation(Matrix::zeros(f, ct.c[0].rank(n + 1), cs.c[0].rank(n)));
            if (hA.count(n)) sysA.add_left_term(hA[n], ct.c[0].d(n));
            if (hA.count(n + 1))
                sysA.add_right_term(hA[n + 1], scale(-Scalar::one(f), cs.c[0].d(n)));
        }
        if (ct.c[1].rank(n + 1) > 0 && cs.c[0].rank(n + 1) > 0) {
            sysA.begin_equation(Matrix::zeros(f, ct.c[1].rank(n + 1), cs.c[0].rank(n + 1)));
            if (hA.count(n + 1)) sysA.add_left_term(hA[n + 1], ct.d[0].comp(n + 1));
            if (hB.count(n + 1)) sysA.add_left_term(hB[n + 1], ct.c[1].d(n));
            if (hB.count(n + 2)) sysA.add_right_term(hB[n + 2], cs.c[0].d(n + 1));
        }
        if (ct.c[2].rank(n) > 0 && cs.c[0].rank(n + 1) > 0) {
            Matrix rhs = theta1.comp(n) * wcol(u, cs, n) -
                         wcol(up, ct, n) * m.phi[0][0].comp(n + 1);
            sysA.begin_equation(rhs);
            if (hA.count(n + 1)) sysA.add_left_term(hA[n + 1], wcol(up, ct, n));
            if (hB.count(n + 1)) sysA.add_left_term(hB[n + 1], ct.d[1].comp(n));
        }
    }
    auto solA = sysA.solve();
    if (!solA) fail(Err::Naturality, "no strict cone-side correction exists for this map");

    // Correction for the fiber side: theta2 = [[diag, 0], [Z, phi22[-1] + dG[-1]]]
    // with dG(m): c4^m -> c4'^m and Z(m): c3^m -> c4'^{m-1}:
    //   d_{c4'} dG - dG d_{c4}                   = 0
    //   Z(n+1) d_{c3}(n) - dG(n) d3(n) + d_{c4'}(n-1) Z(n) = 0
    //   Z(n) d2(n) + dG(n-1) sigma(n)            = sigma' theta1 - phi22[-1] sigma.
    LinSys sysB(f);
    std::map<int, int> hG, hZ;
    for (int n = lo; n <= hi; ++n) {
        if (cs.c[4].rank(n) > 0 && ct.c[4].rank(n) > 0)
            hG[n] = sysB.add_unknown(ct.c[4].rank(n), cs.c[4].rank(n));
        if (cs.c[3].rank(n) > 0 && ct.c[4].rank(n - 1) > 0)
            hZ[n] = sysB.add_unknown(ct.c[4].rank(n - 1), cs.c[3].rank(n));
    }
    for (int n = lo; n <= hi; ++n) {
        if (ct.c[4].rank(n + 1) > 0 && cs.c[4].rank(n) > 0) {
            sysB.begin_equation(Matrix::zeros(f, ct.c[4].rank(n + 1), cs.c[4].rank(n)));
            if (hG.count(n)) sysB.add_left_term(hG[n], ct.c[4].d(n));
            if (hG.count(n + 1))
                sysB.add_right_term(hG[n + 1], scale(-Scalar::one(f), cs.c[4].d(n)));
        }
        if (ct.c[4].rank(n) > 0 && cs.c[3].rank(n) > 0) {
            sysB.begin_equation(Matrix::zeros(f, ct.c[4].rank(n), cs.c[3].rank(n)));
            if (hZ.count(n + 1)) sysB.add_right_term(hZ[n + 1], cs.c[3].d(n));
            if (hG.count(n))
                sysB.add_right_term(hG[n], scale(-Scalar::one(f), cs.d[3].comp(n)));
            if (hZ.count(n)) sysB.add_left_term(hZ[n], ct.c[4].d(n - 1));
        }
        if (ct.c[4].rank(n - 1) > 0 && cs.c[2].rank(n) > 0) {
            Matrix rhs = srow(vp, ct, n) * theta1.comp(n) -
                         m.phi[2][2].comp(n - 1) * srow(v, cs, n);
            sysB.begin_equation(rhs);
            if (hZ.count(n)) sysB.add_right_term(hZ[n], cs.d[2].comp(n));
            if (hG.count(n - 1)) sysB.add_right_term(hG[n - 1], srow(v, cs, n));
        }
    }
    auto solB = sysB.solve();
    if (!solB) fail(Err::Naturality, "no strict fiber-side correction exists for this map");

    const ChainComplex& cnS = u.source();
    const ChainComplex& cnT = up.source();
    ChainMap mid01 = direct_sum_map(m.phi[0][1], m.phi[1][0]);
    std::map<int, Matrix> t0comps;
    for (int n = lo; n <= hi; ++n) {
        int rows = cnT.rank(n), cols = cnS.rank(n);
        if (rows == 0 || cols == 0) continue;
        Matrix t0 = Matrix::zeros(f, rows, cols);
        Matrix a = m.phi[0][0].comp(n + 1);
        if (hA.count(n + 1)) a = a + (*solA)[hA[n + 1]];
        paste(t0, 0, 0, a);
        if (hB.count(n + 1)) paste(t0, ct.c[0].rank(n + 1), 0, (*solA)[hB[n + 1]]);
        paste(t0, ct.c[0].rank(n + 1), cs.c[0].rank(n + 1), mid01.comp(n));
        t0comps[n] = std::move(t0);
    }
    ChainMap theta0(cnS, cnT, std::move(t0comps));

    const ChainComplex& fbS = v.target();
    const ChainComplex& fbT = vp.target();
    ChainMap mid23 = direct_sum_map(m.phi[1][2], m.phi[2][1]);
    std::map<int, Matrix> t2comps;
    for (int n = lo; n <= hi; ++n) {
        int rows = fbT.rank(n), cols = fbS.rank(n);
        if (rows == 0 || cols == 0) continue;
        Matrix t2 = Matrix::zeros(f, rows, cols);
        paste(t2, 0, 0, mid23.comp(n));
        if (hZ.count(n)) paste(t2, ct.c[3].rank(n), 0, (*solB)[hZ[n]]);
        Matrix g = m.phi[2][2].comp(n - 1);
        if (hG.count(n - 1)) g = g + (*solB)[hG[n - 1]];
        paste(t2, ct.c[3].rank(n), cs.c[3].rank(n), g);
        t2comps[n] = std::move(t2);
    }
    ChainMap theta2(fbS, fbT, std::move(t2comps));

    return TriangleMap{src, tgt, theta0, theta1, theta2};
}

namespace {

// Degreewise kernel of g, with induced differential and the inclusion into
// g's source.
std::pair<ChainComplex, ChainMap> kernel_complex(const ChainMap& g) {
    const ChainComplex& a = g.source();
    const FieldSpec& f = g.field();
    if (a.max_deg() < a.min_deg()) return {a, ChainMap::identity(a)};
    int lo = a.min_deg(), hi = a.max_deg();
    std::vector<Matrix> kb;
    std::vector<int> ranks;
    for (int n = lo; n <= hi; ++n) {
        kb.push_back(kernel_basis(g.comp(n)));
        ranks.push_back(kb.back().cols());
    }
    std::vector<Matrix> diffs;
    for (int n = lo; n < hi; ++n) {
        auto d = solve_matrix(kb[n + 1 - lo], a.d(n) * kb[n - lo]);
        if (!d) fail(Err::Completion, "differential does not preserve the degreewise kernel");
        diffs.push_back(std::move(*d));
    }
    ChainComplex ker(f, lo, std::move(ranks), std::move(diffs));
    std::map<int, Matrix> comps;
    for (int n = lo; n <= hi; ++n) comps[n] = kb[n - lo];
    ChainMap inc(ker, a, std::move(comps));
    return {std::move(ker), std::move(inc)};
}

// The unique-up-to-kernel U with g o U = h, degreewise exact solve.
ChainMap solve_through(const ChainMap& g, const ChainMap& h, const char* what) {
    std::map<int, Matrix> comps;
    int lo = h.source().min_deg(), hi = h.source().max_deg();
    for (int n = lo; n <= hi; ++n) {
        if (h.source().rank(n) == 0) continue;
        auto un = solve_matrix(g.comp(n), h.comp(n));
        if (!un)
            fail(Err::Completion,
                 std::string(what) + " has no exact preimage in degree " + std::to_string(n));
        comps[n] = std::move(*un);
    }
    return ChainMap(h.source(), g.source(), std::move(comps));
}

}  // namespace

NineDiagram complete_lower_nine(const LowerNine& low) {
    auto want = [](bool ok, const char* msg) {
        if (!ok) fail(Err::Completion, std::string("complete_lower_nine: ") + msg);
    };
    want(low.dv02.source() == low.x02 && low.dv02.target() == low.x12, "dv02 endpoints");
    want(low.dh11.source() == low.x11 && low.dh11.target() == low.x12, "dh11 endpoints");
    want(low.dv11.source() == low.x11 && low.dv11.target() == low.x21, "dv11 endpoints");
    want(low.dv12.source() == low.x12 && low.dv12.target() == low.x22, "dv12 endpoints");
    want(low.dh20.source() == low.x20 && low.dh20.target() == low.x21, "dh20 endpoints");
    want(low.dh21.source() == low.x21 && low.dh21.target() == low.x22, "dh21 endpoints");
    for (const ChainMap* mp : {&low.dv02, &low.dh11, &low.dv11, &low.dv12, &low.dh20, &low.dh21})
        want(mp->is_chain_map(), "a given map is not a chain map");
    want(compose(low.dv12, low.dh11) == compose(low.dh21, low.dv11),
         "the given square does not commute");

    auto [x10, dh10] = kernel_complex(low.dh11);
    auto [x01, dv01] = kernel_complex(low.dv11);
    ChainMap dv10 = solve_through(low.dh20, compose(low.dv11, dh10), "dv10");
    auto [x00, dv00] = kernel_complex(dv10);
    ChainMap dh01 = solve_through(low.dv02, compose(low.dh11, dv01), "dh01");
    ChainMap dh00 = solve_through(dv01, compose(dh10, dv00), "dh00");

    NineDiagram n;
    n.dh[0][0] = dh00;
    n.dh[0][1] = dh01;
    n.dh[1][0] = dh10;
    n.dh[1][1] = low.dh11;
    n.dh[2][0] = low.dh20;
    n.dh[2][1] = low.dh21;
    n.dv[0][0] = dv00;
    n.dv[0][1] = dv01;
    n.dv[0][2] = low.dv02;
    n.dv[1][0] = dv10;
    n.dv[1][1] = low.dv11;
    n.dv[1][2] = low.dv12;
    n.w_row[0] = ChainMap::zero(shift(x00, 1), low.x02);
    n.w_row[1] = ChainMap::zero(shift(x10, 1), low.x12);
    n.w_row[2] = ChainMap::zero(shift(low.x20, 1), low.x22);
    n.w_col[0] = ChainMap::zero(shift(x00, 1), low.x20);
    n.w_col[1] = ChainMap::zero(shift(x01, 1), low.x21);
    n.w_col[2] = ChainMap::zero(shift(low.x02, 1), low.x22);
    n.w_ul = ChainMap::zero(shift(x00, 1), low.x11);
    n.w_lr = ChainMap::zero(shift(low.x11, 1), low.x22);

    auto viols = nine_violations(n);
    if (!viols.empty())
        fail(Err::Completion, "completion does not yield a valid diagram: " + viols.front());
    return n;
}

LowerNine restrict_lower_nine(const NineDiagram& n) {
    LowerNine low;
    low.x02 = n.x(0, 2);
    low.x11 = n.x(1, 1);
    low.x12 = n.x(1, 2);
    low.x20 = n.x(2, 0);
    low.x21 = n.x(2, 1);
    low.x22 = n.x(2, 2);
    low.dv02 = n.dv[0][2];
    low.dh11 = n.dh[1][1];
    low.dv11 = n.dv[1][1];
    low.dv12 = n.dv[1][2];
    low.dh20 = n.dh[2][0];
    low.dh21 = n.dh[2][1];
    return low;
}

NineDiagram random_ses_grid(Rng& rng, const FieldSpec& f, int min_deg, int max_deg,
                            int max_rank) {
    // Four graded pieces; the joint differential couples a piece only to
    // pieces with componentwise smaller index:
    //   [ d00  c01  c10  c11a ]
    //   [  0   d01   0   c11b ]      (block order p00, p01, p10, p11)
    //   [  0    0   d10  c11c ]
    //   [  0    0    0   d11  ]
    // c01 and c10 come from sampled two-piece extensions; the three c11
    // blocks are then a joint exact sample of the remaining d^2 = 0 blocks.
    std::array<std::array<ChainComplex, 2>, 2> p;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) p[a][b] = random_complex(rng, f, min_deg, max_deg, max_rank);
    ChainComplex e01 = random_extension(rng, p[0][0], p[0][1]);
    ChainComplex e10 = random_extension(rng, p[0][0], p[1][0]);
    auto coupling = [&](const ChainComplex& ext, const ChainComplex& base,
                        const ChainComplex& piece, int n) {
        return block(ext.d(n), 0, base.rank(n), base.rank(n + 1), piece.rank(n));
    };

    LinSys sys(f);
    std::map<int, int> ha, hb, hc;
    for (int n = min_deg - 1; n <= max_deg + 1; ++n) {
        if (p[1][1].rank(n) == 0) continue;
        if (p[0][0].rank(n + 1) > 0) ha[n] = sys.add_unknown(p[0][0].rank(n + 1), p[1][1].rank(n));
        if (p[0][1].rank(n + 1) > 0) hb[n] = sys.add_unknown(p[0][1].rank(n + 1), p[1][1].rank(n));
        if (p[1][0].rank(n + 1) > 0) hc[n] = sys.add_unknown(p[1][0].rank(n + 1), p[1][1].rank(n));
    }
    for (int n = min_deg - 2; n <= max_deg + 1; ++n) {
        int cols = p[1][1].rank(n);
        if (cols == 0) continue;
        if (p[0][1].rank(n + 2) > 0) {
            sys.begin_equation(Matrix::zeros(f, p[0][1].rank(n + 2), cols));
            if (hb.count(n)) sys.add_left_term(hb[n], p[0][1].d(n + 1));
            if (hb.count(n + 1)) sys.add_right_term(hb[n + 1], p[1][1].d(n));
        }
        if (p[1][0].rank(n + 2) > 0) {
            sys.begin_equation(Matrix::zeros(f, p[1][0].rank(n + 2), cols));
            if (hc.count(n)) sys.add_left_term(hc[n], p[1][0].d(n + 1));
            if (hc.count(n + 1)) sys.add_right_term(hc[n + 1], p[1][1].d(n));
        }
        if (p[0][0].rank(n + 2) > 0) {
            sys.begin_equation(Matrix::zeros(f, p[0][0].rank(n + 2), cols));
            if (ha.count(n)) sys.add_left_term(ha[n], p[0][0].d(n + 1));
            if (ha.count(n + 1)) sys.add_right_term(ha[n + 1], p[1][1].d(n));
            if (hb.count(n)) sys.add_left_term(hb[n], coupling(e01, p[0][0], p[0][1], n + 1));
            if (hc.count(n)) sys.add_left_term(hc[n], coupling(e10, p[0][0], p[1][0], n + 1));
        }
    }
    auto sol = sys.sample(rng);
    if (!sol) fail(Err::Construction, "random_ses_grid: coupling system inconsistent");

    const std::array<std::pair<int, int>, 4> order = {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    auto offset = [&](int a, int b, int n) {
        int off = 0;
        for (auto [aa, bb] : order) {
            if (aa == a && bb == b) return off;
            off += p[aa][bb].rank(n);
        }
        return off;
    };
    std::map<int, Matrix> bigd;
    for (int n = min_deg; n < max_deg; ++n) {
        int rows = 0, cols = 0;
        for (auto [a, b] : order) {
            rows += p[a][b].rank(n + 1);
            cols += p[a][b].rank(n);
        }
        Matrix d = Matrix::zeros(f, rows, cols);
        for (auto [a, b] : order) paste(d, offset(a, b, n + 1), offset(a, b, n), p[a][b].d(n));
        paste(d, offset(0, 0, n + 1), offset(0, 1, n), coupling(e01, p[0][0], p[0][1], n));
        paste(d, offset(0, 0, n + 1), offset(1, 0, n), coupling(e10, p[0][0], p[1][0], n));
        if (ha.count(n)) paste(d, offset(0, 0, n + 1), offset(1, 1, n), (*sol)[ha[n]]);
        if (hb.count(n)) paste(d, offset(0, 1, n + 1), offset(1, 1, n), (*sol)[hb[n]]);
        if (hc.count(n)) paste(d, offset(1, 0, n + 1), offset(1, 1, n), (*sol)[hc[n]]);
        bigd[n] = std::move(d);
    }

    // Entry (j,k) keeps the pieces with a in A_j, b in B_k for the bands
    // A_0 = {0}, A_1 = {0,1}, A_2 = {1}.
    auto in_band = [](int band, int v) { return band == 1 || v == (band == 0 ? 0 : 1); };
    auto entry_blocks = [&](int j, int k) {
        std::vector<std::pair<int, int>> L;
        for (auto [a, b] : order)
            if (in_band(j, a) && in_band(k, b)) L.push_back({a, b});
        return L;
    };
    std::array<std::array<ChainComplex, 3>, 3> xs;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            auto L = entry_blocks(j, k);
            std::vector<int> ranks;
            for (int n = min_deg; n <= max_deg; ++n) {
                int r = 0;
                for (auto [a, b] : L) r += p[a][b].rank(n);
                ranks.push_back(r);
            }
            std::vector<Matrix> diffs;
            for (int n = min_deg; n < max_deg; ++n) {
                Matrix d = Matrix::zeros(f, ranks[n + 1 - min_deg], ranks[n - min_deg]);
                int co = 0;
                for (auto [sa, sb] : L) {
                    int ro = 0;
                    for (auto [ta, tb] : L) {
                        paste(d, ro, co,
                              block(bigd[n], offset(ta, tb, n + 1), offset(sa, sb, n),
                                    p[ta][tb].rank(n + 1), p[sa][sb].rank(n)));
                        ro += p[ta][tb].rank(n + 1);
                    }
                    co += p[sa][sb].rank(n);
                }
                diffs.push_back(std::move(d));
            }
            xs[j][k] = ChainComplex(f, min_deg, std::move(ranks), std::move(diffs));
        }

    auto glue_map = [&](int js, int ks, int jt, int kt) {
        auto Ls = entry_blocks(js, ks);
        auto Lt = entry_blocks(jt, kt);
        std::map<int, Matrix> comps;
        for (int n = min_deg; n <= max_deg; ++n) {
            int rows = xs[jt][kt].rank(n), cols = xs[js][ks].rank(n);
            if (rows == 0 || cols == 0) continue;
            Matrix m = Matrix::zeros(f, rows, cols);
            int co = 0;
            for (auto [sa, sb] : Ls) {
                int ro = 0;
                for (auto [ta, tb] : Lt) {
                    if (ta == sa && tb == sb)
                        paste(m, ro, co, Matrix::identity(f, p[sa][sb].rank(n)));
                    ro += p[ta][tb].rank(n);
                }
                co += p[sa][sb].rank(n);
            }
            comps[n] = std::move(m);
        }
        return ChainMap(xs[js][ks], xs[jt][kt], std::move(comps));
    };

    NineDiagram n;
    for (int j = 0; j < 3; ++j) {
        n.dh[j][0] = glue_map(j, 0, j, 1);
        n.dh[j][1] = glue_map(j, 1, j, 2);
    }
    for (int k = 0; k < 3; ++k) {
        n.dv[0][k] = glue_map(0, k, 1, k);
        n.dv[1][k] = glue_map(1, k, 2, k);
    }
    for (int j = 0; j < 3; ++j) n.w_row[j] = ChainMap::zero(shift(xs[j][0], 1), xs[j][2]);
    for (int k = 0; k < 3; ++k) n.w_col[k] = ChainMap::zero(shift(xs[0][k], 1), xs[2][k]);
    n.w_ul = ChainMap::zero(shift(xs[0][0], 1), xs[1][1]);
    n.w_lr = ChainMap::zero(shift(xs[1][1], 1), xs[2][2]);
    return n;
}

FoldSigns fold_signs() { return FoldSigns{{1, -1, 1}, {1, -1, 1, -1}, {1, 1, 1}}; }

std::vector<FoldSigns> search_fold_signs(const std::vector<ChainComplex>& samples) {
    std::vector<FoldSigns> out;
    for (int bits = 0; bits < (1 << 10); ++bits) {
        FoldSigns s;
        auto bit = [&](int i) { return ((bits >> i) & 1) != 0 ? 1 : -1; };
        for (int i = 0; i < 3; ++i) s.u_w[i] = bit(i);
        for (int i = 0; i < 4; ++i) s.d1[i] = bit(3 + i);
        for (int i = 0; i < 3; ++i) s.v_w[i] = bit(7 + i);
        bool ok = true;
        for (const ChainComplex& x : samples) {
            for (const NineDiagram& nd : {source_nine(x), target_nine(x)}) {
                FiveTermChain ft = build_five(nd, s);
                for (int i = 0; ok && i + 1 < 4; ++i)
                    if (!compose(ft.d[i + 1], ft.d[i]).is_zero()) ok = false;
                if (!ok) break;
                ChainMap u = build_u(nd, ft, s);
                ChainMap v = build_v(nd, ft, s);
                if (!u.is_chain_map() || !v.is_chain_map() || !compose(v, u).is_zero()) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
            // Frozen unit templates over this sample's field.
            const FieldSpec& f = x.field();
            ChainComplex r = unit_complex(f);
            {
                NineDiagram nd = source_nine(r);
                FiveTermChain ft = build_five(nd, s);
                if (build_u(nd, ft, s).comp(0) != Matrix::from_rows(f, {{1}, {-1}, {1}}) ||
                    build_v(nd, ft, s).comp(0) != Matrix::from_rows(f, {{1, 1, 0}, {0, 1, 1}})) {
                    ok = false;
                    break;
                }
            }
            {
                NineDiagram nd = target_nine(r);
                FiveTermChain ft = build_five(nd, s);
                if (build_u(nd, ft, s).comp(0) !=
                        Matrix::from_rows(f, {{1, 0}, {-1, 1}, {0, -1}}) ||
                    build_v(nd, ft, s).comp(0) != Matrix::from_rows(f, {{1, 1, 1}})) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) out.push_back(s);
    }
    return out;
}

}  // namespace ninefold
