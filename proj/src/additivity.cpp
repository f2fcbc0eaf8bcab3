#include "ninefold/additivity.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "ninefold/linsys.hpp"
#include "ninefold/monoidal.hpp"

namespace ninefold {

namespace {

std::pair<int, int> window_union(std::initializer_list<const ChainComplex*> xs) {
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (const ChainComplex* x : xs)
        if (x->min_deg() <= x->max_deg()) {
            lo = std::min(lo, x->min_deg());
            hi = std::max(hi, x->max_deg());
        }
    return {lo, hi};
}

}  // namespace

std::vector<std::string> ses_violations(const SplitSES& e) {
    std::vector<std::string> out;
    if (e.incl.source() != e.sub || e.incl.target() != e.total)
        out.push_back("incl does not run sub -> total");
    if (e.proj.source() != e.total || e.proj.target() != e.quot)
        out.push_back("proj does not run total -> quot");
    if (!out.empty()) return out;

    if (!e.incl.is_chain_map()) out.push_back("incl is not a chain map");
    if (!e.proj.is_chain_map()) out.push_back("proj is not a chain map");
    if (!compose(e.proj, e.incl).is_zero()) out.push_back("proj o incl is nonzero");

    auto [lo, hi] = window_union({&e.sub, &e.total, &e.quot});
    for (int n = lo; n <= hi; ++n) {
        if (e.total.rank(n) != e.sub.rank(n) + e.quot.rank(n)) {
            out.push_back("ranks do not add up in degree " + std::to_string(n));
            continue;
        }
        if (rank(e.incl.comp(n)) != e.sub.rank(n))
            out.push_back("incl is not injective in degree " + std::to_string(n));
        if (rank(e.proj.comp(n)) != e.quot.rank(n))
            out.push_back("proj is not surjective in degree " + std::to_string(n));
    }
    return out;
}

bool is_valid_ses(const SplitSES& e) { return ses_violations(e).empty(); }

void require_valid_ses(const SplitSES& e, const char* what) {
    auto v = ses_violations(e);
    if (!v.empty()) fail(Err::Validation, std::string(what) + ": " + v.front());
}

DegreeSplitting ses_splitting(const SplitSES& e, int n) {
    const FieldSpec& f = e.total.field();
    auto section = solve_matrix(e.proj.comp(n), Matrix::identity(f, e.quot.rank(n)));
    if (!section)
        fail(Err::Validation,
             "ses_splitting: proj has no section in degree " + std::to_string(n));
    Matrix complement =
        Matrix::identity(f, e.total.rank(n)) - *section * e.proj.comp(n);
    auto retraction = solve_matrix(e.incl.comp(n), complement);
    if (!retraction)
        fail(Err::Validation,
             "ses_splitting: incl has no complementary retraction in degree " +
                 std::to_string(n));
    return {std::move(*retraction), std::move(*section)};
}

std::vector<std::string> ses_map_violations(const SESMap& m) {
    std::vector<std::string> out;
    for (const auto& v : ses_violations(m.source)) out.push_back("source sequence: " + v);
    for (const auto& v : ses_violations(m.target)) out.push_back("target sequence: " + v);
    if (!out.empty()) return out;

    if (m.sub.source() != m.source.sub || m.sub.target() != m.target.sub)
        out.push_back("sub component does not run between the sub complexes");
    if (m.total.source() != m.source.total || m.total.target() != m.target.total)
        out.push_back("total component does not run between the total complexes");
    if (m.quot.source() != m.source.quot || m.quot.target() != m.target.quot)
        out.push_back("quot component does not run between the quot complexes");
    if (!out.empty()) return out;

    if (!m.sub.is_chain_map()) out.push_back("sub component is not a chain map");
    if (!m.total.is_chain_map()) out.push_back("total component is not a chain map");
    if (!m.quot.is_chain_map()) out.push_back("quot component is not a chain map");
    if (compose(m.total, m.source.incl) != compose(m.target.incl, m.sub))
        out.push_back("incl square does not commute");
    if (compose(m.target.proj, m.total) != compose(m.quot, m.source.proj))
        out.push_back("proj square does not commute");
    return out;
}

bool is_valid_ses_map(const SESMap& m) { return ses_map_violations(m).empty(); }

void require_valid_ses_map(const SESMap& m, const char* what) {
    auto v = ses_map_violations(m);
    if (!v.empty()) fail(Err::Validation, std::string(what) + ": " + v.front());
}

SplitSES random_split_ses(Rng& rng, const FieldSpec& f, int min_deg, int max_deg,
                          int max_rank) {
    SplitSES e;
    e.sub = random_complex(rng, f, min_deg, max_deg, max_rank);
    e.quot = random_complex(rng, f, min_deg, max_deg, max_rank);
    e.total = random_extension(rng, e.sub, e.quot);

    std::map<int, Matrix> incl_comps, proj_comps;
    for (int n = min_deg; n <= max_deg; ++n) {
        if (e.sub.rank(n) > 0) {
            Matrix in = Matrix::zeros(f, e.total.rank(n), e.sub.rank(n));
            paste(in, 0, 0, Matrix::identity(f, e.sub.rank(n)));
            incl_comps.emplace(n, std::move(in));
        }
        if (e.quot.rank(n) > 0) {
            Matrix pr = Matrix::zeros(f, e.quot.rank(n), e.total.rank(n));
            paste(pr, 0, e.sub.rank(n), Matrix::identity(f, e.quot.rank(n)));
            proj_comps.emplace(n, std::move(pr));
        }
    }
    e.incl = ChainMap(e.sub, e.total, std::move(incl_comps));
    e.proj = ChainMap(e.total, e.quot, std::move(proj_comps));
    return e;
}

SESMap random_ses_map(Rng& rng, const SplitSES& source, const SplitSES& target) {
    require_valid_ses(source, "random_ses_map source");
    require_valid_ses(target, "random_ses_map target");
    const FieldSpec& f = source.total.field();
    require_same_field(f, target.total.field(), "random_ses_map");

    SESMap out;
    out.source = source;
    out.target = target;
    out.sub = ChainMap::zero(source.sub, target.sub);
    out.total = ChainMap::zero(source.total, target.total);
    out.quot = ChainMap::zero(source.quot, target.quot);
    auto [lo, hi] = window_union({&source.sub, &source.total, &source.quot, &target.sub,
                                  &target.total, &target.quot});
    if (lo > hi) return out;

    std::map<int, DegreeSplitting> src_split, tgt_split;
    for (int n = lo; n <= hi; ++n) {
        src_split.emplace(n, ses_splitting(source, n));
        tgt_split.emplace(n, ses_splitting(target, n));
    }

    LinSys sys(f);
    std::map<int, int> hs, hq, hw;
    for (int n = lo; n <= hi; ++n) {
        if (target.sub.rank(n) > 0 && source.sub.rank(n) > 0)
            hs[n] = sys.add_unknown(target.sub.rank(n), source.sub.rank(n));
        if (target.quot.rank(n) > 0 && source.quot.rank(n) > 0)
            hq[n] = sys.add_unknown(target.quot.rank(n), source.quot.rank(n));
        if (target.sub.rank(n) > 0 && source.quot.rank(n) > 0)
            hw[n] = sys.add_unknown(target.sub.rank(n), source.quot.rank(n));
    }
    auto term = [&](std::map<int, int>& h, int n, const Matrix& left, const Matrix& right) {
        auto it = h.find(n);
        if (it != h.end()) sys.add_term(it->second, left, right);
    };
    Scalar minus = Scalar::from_int(-1, f);
    // Chain conditions for the sub and quot components.
    for (int n = lo - 1; n <= hi; ++n) {
        if (target.sub.rank(n + 1) > 0 && source.sub.rank(n) > 0) {
            sys.begin_equation(Matrix::zeros(f, target.sub.rank(n + 1), source.sub.rank(n)));
            term(hs, n, target.sub.d(n), Matrix::identity(f, source.sub.rank(n)));
            term(hs, n + 1, Matrix::identity(f, target.sub.rank(n + 1)),
                 scale(minus, source.sub.d(n)));
        }
        if (target.quot.rank(n + 1) > 0 && source.quot.rank(n) > 0) {
            sys.begin_equation(
                Matrix::zeros(f, target.quot.rank(n + 1), source.quot.rank(n)));
            term(hq, n, target.quot.d(n), Matrix::identity(f, source.quot.rank(n)));
            term(hq, n + 1, Matrix::identity(f, target.quot.rank(n + 1)),
                 scale(minus, source.quot.d(n)));
        }
    }
    // Chain condition for the reconstructed total component
    //   m(n) = incl' ms r + s' mq p + incl' w p   (r, p source retraction and
    // projection; incl', s' target inclusion and section).
    for (int n = lo - 1; n <= hi; ++n) {
        int rows = target.total.rank(n + 1), cols = source.total.rank(n);
        if (rows == 0 || cols == 0) continue;
        sys.begin_equation(Matrix::zeros(f, rows, cols));
        const Matrix& dT = target.total.d(n);
        const Matrix& dS = source.total.d(n);
        term(hs, n, dT * target.incl.comp(n), src_split.at(n).retraction);
        term(hq, n, dT * tgt_split.at(n).section, source.proj.comp(n));
        term(hw, n, dT * target.incl.comp(n), source.proj.comp(n));
        if (n + 1 <= hi) {
            term(hs, n + 1, scale(minus, target.incl.comp(n + 1)),
                 src_split.at(n + 1).retraction * dS);
            term(hq, n + 1, scale(minus, tgt_split.at(n + 1).section),
                 source.proj.comp(n + 1) * dS);
            term(hw, n + 1, scale(minus, target.incl.comp(n + 1)),
                 source.proj.comp(n + 1) * dS);
        }
    }

    auto sol = sys.sample(rng);
    if (!sol) fail(Err::Construction, "random_ses_map: homogeneous system inconsistent");
    auto value = [&](std::map<int, int>& h, int n, int rows, int cols) {
        auto it = h.find(n);
        return it != h.end() ? (*sol)[it->second] : Matrix::zeros(f, rows, cols);
    };
    std::map<int, Matrix> ms, mq, mt;
    for (auto& [n, u] : hs) ms.emplace(n, (*sol)[u]);
    for (auto& [n, u] : hq) mq.emplace(n, (*sol)[u]);
    for (int n = lo; n <= hi; ++n) {
        if (target.total.rank(n) == 0 || source.total.rank(n) == 0) continue;
        Matrix sub_part = value(hs, n, target.sub.rank(n), source.sub.rank(n));
        Matrix quot_part = value(hq, n, target.quot.rank(n), source.quot.rank(n));
        Matrix w_part = value(hw, n, target.sub.rank(n), source.quot.rank(n));
        Matrix m = target.incl.comp(n) * sub_part * src_split.at(n).retraction +
                   tgt_split.at(n).section * quot_part * source.proj.comp(n) +
                   target.incl.comp(n) * w_part * source.proj.comp(n);
        mt.emplace(n, std::move(m));
    }
    out.sub = ChainMap(source.sub, target.sub, std::move(ms));
    out.quot = ChainMap(source.quot, target.quot, std::move(mq));
    out.total = ChainMap(source.total, target.total, std::move(mt));
    return out;
}

TraceAdditivity trace_additivity(const SESMap& endo) {
    require_valid_ses_map(endo, "trace_additivity");
    if (!(endo.source == endo.target))
        fail(Err::Validation, "trace_additivity: not an endomorphism of one sequence");
    TraceAdditivity t;
    t.sub = lefschetz_trace(endo.sub);
    t.total = lefschetz_trace(endo.total);
    t.quot = lefschetz_trace(endo.quot);
    t.defect = t.total - t.sub - t.quot;
    return t;
}

Scalar pairing_defect(const SESMap& alpha, const SESMap& beta) {
    require_valid_ses_map(alpha, "pairing_defect alpha");
    require_valid_ses_map(beta, "pairing_defect beta");
    if (!(beta.source == alpha.target) || !(beta.target == alpha.source))
        fail(Err::Shape, "pairing_defect: beta must run opposite to alpha");
    Scalar on_sub = verdier_pairing_point(alpha.sub, beta.sub);
    Scalar on_total = verdier_pairing_point(alpha.total, beta.total);
    Scalar on_quot = verdier_pairing_point(alpha.quot, beta.quot);
    return on_sub - on_total + on_quot;
}

NineDiagram hom_grid(const SplitSES& ef, const SplitSES& eg) {
    require_valid_ses(ef, "hom_grid first sequence");
    require_valid_ses(eg, "hom_grid second sequence");
    require_same_field(ef.total.field(), eg.total.field(), "hom_grid");
    const ChainComplex* fs[3] = {&ef.sub, &ef.total, &ef.quot};
    const ChainComplex* gs[3] = {&eg.sub, &eg.total, &eg.quot};

    ChainComplex h[3][3];
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) h[j][k] = internal_hom(*fs[2 - j], *gs[k]);

    NineDiagram n;
    for (int j = 0; j < 3; ++j) {
        n.dh[j][0] = hom_post(*fs[2 - j], eg.incl);
        n.dh[j][1] = hom_post(*fs[2 - j], eg.proj);
    }
    for (int k = 0; k < 3; ++k) {
        n.dv[0][k] = hom_pre(ef.proj, *gs[k]);
        n.dv[1][k] = hom_pre(ef.incl, *gs[k]);
    }
    for (int j = 0; j < 3; ++j) n.w_row[j] = ChainMap::zero(shift(h[j][0], 1), h[j][2]);
    for (int k = 0; k < 3; ++k) n.w_col[k] = ChainMap::zero(shift(h[0][k], 1), h[2][k]);
    n.w_ul = ChainMap::zero(shift(h[0][0], 1), h[1][1]);
    n.w_lr = ChainMap::zero(shift(h[1][1], 1), h[2][2]);
    return n;
}

namespace {

// Canonical exact solution of the corner component of an evaluation or
// coevaluation nine map: a chain map sx -> tx with g o phi = 0 for every g
// in left_zero and phi o h = 0 for every h in right_zero. The system is
// homogeneous, so the canonical solution (zero) always exists; solving it
// anyway keeps the construction honest about where the component comes from.
ChainMap solved_component(const ChainComplex& sx, const ChainComplex& tx,
                          std::initializer_list<const ChainMap*> left_zero,
                          std::initializer_list<const ChainMap*> right_zero,
                          const char* what) {
    const FieldSpec& f = sx.field();
    auto [lo, hi] = window_union({&sx, &tx});
    if (lo > hi) return ChainMap::zero(sx, tx);

    LinSys sys(f);
    std::map<int, int> h;
    for (int n = lo; n <= hi; ++n)
        if (tx.rank(n) > 0 && sx.rank(n) > 0) h[n] = sys.add_unknown(tx.rank(n), sx.rank(n));
    auto left_term = [&](int n, const Matrix& l) {
        auto it = h.find(n);
        if (it != h.end()) sys.add_left_term(it->second, l);
    };
    auto right_term = [&](int n, const Matrix& r) {
        auto it = h.find(n);
        if (it != h.end()) sys.add_right_term(it->second, r);
    };
    Scalar minus = Scalar::from_int(-1, f);
    for (int n = lo - 1; n <= hi; ++n) {
        if (tx.rank(n + 1) == 0 || sx.rank(n) == 0) continue;
        sys.begin_equation(Matrix::zeros(f, tx.rank(n + 1), sx.rank(n)));
        left_term(n, tx.d(n));
        right_term(n + 1, scale(minus, sx.d(n)));
    }
    for (const ChainMap* g : left_zero)
        for (int n = lo; n <= hi; ++n) {
            if (g->target().rank(n) == 0 || sx.rank(n) == 0) continue;
            sys.begin_equation(Matrix::zeros(f, g->target().rank(n), sx.rank(n)));
            left_term(n, g->comp(n));
        }
    for (const ChainMap* g : right_zero)
        for (int n = lo; n <= hi; ++n) {
            if (tx.rank(n) == 0 || g->source().rank(n) == 0) continue;
            sys.begin_equation(Matrix::zeros(f, tx.rank(n), g->source().rank(n)));
            right_term(n, g->comp(n));
        }

    auto sol = sys.solve();
    if (!sol) fail(Err::Naturality, std::string(what) + ": corner system is inconsistent");
    std::map<int, Matrix> comps;
    for (auto& [n, u] : h) comps.emplace(n, (*sol)[u]);
    return ChainMap(sx, tx, std::move(comps));
}

}  // namespace

NineMap coev_nine(const SESMap& alpha) {
    require_valid_ses_map(alpha, "coev_nine");
    const FieldSpec& f = alpha.source.total.field();

    NineMap m;
    m.source = source_nine(unit_complex(f));
    m.target = hom_grid(alpha.source, alpha.target);
    m.phi[1][1] = hom_cycle(alpha.total);
    m.phi[0][2] = hom_cycle(alpha.quot);
    m.phi[2][0] = hom_cycle(alpha.sub);
    m.phi[1][2] = hom_cycle(compose(alpha.target.proj, alpha.total));
    m.phi[2][1] = hom_cycle(compose(alpha.target.incl, alpha.sub));
    m.phi[0][1] = ChainMap::zero(m.source.x(0, 1), m.target.x(0, 1));
    m.phi[1][0] = ChainMap::zero(m.source.x(1, 0), m.target.x(1, 0));
    m.phi[2][2] = ChainMap::zero(m.source.x(2, 2), m.target.x(2, 2));
    m.phi[0][0] = solved_component(m.source.x(0, 0), m.target.x(0, 0),
                                   {&m.target.dh[0][0], &m.target.dv[0][0]}, {},
                                   "coev_nine corner (0,0)");
    return m;
}

NineMap ev_nine(const SESMap& beta) {
    require_valid_ses_map(beta, "ev_nine");
    const SplitSES& ef = beta.target;
    const SplitSES& eg = beta.source;
    const FieldSpec& f = ef.total.field();

    NineMap m;
    m.source = hom_grid(ef, eg);
    m.target = target_nine(unit_complex(f));
    m.phi[0][2] = trace_functional(beta.quot);
    m.phi[1][1] = trace_functional(beta.total);
    m.phi[2][0] = trace_functional(beta.sub);
    m.phi[0][1] = trace_functional(compose(ef.proj, beta.total));
    m.phi[1][0] = trace_functional(compose(beta.total, eg.incl));
    m.phi[0][0] = ChainMap::zero(m.source.x(0, 0), m.target.x(0, 0));
    m.phi[1][2] = ChainMap::zero(m.source.x(1, 2), m.target.x(1, 2));
    m.phi[2][1] = ChainMap::zero(m.source.x(2, 1), m.target.x(2, 1));
    m.phi[2][2] = solved_component(m.source.x(2, 2), m.target.x(2, 2), {},
                                   {&m.source.dh[2][1], &m.source.dv[1][2]},
                                   "ev_nine corner (2,2)");
    return m;
}

PipelineResult run_pipeline(const SESMap& alpha, const SESMap& beta) {
    require_valid_ses_map(alpha, "run_pipeline alpha");
    require_valid_ses_map(beta, "run_pipeline beta");
    if (!(beta.source == alpha.target) || !(beta.target == alpha.source))
        fail(Err::Shape, "run_pipeline: beta must run opposite to alpha");

    NineMap psi = compose_nine(ev_nine(beta), coev_nine(alpha));
    TriangleMap tm = apply_nine_map(psi);

    PipelineResult r;
    r.squares_commute = triangle_map_violations(tm).empty();
    Matrix theta1 = tm.b.comp(0);  // 3x3: blocks (0,2), (1,1), (2,0) of the grid
    r.theta1_diagonal = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && !theta1.at(i, j).is_zero()) r.theta1_diagonal = false;
    r.theta1_diag = {theta1.at(0, 0), theta1.at(1, 1), theta1.at(2, 2)};
    Matrix folded = nine_v(psi.target).comp(0) * theta1 * nine_u(psi.source).comp(0);
    r.defect = folded.at(0, 0);
    return r;
}

Scalar pipeline_defect(const SESMap& alpha, const SESMap& beta) {
    PipelineResult r = run_pipeline(alpha, beta);
    if (!r.squares_commute)
        fail(Err::Naturality, "pipeline_defect: induced triangle-map squares do not commute");
    if (!r.theta1_diagonal) fail(Err::Validation, "pipeline_defect: theta1 is not diagonal");
    std::array<Scalar, 3> expected = {verdier_pairing_point(alpha.quot, beta.quot),
                                      verdier_pairing_point(alpha.total, beta.total),
                                      verdier_pairing_point(alpha.sub, beta.sub)};
    if (r.theta1_diag != expected)
        fail(Err::Validation,
             "pipeline_defect: theta1 diagonal does not match the independent pairings");
    return r.defect;
}

}  // namespace ninefold
