#include "ninefold/selftest.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>
#include <utility>

#include "ninefold/monoidal.hpp"

namespace ninefold {

namespace {

struct CaseParams {
    int max_rank;
    int min_deg;
    int max_deg;
};

struct CaseFailure {
    std::string what;
    Json doc;
};

using CaseFn = std::optional<CaseFailure> (*)(Rng&, const FieldSpec&, const CaseParams&,
                                              const SelftestHooks&);

// --- documents: wire round-trips are exact and canonical -------------------

std::optional<CaseFailure> documents_case(Rng& rng, const FieldSpec& f, const CaseParams& p,
                                          const SelftestHooks&) {
    auto stable = [](const Document& d) {
        std::string text = serialize_document(d);
        return serialize_document(parse_document(text)) == text;
    };
    ChainComplex x = random_complex(rng, f, p.min_deg, p.max_deg, p.max_rank);
    if (!stable(x)) return CaseFailure{"complex does not round-trip", complex_to_json(x)};
    ChainComplex y = random_complex(rng, f, p.min_deg, p.max_deg, p.max_rank);
    ChainMap m = random_chain_map(rng, x, y);
    if (!stable(m)) return CaseFailure{"map does not round-trip", map_to_json(m)};
    SplitSES e = random_split_ses(rng, f, p.min_deg, p.max_deg, p.max_rank);
    SESMap endo = random_ses_map(rng, e, e);
    if (!stable(endo)) return CaseFailure{"endo does not round-trip", endo_to_json(endo)};
    NineDiagram g = random_ses_grid(rng, f, p.min_deg, p.max_deg, p.max_rank);
    if (!stable(g)) return CaseFailure{"nine diagram does not round-trip", nine_to_json(g)};
    if (!stable(restrict_lower_nine(g)))
        return CaseFailure{"lower diagram does not round-trip",
                           lower_to_json(restrict_lower_nine(g))};
    return std::nullopt;
}

// --- cones: the shifted-sum model of cone and fiber ------------------------

std::optional<CaseFailure> cones_case(Rng& rng, const FieldSpec& f, const CaseParams& p,
                                      const SelftestHooks& hooks) {
    ChainComplex x = random_complex(rng, f, p.min_deg, p.max_deg, p.max_rank);
    ChainComplex y = random_complex(rng, f, p.min_deg, p.max_deg, p.max_rank);
    ChainMap fm = random_chain_map(rng, x, y);
    Json doc = map_to_json(fm);

    // Reference cone built from scratch: degree n is X^{n+1} (+) Y^n with
    // differential [[-d_X, 0], [f, d_Y]]. The hook flips the sign of the
    // d_X block, which is exactly the classic convention bug.
    Scalar sign = Scalar::from_int(hooks.flip_cone_sign ? 1 : -1, f);
    int lo = std::min(x.min_deg() - 1, y.min_deg());
    int hi = std::max(x.max_deg() - 1, y.max_deg());
    std::vector<int> ranks;
    for (int n = lo; n <= hi; ++n) ranks.push_back(x.rank(n + 1) + y.rank(n));
    std::vector<Matrix> ds;
    for (int n = lo; n < hi; ++n) {
        Matrix d = Matrix::zeros(f, x.rank(n + 2) + y.rank(n + 1), x.rank(n + 1) + y.rank(n));
        paste(d, 0, 0, scale(sign, x.d(n + 1)));
        paste(d, x.rank(n + 2), 0, fm.comp(n + 1));
        paste(d, x.rank(n + 2), x.rank(n + 1), y.d(n));
        ds.push_back(std::move(d));
    }
    try {
        ChainComplex reference(f, lo, std::move(ranks), std::move(ds));
        if (reference != cone(fm))
            return CaseFailure{"cone differs from the shifted-sum reference", std::move(doc)};
    } catch (const Error& e) {
        return CaseFailure{std::string("reference cone is not a complex: ") + e.what(),
                           std::move(doc)};
    }
    if (!is_exact(canonical_triangle(fm)))
        return CaseFailure{"canonical triangle of a map is not exact", std::move(doc)};
    if (fiber(fm) != shift(cone(fm), -1))
        return CaseFailure{"fiber is not the shifted cone", std::move(doc)};
    return std::nullopt;
}

// --- duality: zigzag identities hold strictly ------------------------------

std::optional<CaseFailure> duality_case(Rng& rng, const FieldSpec& f, const CaseParams& p,
                                        const SelftestHooks&) {
    ChainComplex x = random_complex(rng, f, p.min_deg, p.max_deg, p.max_rank);
    if (zigzag_object(x) != ChainMap::identity(x))
        return CaseFailure{"object zigzag is not the identity", complex_to_json(x)};
    if (zigzag_dual(x) != ChainMap::identity(dual_complex(x)))
        return CaseFailure{"dual zigzag is not the identity", complex_to_json(x)};
    return std::nullopt;
}

// --- traces: categorical trace coherence ------------------------------------

std::optional<CaseFailure> traces_case(Rng& rng, const FieldSpec& f, const CaseParams& p,
                                       const SelftestHooks&) {
    ChainComplex x = random_complex(rng, f, p.min_deg, p.max_deg, p.max_rank);
    ChainMap a = random_chain_map(rng, x, x);
    ChainMap b = random_chain_map(rng, x, x);
    Json doc = map_to_json(a);
    if (trace_via_duality(a) != lefschetz_trace(a))
        return CaseFailure{"categorical trace differs from the Lefschetz trace",
                           std::move(doc)};
    if (lefschetz_trace(compose(a, b)) != lefschetz_trace(compose(b, a)))
        return CaseFailure{"trace is not cyclic", std::move(doc)};
    Homotopy h;
    for (int n = x.min_deg(); n <= x.max_deg(); ++n)
        if (x.rank(n) > 0 && x.rank(n - 1) > 0)
            h.s[n] = rng.matrix(f, x.rank(n - 1), x.rank(n));
    ChainMap moved = a + homotopy_boundary(x, x, h);
    if (lefschetz_trace(moved) != lefschetz_trace(a))
        return CaseFailure{"trace moves under a homotopy boundary", std::move(doc)};
    return std::nullopt;
}

// --- homology: rank bookkeeping against brute-force enumeration over F2 ----

int log2_exact(std::uint64_t count) {
    int k = 0;
    while (count > 1) {
        count >>= 1;
        ++k;
    }
    return k;
}

std::optional<CaseFailure> homology_case(Rng& rng, const FieldSpec&, const CaseParams& p,
                                         const SelftestHooks&) {
    // The enumerative oracle walks all of F2^rank, so this suite pins the
    // field regardless of the requested one.
    FieldSpec f2 = FieldSpec::prime(2);
    ChainComplex x = random_complex(rng, f2, p.min_deg, p.max_deg, p.max_rank);
    std::map<int, int> dims = homology_dims(x);
    for (int n = x.min_deg() - 1; n <= x.max_deg() + 1; ++n) {
        const Matrix out = x.d(n);
        std::uint64_t cycles = 0;
        for (std::uint64_t bits = 0; bits < (1ULL << x.rank(n)); ++bits) {
            Matrix v = Matrix::zeros(f2, x.rank(n), 1);
            for (int i = 0; i < x.rank(n); ++i)
                if (bits >> i & 1) v.set(i, 0, Scalar::one(f2));
            if ((out * v).is_zero()) ++cycles;
        }
        const Matrix in = x.d(n - 1);
        std::set<std::string> image;
        for (std::uint64_t bits = 0; bits < (1ULL << x.rank(n - 1)); ++bits) {
            Matrix v = Matrix::zeros(f2, x.rank(n - 1), 1);
            for (int i = 0; i < x.rank(n - 1); ++i)
                if (bits >> i & 1) v.set(i, 0, Scalar::one(f2));
            Matrix b = in * v;
            std::string key;
            for (int i = 0; i < b.rows(); ++i) key += b.at(i, 0).is_zero() ? '0' : '1';
            image.insert(std::move(key));
        }
        int expected = log2_exact(cycles) - log2_exact(image.size());
        int got = dims.count(n) ? dims.at(n) : 0;
        if (got != expected)
            return CaseFailure{"homology dimension in degree " + std::to_string(n) +
                                   " is " + std::to_string(got) + ", enumeration says " +
                                   std::to_string(expected),
                               complex_to_json(x)};
    }
    return std::nullopt;
}

// --- squares: fold-based exactness against the cone comparison -------------

std::optional<CaseFailure> squares_case(Rng& rng, const FieldSpec& f, const CaseParams& p,
                                        const SelftestHooks&) {
    bool exact = rng.coin();
    CommSquare sq = random_square(rng, f, p.min_deg, p.max_deg, p.max_rank, exact);
    bool folded = is_exact_square(sq);
    bool compared = is_quasi_iso(square_cone_comparison(sq));
    if (folded != compared)
        return CaseFailure{"folded-triangle exactness disagrees with the cone comparison",
                           square_to_json(sq)};
    if (folded != exact)
        return CaseFailure{exact ? "exactly constructed square reported inexact"
                                 : "perturbed square reported exact",
                           square_to_json(sq)};
    return std::nullopt;
}

// --- grids: strict short-exact-sequence diagrams fold soundly --------------

std::optional<CaseFailure> grids_case(Rng& rng, const FieldSpec& f, const CaseParams& p,
                                      const SelftestHooks&) {
    NineDiagram g = random_ses_grid(rng, f, p.min_deg, p.max_deg, p.max_rank);
    FiveTermChain ft = five_term_chain(g);
    for (int i = 0; i + 1 < 4; ++i)
        if (!compose(ft.d[i + 1], ft.d[i]).is_zero())
            return CaseFailure{"five-term chain composite " + std::to_string(i) +
                                   " is nonzero",
                               nine_to_json(g)};
    if (!compose(nine_v(g), nine_u(g)).is_zero())
        return CaseFailure{"v o u is nonzero", nine_to_json(g)};
    if (!is_exact(associated_triangle(g)))
        return CaseFailure{"associated triangle is not exact", nine_to_json(g)};
    if (!is_acyclic(total_complex(ft)))
        return CaseFailure{"total complex is not acyclic", nine_to_json(g)};
    return std::nullopt;
}

// --- additivity, pairing, pipeline ------------------------------------------

std::optional<CaseFailure> additivity_case(Rng& rng, const FieldSpec& f, const CaseParams& p,
                                           const SelftestHooks&) {
    SplitSES e = random_split_ses(rng, f, p.min_deg, p.max_deg, p.max_rank);
    SESMap endo = random_ses_map(rng, e, e);
    TraceAdditivity t = trace_additivity(endo);
    if (!t.defect.is_zero())
        return CaseFailure{"trace defect " + t.defect.str() + " is nonzero",
                           endo_to_json(endo)};
    return std::nullopt;
}

Json pair_doc(const SESMap& alpha, const SESMap& beta) {
    Json j = Json::object();
    j["E_F"] = ses_to_json(alpha.source);
    j["E_G"] = ses_to_json(alpha.target);
    j["alpha_sub"] = map_to_json(alpha.sub);
    j["alpha_total"] = map_to_json(alpha.total);
    j["alpha_quot"] = map_to_json(alpha.quot);
    j["beta_sub"] = map_to_json(beta.sub);
    j["beta_total"] = map_to_json(beta.total);
    j["beta_quot"] = map_to_json(beta.quot);
    return j;
}

std::optional<CaseFailure> pairing_case(Rng& rng, const FieldSpec& f, const CaseParams& p,
                                        const SelftestHooks&) {
    SplitSES ef = random_split_ses(rng, f, p.min_deg, p.max_deg, p.max_rank);
    SplitSES eg = random_split_ses(rng, f, p.min_deg, p.max_deg, p.max_rank);
    SESMap alpha = random_ses_map(rng, ef, eg);
    SESMap beta = random_ses_map(rng, eg, ef);
    Scalar d = pairing_defect(alpha, beta);
    if (!d.is_zero())
        return CaseFailure{"pairing defect " + d.str() + " is nonzero",
                           pair_doc(alpha, beta)};
    if (verdier_pairing_point(alpha.total, beta.total) !=
        lefschetz_trace(compose(beta.total, alpha.total)))
        return CaseFailure{"pairing differs from the trace of the composite",
                           pair_doc(alpha, beta)};
    return std::nullopt;
}

std::optional<CaseFailure> pipeline_case(Rng& rng, const FieldSpec& f, const CaseParams& p,
                                         const SelftestHooks&) {
    SplitSES ef = random_split_ses(rng, f, p.min_deg, p.max_deg, p.max_rank);
    SplitSES eg = random_split_ses(rng, f, p.min_deg, p.max_deg, p.max_rank);
    SESMap alpha = random_ses_map(rng, ef, eg);
    SESMap beta = random_ses_map(rng, eg, ef);
    PipelineResult r = run_pipeline(alpha, beta);
    if (!r.squares_commute)
        return CaseFailure{"induced triangle-map squares do not commute",
                           pair_doc(alpha, beta)};
    if (!r.theta1_diagonal)
        return CaseFailure{"theta1 is not diagonal", pair_doc(alpha, beta)};
    std::array<Scalar, 3> expected = {verdier_pairing_point(alpha.quot, beta.quot),
                                      verdier_pairing_point(alpha.total, beta.total),
                                      verdier_pairing_point(alpha.sub, beta.sub)};
    if (r.theta1_diag != expected)
        return CaseFailure{"theta1 diagonal disagrees with the independent pairings",
                           pair_doc(alpha, beta)};
    if (!r.defect.is_zero())
        return CaseFailure{"pipeline defect " + r.defect.str() + " is nonzero",
                           pair_doc(alpha, beta)};
    return std::nullopt;
}

// --- harness -----------------------------------------------------------------

struct Suite {
    const char* name;
    CaseFn run;
    CaseParams params;
};

const Suite kSuites[] = {
    {"documents", documents_case, {3, -1, 1}},
    {"cones", cones_case, {3, -1, 1}},
    {"duality", duality_case, {2, -1, 1}},
    {"traces", traces_case, {3, -2, 1}},
    {"homology", homology_case, {3, -2, 2}},
    {"squares", squares_case, {2, -1, 1}},
    {"grids", grids_case, {2, -1, 1}},
    {"additivity", additivity_case, {3, -1, 1}},
    {"pairing", pairing_case, {2, -1, 1}},
    {"pipeline", pipeline_case, {2, -1, 1}},
};

std::optional<CaseFailure> guarded(CaseFn run, Rng& rng, const FieldSpec& f,
                                   const CaseParams& p, const SelftestHooks& hooks) {
    try {
        return run(rng, f, p, hooks);
    } catch (const Error& e) {
        return CaseFailure{std::string("error: ") + e.what(), Json(nullptr)};
    }
}

// Deterministic substream key: suite index in the high bits, case (or shrink
// attempt) in the low bits, so no two draws in one run share a stream.
std::uint64_t stream_key(std::size_t suite, std::uint64_t index) {
    return (static_cast<std::uint64_t>(suite) << 40) | index;
}

// Retry a failing suite on the ascending parameter grid and keep the first
// (hence smallest) failure found; fall back to the original otherwise.
CaseFailure shrink(const Suite& suite, std::size_t suite_idx, const CaseParams& params,
                   std::uint64_t seed, const FieldSpec& f, const SelftestHooks& hooks,
                   CaseFailure original) {
    std::uint64_t attempt_index = 1u << 20;  // clear of the regular case indices
    for (int rank = 1; rank <= params.max_rank; ++rank)
        for (int width = 0; width <= params.max_deg - params.min_deg; ++width)
            for (int attempt = 0; attempt < 4; ++attempt) {
                Rng rng = Rng::substream(seed, stream_key(suite_idx, attempt_index++));
                CaseParams p{rank, params.min_deg, params.min_deg + width};
                if (auto smaller = guarded(suite.run, rng, f, p, hooks)) return *smaller;
            }
    return original;
}

SuiteResult execute_suite(std::size_t si, const CaseParams& params, std::uint64_t seed,
                          int cases, const FieldSpec& field, int threads,
                          const SelftestHooks& hooks) {
    const Suite& suite = kSuites[si];
    std::vector<std::optional<CaseFailure>> slots(cases);
    auto run_case = [&](int i) {
        Rng rng = Rng::substream(seed, stream_key(si, static_cast<std::uint64_t>(i)));
        slots[i] = guarded(suite.run, rng, field, params, hooks);
    };
    int workers = std::min(threads, cases);
    if (workers > 1) {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < cases; i = next.fetch_add(1))
                    run_case(i);
            });
        for (auto& t : pool) t.join();
    } else {
        for (int i = 0; i < cases; ++i) run_case(i);
    }

    SuiteResult result;
    result.name = suite.name;
    result.cases = cases;
    result.passed = static_cast<int>(
        std::count_if(slots.begin(), slots.end(), [](const auto& s) { return !s; }));
    for (int i = 0; i < cases; ++i)
        if (slots[i]) {
            CaseFailure minimized = shrink(suite, si, params, seed, field, hooks, *slots[i]);
            result.failure = minimized.what;
            result.counterexample = std::move(minimized.doc);
            break;
        }
    return result;
}

}  // namespace

bool SelftestReport::all_passed() const {
    return std::all_of(suites.begin(), suites.end(),
                       [](const SuiteResult& s) { return s.ok(); });
}

SelftestReport run_selftest(std::uint64_t seed, int cases, const FieldSpec& field,
                            int threads, const SelftestHooks& hooks) {
    if (cases < 1) fail(Err::Domain, "selftest needs at least one case");
    SelftestReport report;
    report.seed = seed;
    report.cases = cases;
    report.field = field;

    for (std::size_t si = 0; si < std::size(kSuites); ++si)
        report.suites.push_back(
            execute_suite(si, kSuites[si].params, seed, cases, field, threads, hooks));
    return report;
}

SuiteResult run_property_suite(const std::string& suite, std::uint64_t seed, int cases,
                               const FieldSpec& field, int max_rank, int min_deg,
                               int max_deg, int threads) {
    if (cases < 1) fail(Err::Domain, "property run needs at least one case");
    if (max_rank < 1) fail(Err::Domain, "property run needs max rank >= 1");
    if (min_deg > max_deg) fail(Err::Domain, "property run needs a nonempty degree window");
    for (std::size_t si = 0; si < std::size(kSuites); ++si)
        if (suite == kSuites[si].name)
            return execute_suite(si, CaseParams{max_rank, min_deg, max_deg}, seed, cases,
                                 field, threads, SelftestHooks{});
    fail(Err::Domain, "unknown property suite '" + suite + "'");
}

Json selftest_report_to_json(const SelftestReport& r) {
    Json j = Json::object();
    j["type"] = "selftest-report";
    j["seed"] = r.seed;
    j["cases"] = r.cases;
    j["field"] = r.field.str();
    j["status"] = r.all_passed() ? "pass" : "fail";
    Json suites = Json::array();
    for (const SuiteResult& s : r.suites) {
        Json row = Json::object();
        row["name"] = s.name;
        row["cases"] = s.cases;
        row["passed"] = s.passed;
        if (!s.ok()) {
            row["failure"] = s.failure;
            row["counterexample"] = s.counterexample ? *s.counterexample : Json(nullptr);
        }
        suites.push_back(std::move(row));
    }
    j["suites"] = std::move(suites);
    return j;
}

}  // namespace ninefold
