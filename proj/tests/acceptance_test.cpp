// Acceptance gate: eleven end-to-end checks, one line of output each.
// Usage: acceptance <path-to-cli-binary>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ninefold/monoidal.hpp"
#include "ninefold/selftest.hpp"

using namespace ninefold;

namespace {

std::string g_cli;
std::string g_detail;  // set by a failing criterion, printed under its line

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    FILE* pipe = popen((g_cli + " " + args + " 2>/dev/null").c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_fixture(const std::string& name, const std::string& text) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

bool matrix_matches(const Json& got, const Matrix& expected) {
    if (!got.is_array() || static_cast<int>(got.size()) != expected.rows()) return false;
    for (int r = 0; r < expected.rows(); ++r) {
        const Json& row = got[r];
        if (!row.is_array() || static_cast<int>(row.size()) != expected.cols()) return false;
        for (int c = 0; c < expected.cols(); ++c)
            if (row[c] != Json(expected.at(r, c).str())) return false;
    }
    return true;
}

// Criteria 1 and 2: the fold maps of the two rank-2 templates, through the
// CLI, compared entry by entry against the expected block matrices.
bool check_template(bool source) {
    for (const FieldSpec& f : {FieldSpec::prime(5), FieldSpec::rationals()}) {
        ChainComplex x = ChainComplex::concentrated(f, 0, 2);
        NineDiagram g = source ? source_nine(x) : target_nine(x);
        std::string file = write_fixture(source ? "acc-src-nine.json" : "acc-tgt-nine.json",
                                         serialize_document(g));
        RunResult r = run_cli("nine-triangle " + file + " --json");
        if (r.code != 0) {
            g_detail = "nine-triangle exited with " + std::to_string(r.code);
            return false;
        }
        Json rep = Json::parse(r.out);
        Matrix id = Matrix::identity(f, 2);
        Matrix neg = scale(Scalar::from_int(-1, f), id);
        Matrix eu = Matrix::zeros(f, 6, source ? 2 : 4);
        Matrix ev = Matrix::zeros(f, source ? 4 : 2, 6);
        if (source) {
            paste(eu, 0, 0, id), paste(eu, 2, 0, neg), paste(eu, 4, 0, id);
            paste(ev, 0, 0, id), paste(ev, 0, 2, id);
            paste(ev, 2, 2, id), paste(ev, 2, 4, id);
        } else {
            paste(eu, 0, 0, id), paste(eu, 2, 0, neg);
            paste(eu, 2, 2, id), paste(eu, 4, 2, neg);
            paste(ev, 0, 0, id), paste(ev, 0, 2, id), paste(ev, 0, 4, id);
        }
        const Json& uc = rep.at("u").at("components");
        const Json& vc = rep.at("v").at("components");
        if (uc.size() != 1 || vc.size() != 1 || !uc.contains("0") || !vc.contains("0")) {
            g_detail = "fold maps are not concentrated in degree 0 over " + f.str();
            return false;
        }
        if (!matrix_matches(uc.at("0"), eu) || !matrix_matches(vc.at("0"), ev)) {
            g_detail = "fold matrices differ over " + f.str() + ":\n" + r.out;
            return false;
        }
        if (rep.at("exact") != Json(true)) {
            g_detail = "associated triangle not exact over " + f.str();
            return false;
        }
    }
    return true;
}

bool check_trace_additivity() {
    for (int i = 0; i < 600; ++i) {
        const FieldSpec f = i < 500 ? FieldSpec::prime(7) : FieldSpec::rationals();
        Rng rng = Rng::substream(303, static_cast<std::uint64_t>(i));
        SplitSES e = random_split_ses(rng, f, -2, 2, 4);
        SESMap endo = random_ses_map(rng, e, e);
        TraceAdditivity t = trace_additivity(endo);
        if (!t.defect.is_zero()) {
            g_detail = "case " + std::to_string(i) + " has defect " + t.defect.str();
            return false;
        }
    }
    return true;
}

bool check_pairing_additivity() {
    for (int i = 0; i < 300; ++i) {
        const FieldSpec f = i % 2 ? FieldSpec::rationals() : FieldSpec::prime(7);
        Rng rng = Rng::substream(304, static_cast<std::uint64_t>(i));
        SplitSES ef = random_split_ses(rng, f, -1, 1, 3);
        SplitSES eg = random_split_ses(rng, f, -1, 1, 3);
        SESMap alpha = random_ses_map(rng, ef, eg);
        SESMap beta = random_ses_map(rng, eg, ef);
        Scalar d = pairing_defect(alpha, beta);
        if (!d.is_zero()) {
            g_detail = "case " + std::to_string(i) + " has defect " + d.str();
            return false;
        }
    }
    return true;
}

bool check_pipeline() {
    for (int i = 0; i < 100; ++i) {
        const FieldSpec f = i % 2 ? FieldSpec::rationals() : FieldSpec::prime(7);
        Rng rng = Rng::substream(305, static_cast<std::uint64_t>(i));
        SplitSES ef = random_split_ses(rng, f, -1, 1, 2);
        SplitSES eg = random_split_ses(rng, f, -1, 1, 2);
        SESMap alpha = random_ses_map(rng, ef, eg);
        SESMap beta = random_ses_map(rng, eg, ef);
        PipelineResult r = run_pipeline(alpha, beta);
        std::array<Scalar, 3> expected = {verdier_pairing_point(alpha.quot, beta.quot),
                                          verdier_pairing_point(alpha.total, beta.total),
                                          verdier_pairing_point(alpha.sub, beta.sub)};
        if (!r.defect.is_zero() || !r.squares_commute || !r.theta1_diagonal ||
            r.theta1_diag != expected) {
            g_detail = "case " + std::to_string(i) + " fails the pipeline contract";
            return false;
        }
    }
    return true;
}

bool check_trace_coherence() {
    for (int i = 0; i < 200; ++i) {
        const FieldSpec f = i % 2 ? FieldSpec::rationals() : FieldSpec::prime(7);
        Rng rng = Rng::substream(306, static_cast<std::uint64_t>(i));
        ChainComplex x = random_complex(rng, f, -2, 1, 3);
        ChainMap a = random_chain_map(rng, x, x);
        ChainMap b = random_chain_map(rng, x, x);
        Homotopy h;
        for (int n = x.min_deg(); n <= x.max_deg(); ++n)
            if (x.rank(n) > 0 && x.rank(n - 1) > 0)
                h.s[n] = rng.matrix(f, x.rank(n - 1), x.rank(n));
        bool ok = trace_via_duality(a) == lefschetz_trace(a) &&
                  lefschetz_trace(compose(a, b)) == lefschetz_trace(compose(b, a)) &&
                  lefschetz_trace(a + homotopy_boundary(x, x, h)) == lefschetz_trace(a);
        if (!ok) {
            g_detail = "case " + std::to_string(i) + " breaks a trace identity";
            return false;
        }
    }
    return true;
}

bool check_zigzags() {
    for (int i = 0; i < 100; ++i) {
        const FieldSpec f = i % 2 ? FieldSpec::rationals() : FieldSpec::prime(7);
        Rng rng = Rng::substream(307, static_cast<std::uint64_t>(i));
        ChainComplex x = random_complex(rng, f, -2, 2, 3);
        if (zigzag_object(x) != ChainMap::identity(x) ||
            zigzag_dual(x) != ChainMap::identity(dual_complex(x))) {
            g_detail = "case " + std::to_string(i) + " breaks a zigzag identity";
            return false;
        }
    }
    return true;
}

bool check_nine_soundness() {
    for (int i = 0; i < 200; ++i) {
        const FieldSpec f = i % 2 ? FieldSpec::rationals() : FieldSpec::prime(7);
        Rng rng = Rng::substream(308, static_cast<std::uint64_t>(i));
        NineDiagram g = random_ses_grid(rng, f, -1, 1, 2);
        FiveTermChain ft = five_term_chain(g);
        bool ok = true;
        for (int k = 0; k + 1 < 4; ++k)
            ok = ok && compose(ft.d[k + 1], ft.d[k]).is_zero();
        ok = ok && compose(nine_v(g), nine_u(g)).is_zero() &&
             is_exact(associated_triangle(g)) && is_acyclic(total_complex(ft));
        if (!ok) {
            g_detail = "grid " + std::to_string(i) + " fails a soundness check";
            return false;
        }
    }
    return true;
}

bool check_square_criterion() {
    for (int i = 0; i < 200; ++i) {
        const FieldSpec f = i % 2 ? FieldSpec::rationals() : FieldSpec::prime(7);
        bool exact = i % 4 < 2;  // half constructed exact, half perturbed
        Rng rng = Rng::substream(309, static_cast<std::uint64_t>(i));
        CommSquare sq = random_square(rng, f, -1, 1, 2, exact);
        bool folded = is_exact_square(sq);
        bool compared = is_quasi_iso(square_cone_comparison(sq));
        if (folded != compared || folded != exact) {
            g_detail = "square " + std::to_string(i) + ": folded=" +
                       std::to_string(folded) + " cone-compared=" +
                       std::to_string(compared) + " constructed=" + std::to_string(exact);
            return false;
        }
    }
    return true;
}

int brute_rank_log2(const Matrix& m) {
    // Number of independent columns over F2, via the size of the column span.
    std::vector<Matrix> span;
    std::uint64_t count = 1;
    for (std::uint64_t bits = 0; bits < (1ULL << m.cols()); ++bits) {
        Matrix v = Matrix::zeros(m.field(), m.cols(), 1);
        for (int i = 0; i < m.cols(); ++i)
            if (bits >> i & 1) v.set(i, 0, Scalar::one(m.field()));
        Matrix image = m * v;
        bool fresh = !image.is_zero();
        for (const Matrix& seen : span) fresh = fresh && image != seen;
        if (fresh) {
            span.push_back(image);
            ++count;
        }
    }
    int k = 0;
    while (count > 1) count >>= 1, ++k;
    return k;
}

bool check_homology_oracle() {
    const FieldSpec f2 = FieldSpec::prime(2);
    for (int i = 0; i < 50; ++i) {
        Rng rng = Rng::substream(310, static_cast<std::uint64_t>(i));
        ChainComplex x = random_complex(rng, f2, -2, 2, 3);
        std::map<int, int> dims = homology_dims(x);
        for (int n = x.min_deg() - 1; n <= x.max_deg() + 1; ++n) {
            int cycles = x.rank(n) - brute_rank_log2(x.d(n));
            int boundaries = brute_rank_log2(x.d(n - 1));
            int got = dims.count(n) ? dims.at(n) : 0;
            if (got != cycles - boundaries) {
                g_detail = "complex " + std::to_string(i) + " degree " + std::to_string(n) +
                           ": homology_dims says " + std::to_string(got) +
                           ", enumeration says " + std::to_string(cycles - boundaries);
                return false;
            }
        }
    }
    return true;
}

bool check_selftest_determinism() {
    RunResult a = run_cli("selftest --seed 7 --cases 50 --json");
    RunResult b = run_cli("selftest --seed 7 --cases 50 --json");
    RunResult c = run_cli("selftest --seed 7 --cases 50 --json --parallel");
    RunResult d = run_cli("selftest --seed 7 --cases 50 --json --parallel");
    if (a.code != 0 || b.code != 0 || c.code != 0 || d.code != 0) {
        g_detail = "a selftest run exited nonzero";
        return false;
    }
    if (a.out.empty() || a.out != b.out || c.out != d.out || a.out != c.out) {
        g_detail = "selftest reports differ between runs or between serial and parallel";
        return false;
    }
    return true;
}

struct Criterion {
    const char* name;
    bool (*run)();
    double budget_seconds;  // 0 = no bound
};

const Criterion kCriteria[] = {
    {"source template folds bit-exactly over F5 and Q", [] { return check_template(true); }, 1},
    {"target template folds bit-exactly over F5 and Q", [] { return check_template(false); }, 1},
    {"trace additivity: 500 F7 + 100 Q cases, defect 0", check_trace_additivity, 60},
    {"pairing additivity: 300 cases, defect 0", check_pairing_additivity, 60},
    {"pipeline: 100 cases fold to the three pairings", check_pipeline, 120},
    {"trace coherence: 200 endomorphism cases", check_trace_coherence, 0},
    {"duality zigzags: 100 complexes, strict identities", check_zigzags, 0},
    {"nine soundness: 200 grids fold and totalize", check_nine_soundness, 0},
    {"square criterion: 200 squares match the cone oracle", check_square_criterion, 0},
    {"homology: 50 F2 complexes match enumeration", check_homology_oracle, 0},
    {"selftest: byte-identical reports, serial and parallel", check_selftest_determinism, 0},
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2 || !std::filesystem::exists(argv[1])) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli-binary>\n");
        return 2;
    }
    g_cli = argv[1];

    int failures = 0;
    for (std::size_t i = 0; i < std::size(kCriteria); ++i) {
        const Criterion& c = kCriteria[i];
        g_detail.clear();
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            g_detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        if (ok && c.budget_seconds > 0 && secs > c.budget_seconds) {
            ok = false;
            g_detail = "over the " + std::to_string(static_cast<int>(c.budget_seconds)) +
                       "s budget";
        }
        std::printf("criterion %2zu: %s (%.2fs) %s\n", i + 1, ok ? "PASS" : "FAIL", secs,
                    c.name);
        if (!ok) {
            ++failures;
            if (!g_detail.empty()) std::printf("              %s\n", g_detail.c_str());
        }
    }
    std::printf("%zu/%zu criteria passed\n", std::size(kCriteria) - failures,
                std::size(kCriteria));
    return failures == 0 ? 0 : 1;
}
