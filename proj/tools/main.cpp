// ninefold — exact-arithmetic toolkit for bounded chain complexes: traces,
// exact triangles, nine diagrams, and seeded additivity property runs.
//
// Exit codes: 0 success, 1 validation failure, 2 property violation,
// 3 parse/usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "ninefold/monoidal.hpp"
#include "ninefold/selftest.hpp"

using namespace ninefold;

namespace {

struct Output {
    bool json = false;
    std::string path;  // empty -> stdout
};

void emit(const Output& out, const std::string& text) {
    if (out.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) fail(Err::Validation, "cannot open '" + out.path + "' for writing");
    f << text;
}

void emit_json(const Output& out, const Json& j) { emit(out, j.dump(2) + "\n"); }

Document load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(Err::Parse, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_document(ss.str());
}

std::string matrix_lines(const Matrix& m, const std::string& indent) {
    std::string out;
    for (int r = 0; r < m.rows(); ++r) {
        out += indent + "[";
        for (int c = 0; c < m.cols(); ++c) {
            if (c) out += ' ';
            out += m.at(r, c).str();
        }
        out += "]\n";
    }
    return out;
}

std::string map_lines(const ChainMap& f, const std::string& label) {
    std::string out = label + ":\n";
    bool any = false;
    int lo = std::min(f.source().min_deg(), f.target().min_deg());
    int hi = std::max(f.source().max_deg(), f.target().max_deg());
    for (int n = lo; n <= hi; ++n) {
        Matrix c = f.comp(n);
        if (c.rows() == 0 || c.cols() == 0 || c.is_zero()) continue;
        out += "  degree " + std::to_string(n) + ":\n" + matrix_lines(c, "    ");
        any = true;
    }
    if (!any) out += "  zero map\n";
    return out;
}

// What `validate` checks beyond what parsing already enforced: the defining
// law of each kind (chain rule, exactness, grid and sequence axioms).
// Complexes, lower diagrams, and jobs are fully checked by their parsers.
std::vector<std::string> document_violations(const Document& d) {
    if (auto* m = std::get_if<ChainMap>(&d)) {
        if (!m->is_chain_map())
            return {"map does not commute with the differentials"};
    } else if (auto* t = std::get_if<Triangle>(&d)) {
        if (!is_exact(*t)) return {"triangle is not exact"};
    } else if (auto* s = std::get_if<CommSquare>(&d)) {
        if (!is_exact_square(*s)) return {"square is not exact"};
    } else if (auto* n = std::get_if<NineDiagram>(&d)) {
        return nine_violations(*n);
    } else if (auto* e = std::get_if<SplitSES>(&d)) {
        return ses_violations(*e);
    } else if (auto* em = std::get_if<SESMap>(&d)) {
        return ses_map_violations(*em);
    }
    return {};
}

int report_violations(const char* kind, const std::vector<std::string>& violations,
                      const Output& out) {
    if (out.json) {
        Json j = Json::object();
        j["type"] = "validation-report";
        j["kind"] = kind;
        j["valid"] = violations.empty();
        j["violations"] = violations;
        emit_json(out, j);
    } else if (violations.empty()) {
        emit(out, std::string("valid ") + kind + "\n");
    } else {
        std::string text = std::string("invalid ") + kind + ":\n";
        for (const std::string& msg : violations) text += "  - " + msg + "\n";
        emit(out, text);
    }
    return violations.empty() ? 0 : 1;
}

int cmd_validate(const std::string& path, const Output& out) {
    Document d = load(path);
    return report_violations(document_kind(d), document_violations(d), out);
}

int cmd_homology(const std::string& path, const Output& out) {
    Document d = load(path);
    auto* x = std::get_if<ChainComplex>(&d);
    if (!x)
        fail(Err::Validation,
             std::string("homology expects a complex document, got ") + document_kind(d));
    std::map<int, int> dims = homology_dims(*x);
    Scalar chi = euler_characteristic(*x);
    if (out.json) {
        Json j = Json::object();
        j["type"] = "homology-report";
        j["field"] = x->field().str();
        Json dj = Json::object();
        for (auto& [deg, dim] : dims) dj[std::to_string(deg)] = dim;
        j["dims"] = std::move(dj);
        j["euler"] = chi.str();
        emit_json(out, j);
    } else {
        std::string text;
        for (auto& [deg, dim] : dims)
            text += "H^" + std::to_string(deg) + ": " + std::to_string(dim) + "\n";
        text += "euler: " + chi.str() + "\n";
        emit(out, text);
    }
    return 0;
}

int cmd_trace(const std::string& path, const Output& out) {
    Document d = load(path);
    if (auto* m = std::get_if<ChainMap>(&d)) {
        if (m->source() != m->target())
            fail(Err::Validation, "trace needs an endomorphism: source and target differ");
        Scalar tr = lefschetz_trace(*m);
        if (out.json) {
            Json j = Json::object();
            j["type"] = "trace-report";
            j["field"] = m->source().field().str();
            j["trace"] = tr.str();
            emit_json(out, j);
        } else {
            emit(out, tr.str() + "\n");
        }
        return 0;
    }
    if (auto* em = std::get_if<SESMap>(&d)) {
        TraceAdditivity t = trace_additivity(*em);
        if (out.json) {
            Json j = Json::object();
            j["type"] = "trace-report";
            j["field"] = em->total.source().field().str();
            j["sub"] = t.sub.str();
            j["total"] = t.total.str();
            j["quot"] = t.quot.str();
            j["defect"] = t.defect.str();
            emit_json(out, j);
        } else {
            emit(out, t.total.str() + "\n");
        }
        return t.defect.is_zero() ? 0 : 2;
    }
    fail(Err::Validation,
         std::string("trace expects a map or endo document, got ") + document_kind(d));
}

int cmd_fold(const std::string& path, const Output& out) {
    Document d = load(path);
    auto* s = std::get_if<CommSquare>(&d);
    if (!s)
        fail(Err::Validation,
             std::string("fold expects a square document, got ") + document_kind(d));
    Triangle t = fold_square(*s);
    if (out.json) {
        emit_json(out, triangle_to_json(t));
    } else {
        emit(out, std::string("folded triangle: ") +
                      (is_exact(t) ? "exact" : "not exact") + "\n");
    }
    return 0;
}

int cmd_nine_validate(const std::string& path, const Output& out) {
    Document d = load(path);
    auto* n = std::get_if<NineDiagram>(&d);
    if (!n)
        fail(Err::Validation,
             std::string("nine-validate expects a nine document, got ") + document_kind(d));
    return report_violations("nine", nine_violations(*n), out);
}

int cmd_nine_triangle(const std::string& path, const Output& out) {
    Document d = load(path);
    auto* n = std::get_if<NineDiagram>(&d);
    if (!n)
        fail(Err::Validation,
             std::string("nine-triangle expects a nine document, got ") + document_kind(d));
    require_valid_nine(*n, "nine-triangle");
    ChainMap u = nine_u(*n);
    ChainMap v = nine_v(*n);
    bool exact = is_exact(associated_triangle(*n));
    if (out.json) {
        Json j = Json::object();
        j["type"] = "nine-triangle-report";
        j["field"] = n->field().str();
        j["u"] = map_to_json(u);
        j["v"] = map_to_json(v);
        j["exact"] = exact;
        emit_json(out, j);
    } else {
        std::string text = map_lines(u, "first map (u)") + map_lines(v, "second map (v)");
        text += std::string("triangle: ") + (exact ? "exact" : "not exact") + "\n";
        emit(out, text);
    }
    return exact ? 0 : 2;
}

int cmd_lower_complete(const std::string& path, const Output& out) {
    Document d = load(path);
    auto* l = std::get_if<LowerNine>(&d);
    if (!l)
        fail(Err::Validation,
             std::string("lower-complete expects a lower nine document, got ") +
                 document_kind(d));
    NineDiagram full = complete_lower_nine(*l);
    if (out.json) {
        emit_json(out, nine_to_json(full));
    } else {
        std::string text = "completed nine diagram:\n";
        for (int j = 0; j < 3; ++j) {
            text += " ";
            for (int k = 0; k < 3; ++k) {
                const ChainComplex& x = full.x(j, k);
                text += "  [" + std::to_string(x.min_deg()) + "," +
                        std::to_string(x.max_deg()) + "]";
                for (int deg = x.min_deg(); deg <= x.max_deg(); ++deg)
                    text += (deg == x.min_deg() ? " " : "/") + std::to_string(x.rank(deg));
            }
            text += "\n";
        }
        emit(out, text);
    }
    return 0;
}

int run_property(const std::string& suite, std::uint64_t seed, int cases,
                 const FieldSpec& field, int max_rank, int wmin, int wmax, int threads,
                 const Output& out) {
    SuiteResult r = run_property_suite(suite, seed, cases, field, max_rank, wmin, wmax,
                                       threads);
    if (out.json) {
        Json j = Json::object();
        j["type"] = "property-report";
        j["suite"] = suite;
        j["field"] = field.str();
        j["seed"] = seed;
        j["cases"] = cases;
        j["max_rank"] = max_rank;
        Json w = Json::object();
        w["min"] = wmin;
        w["max"] = wmax;
        j["window"] = std::move(w);
        j["status"] = r.ok() ? "pass" : "fail";
        j["passed"] = r.passed;
        if (!r.ok()) {
            j["failure"] = r.failure;
            j["counterexample"] = r.counterexample ? *r.counterexample : Json(nullptr);
        }
        emit_json(out, j);
    } else {
        std::string text = suite + ": " + std::to_string(r.passed) + "/" +
                           std::to_string(cases) + " cases passed (field " + field.str() +
                           ", seed " + std::to_string(seed) + ", max rank " +
                           std::to_string(max_rank) + ", window [" + std::to_string(wmin) +
                           "," + std::to_string(wmax) + "])\n";
        if (!r.ok()) {
            text += "failure: " + r.failure + "\n";
            if (r.counterexample && !r.counterexample->is_null())
                text += "counterexample:\n" + r.counterexample->dump(2) + "\n";
        }
        emit(out, text);
    }
    return r.ok() ? 0 : 2;
}

int cmd_selftest(std::uint64_t seed, int cases, const FieldSpec& field, int threads,
                 const Output& out) {
    SelftestReport r = run_selftest(seed, cases, field, threads);
    if (out.json) {
        emit_json(out, selftest_report_to_json(r));
    } else {
        std::string text;
        for (const SuiteResult& s : r.suites) {
            text += s.name;
            text.append(s.name.size() < 12 ? 12 - s.name.size() : 1, ' ');
            text += std::to_string(s.passed) + "/" + std::to_string(s.cases) + "\n";
            if (!s.ok()) {
                text += "  failure: " + s.failure + "\n";
                if (s.counterexample && !s.counterexample->is_null())
                    text += "  counterexample:\n" + s.counterexample->dump(2) + "\n";
            }
        }
        text += std::string("status: ") + (r.all_passed() ? "pass" : "fail") + "\n";
        emit(out, text);
    }
    return r.all_passed() ? 0 : 2;
}

// The two fold templates on a rank-2 object in degree 0, over F5 and Q, with
// the expected block matrices checked entry by entry.
int cmd_examples(const Output& out) {
    bool all = true;
    std::string text;
    Json checks = Json::array();
    for (const FieldSpec& f : {FieldSpec::prime(5), FieldSpec::rationals()}) {
        ChainComplex x = ChainComplex::concentrated(f, 0, 2);
        Matrix id = Matrix::identity(f, 2);
        Matrix neg = scale(Scalar::from_int(-1, f), id);
        for (int which = 0; which < 2; ++which) {
            bool src = which == 0;
            NineDiagram g = src ? source_nine(x) : target_nine(x);
            Matrix eu = Matrix::zeros(f, 6, src ? 2 : 4);
            Matrix ev = Matrix::zeros(f, src ? 4 : 2, 6);
            if (src) {
                // u = (id, -id, id) stacked; v = [[id, id, 0], [0, id, id]].
                paste(eu, 0, 0, id), paste(eu, 2, 0, neg), paste(eu, 4, 0, id);
                paste(ev, 0, 0, id), paste(ev, 0, 2, id);
                paste(ev, 2, 2, id), paste(ev, 2, 4, id);
            } else {
                // u columns (id, -id, 0) and (0, id, -id); v = (id, id, id).
                paste(eu, 0, 0, id), paste(eu, 2, 0, neg);
                paste(eu, 2, 2, id), paste(eu, 4, 2, neg);
                paste(ev, 0, 0, id), paste(ev, 0, 2, id), paste(ev, 0, 4, id);
            }
            ChainMap u = nine_u(g);
            ChainMap v = nine_v(g);
            bool exact = is_exact(associated_triangle(g));
            bool pass = u.comp(0) == eu && v.comp(0) == ev && exact;
            all = all && pass;
            const char* name = src ? "source-fold" : "target-fold";
            if (out.json) {
                Json c = Json::object();
                c["name"] = name;
                c["field"] = f.str();
                c["u"] = map_to_json(u);
                c["v"] = map_to_json(v);
                c["exact"] = exact;
                c["pass"] = pass;
                checks.push_back(std::move(c));
            } else {
                text += std::string(name) + " over " + f.str() +
                        " (rank-2 object in degree 0)\n";
                text += map_lines(u, "first map (u)");
                text += map_lines(v, "second map (v)");
                text += std::string("triangle: ") + (exact ? "exact" : "not exact") + "\n";
                text += pass ? "PASS\n\n" : "FAIL\n\n";
            }
        }
    }
    if (out.json) {
        Json j = Json::object();
        j["type"] = "examples-report";
        j["status"] = all ? "pass" : "fail";
        j["checks"] = std::move(checks);
        emit_json(out, j);
    } else {
        text += std::string(all ? "all checks passed" : "some checks FAILED") + "\n";
        emit(out, text);
    }
    return all ? 0 : 2;
}

// A bad --field value is a usage problem, whatever the library calls it.
FieldSpec parse_field_flag(const std::string& text) {
    try {
        return FieldSpec::parse(text);
    } catch (const Error& e) {
        fail(Err::Parse, e.what());
    }
}

std::pair<int, int> parse_window(const std::string& text) {
    auto bad = [&] [[noreturn]] {
        fail(Err::Parse, "window must look like <min>:<max>, got '" + text + "'");
    };
    std::size_t colon = text.find(':');
    if (colon == std::string::npos) bad();
    int lo = 0, hi = 0;
    try {
        std::size_t used = 0;
        lo = std::stoi(text.substr(0, colon), &used);
        if (used != colon) bad();
        hi = std::stoi(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) bad();
    } catch (const std::logic_error&) {
        bad();
    }
    if (lo > hi) fail(Err::Parse, "window '" + text + "' is empty");
    return {lo, hi};
}

int worker_count(bool parallel) {
    if (!parallel) return 1;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 4 : static_cast<int>(std::min(hc, 8u));
}

struct RunFlags {
    std::string field = "Q";
    std::uint64_t seed = 1;
    int cases = 100;
    int max_rank = 3;
    std::string window = "-1:1";
    bool parallel = false;
};

void add_run_flags(CLI::App* sub, RunFlags& r, bool with_shape) {
    sub->add_option("--field", r.field, "coefficient field: Q or F<p>")
        ->capture_default_str();
    sub->add_option("--seed", r.seed, "base seed for the case substreams")
        ->capture_default_str();
    sub->add_option("--cases", r.cases, "number of random cases")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    if (with_shape) {
        sub->add_option("--max-rank", r.max_rank, "largest per-degree rank drawn")
            ->check(CLI::Range(1, 64))
            ->capture_default_str();
        sub->add_option("--window", r.window, "degree window as <min>:<max>")
            ->capture_default_str();
    }
    sub->add_flag("--parallel", r.parallel,
                  "run cases concurrently (reports stay byte-identical)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ninefold: exact-arithmetic traces, exact triangles, and nine-diagram\n"
        "additivity checks for bounded chain complexes over Q and F_p"};
    app.require_subcommand(1);

    bool json = false;
    std::string out_path;
    app.add_flag("--json", json, "emit machine-readable JSON reports");
    app.add_option("--out", out_path, "write the report to this file instead of stdout");

    std::string file;
    auto file_cmd = [&](const char* name, const char* desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("file", file, "input document")->required();
        sub->fallthrough();
        return sub;
    };
    CLI::App* c_validate = file_cmd("validate", "check a document's defining laws");
    CLI::App* c_homology = file_cmd("homology", "homology dimensions and Euler number");
    CLI::App* c_trace = file_cmd("trace", "trace of an endomorphism (map or endo)");
    CLI::App* c_fold = file_cmd("fold", "fold a square into its triangle");
    CLI::App* c_nine_validate = file_cmd("nine-validate", "list nine-diagram violations");
    CLI::App* c_nine_triangle =
        file_cmd("nine-triangle", "fold maps and exactness of a nine diagram");
    CLI::App* c_lower_complete =
        file_cmd("lower-complete", "complete a lower-right diagram to a full one");

    RunFlags add_f, pair_f, pipe_f, self_f;
    self_f.cases = 25;
    CLI::App* c_additivity =
        app.add_subcommand("additivity", "random split sequences: traces must add up");
    add_run_flags(c_additivity, add_f, true);
    c_additivity->fallthrough();
    CLI::App* c_pairing =
        app.add_subcommand("pairing", "random sequence maps: pairings must add up");
    add_run_flags(c_pairing, pair_f, true);
    c_pairing->fallthrough();
    CLI::App* c_pipeline = app.add_subcommand(
        "pipeline", "full coevaluation/evaluation pipeline must fold to the pairings");
    add_run_flags(c_pipeline, pipe_f, true);
    c_pipeline->fallthrough();
    CLI::App* c_selftest =
        app.add_subcommand("selftest", "run every property suite with seeded cases");
    add_run_flags(c_selftest, self_f, false);
    c_selftest->fallthrough();
    CLI::App* c_examples = app.add_subcommand(
        "examples", "worked fold templates on a rank-2 object, over F5 and Q");
    c_examples->fallthrough();

    int rc = 0;
    auto out = [&] { return Output{json, out_path}; };
    c_validate->callback([&] { rc = cmd_validate(file, out()); });
    c_homology->callback([&] { rc = cmd_homology(file, out()); });
    c_trace->callback([&] { rc = cmd_trace(file, out()); });
    c_fold->callback([&] { rc = cmd_fold(file, out()); });
    c_nine_validate->callback([&] { rc = cmd_nine_validate(file, out()); });
    c_nine_triangle->callback([&] { rc = cmd_nine_triangle(file, out()); });
    c_lower_complete->callback([&] { rc = cmd_lower_complete(file, out()); });
    auto run = [&](const char* suite, const RunFlags& r) {
        auto [wmin, wmax] = parse_window(r.window);
        return run_property(suite, r.seed, r.cases, parse_field_flag(r.field), r.max_rank,
                            wmin, wmax, worker_count(r.parallel), out());
    };
    c_additivity->callback([&] { rc = run("additivity", add_f); });
    c_pairing->callback([&] { rc = run("pairing", pair_f); });
    c_pipeline->callback([&] { rc = run("pipeline", pipe_f); });
    c_selftest->callback([&] {
        rc = cmd_selftest(self_f.seed, self_f.cases, parse_field_flag(self_f.field),
                          worker_count(self_f.parallel), out());
    });
    c_examples->callback([&] { rc = cmd_examples(out()); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << e.what() << "\n\n" << app.help();
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Err::Parse ? 3 : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
