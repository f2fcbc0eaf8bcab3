#include "ninefold/json_io.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ninefold {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
    fail(Err::Parse, path + ": " + msg);
}

const Json& member(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) parse_fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) parse_fail(path, std::string("missing key '") + key + "'");
    return *it;
}

// Strict key set; a stray "type" tag is tolerated when expected_type names it
// (documents embedded in other documents may carry their own tag).
void check_keys(const Json& j, std::initializer_list<const char*> allowed,
                const char* expected_type, const std::string& path) {
    if (!j.is_object()) parse_fail(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        if (expected_type && key == "type") {
            if (!value.is_string() || value.get<std::string>() != expected_type)
                parse_fail(path, std::string("type must be '") + expected_type + "'");
            continue;
        }
        if (std::none_of(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }))
            parse_fail(path, "unknown key '" + key + "'");
    }
}

int to_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) parse_fail(path, "expected an integer");
    auto v = j.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        parse_fail(path, "integer out of range");
    return static_cast<int>(v);
}

int degree_key(const std::string& key, const std::string& path) {
    try {
        std::size_t pos = 0;
        int n = std::stoi(key, &pos);
        if (pos != key.size()) throw std::invalid_argument(key);
        return n;
    } catch (const std::exception&) {
        parse_fail(path, "key '" + key + "' is not a degree");
    }
}

FieldSpec field_from_json(const Json& j, const std::string& path) {
    if (!j.is_string()) parse_fail(path, "expected a field string like \"Q\" or \"F7\"");
    try {
        return FieldSpec::parse(j.get<std::string>());
    } catch (const Error& err) {
        parse_fail(path, err.what());
    }
}

Scalar scalar_from_json(const Json& e, const FieldSpec& f, const std::string& path) {
    if (e.is_number_integer()) return Scalar::from_int(e.get<long long>(), f);
    if (!e.is_string()) parse_fail(path, "expected a scalar string");
    try {
        return Scalar::parse(e.get<std::string>(), f);
    } catch (const Error& err) {
        parse_fail(path, err.what());
    }
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(i, c).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& m, const FieldSpec& f, int rows, int cols,
                        const std::string& path) {
    if (!m.is_array()) parse_fail(path, "expected an array of rows");
    if (static_cast<int>(m.size()) != rows)
        parse_fail(path, "expected " + std::to_string(rows) + " rows, got " +
                             std::to_string(m.size()));
    Matrix out = Matrix::zeros(f, rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = m[i];
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            parse_fail(row_path, "expected " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c)
            out.set(i, c,
                    scalar_from_json(row[c], f, row_path + "[" + std::to_string(c) + "]"));
    }
    return out;
}

Json complex_body(const ChainComplex& x) {
    Json j = Json::object();
    j["field"] = x.field().str();
    j["window"] = Json{{"min", x.min_deg()}, {"max", x.max_deg()}};
    Json ranks = Json::object();
    for (int n = x.min_deg(); n <= x.max_deg(); ++n) ranks[std::to_string(n)] = x.rank(n);
    j["ranks"] = std::move(ranks);
    Json diffs = Json::object();
    for (int n = x.min_deg(); n < x.max_deg(); ++n)
        if (!x.d(n).is_zero()) diffs[std::to_string(n)] = matrix_to_json(x.d(n));
    j["differentials"] = std::move(diffs);
    return j;
}

ChainComplex complex_from(const Json& j, const std::string& path) {
    check_keys(j, {"field", "window", "ranks", "differentials"}, "complex", path);
    FieldSpec f = field_from_json(member(j, "field", path), path + ".field");
    const Json& w = member(j, "window", path);
    check_keys(w, {"min", "max"}, nullptr, path + ".window");
    int mn = to_int(member(w, "min", path + ".window"), path + ".window.min");
    int mx = to_int(member(w, "max", path + ".window"), path + ".window.max");
    const Json& ranks = member(j, "ranks", path);
    const Json& diffs = member(j, "differentials", path);
    if (!ranks.is_object()) parse_fail(path + ".ranks", "expected an object");
    if (!diffs.is_object()) parse_fail(path + ".differentials", "expected an object");

    if (mx < mn) {
        if (mn != 0 || mx != -1)
            parse_fail(path + ".window", "the zero complex is written {\"min\": 0, \"max\": -1}");
        if (!ranks.empty() || !diffs.empty())
            parse_fail(path, "an empty window admits no ranks or differentials");
        return ChainComplex::zero(f);
    }

    std::vector<int> rk(mx - mn + 1, 0);
    for (const auto& [key, value] : ranks.items()) {
        int n = degree_key(key, path + ".ranks");
        if (n < mn || n > mx)
            parse_fail(path + ".ranks", "degree " + key + " lies outside the window");
        int r = to_int(value, path + ".ranks." + key);
        if (r < 0) parse_fail(path + ".ranks." + key, "negative rank");
        rk[n - mn] = r;
    }
    if (static_cast<int>(ranks.size()) != mx - mn + 1)
        parse_fail(path + ".ranks", "every degree of the window needs a rank");

    std::vector<Matrix> ds;
    for (int n = mn; n < mx; ++n) ds.push_back(Matrix::zeros(f, rk[n + 1 - mn], rk[n - mn]));
    for (const auto& [key, value] : diffs.items()) {
        int n = degree_key(key, path + ".differentials");
        if (n < mn || n >= mx)
            parse_fail(path + ".differentials",
                       "no differential leaves degree " + key + " in this window");
        ds[n - mn] = matrix_from_json(value, f, rk[n + 1 - mn], rk[n - mn],
                                      path + ".differentials." + key);
    }
    return ChainComplex(f, mn, std::move(rk), std::move(ds));
}

Json comps_to_json(const ChainMap& f) {
    Json comps = Json::object();
    int lo = std::min(f.source().min_deg(), f.target().min_deg());
    int hi = std::max(f.source().max_deg(), f.target().max_deg());
    for (int n = lo; n <= hi; ++n) {
        if (f.source().rank(n) == 0 || f.target().rank(n) == 0) continue;
        Matrix m = f.comp(n);
        if (!m.is_zero()) comps[std::to_string(n)] = matrix_to_json(m);
    }
    return comps;
}

ChainMap map_from_comps(const ChainComplex& src, const ChainComplex& tgt, const Json& comps,
                        const std::string& path) {
    if (!comps.is_object()) parse_fail(path, "expected an object of components");
    std::map<int, Matrix> out;
    for (const auto& [key, value] : comps.items()) {
        int n = degree_key(key, path);
        out.emplace(n, matrix_from_json(value, src.field(), tgt.rank(n), src.rank(n),
                                        path + "." + key));
    }
    return ChainMap(src, tgt, std::move(out));
}

Json map_body(const ChainMap& f) {
    Json j = Json::object();
    j["source"] = complex_body(f.source());
    j["target"] = complex_body(f.target());
    j["components"] = comps_to_json(f);
    return j;
}

ChainMap map_from(const Json& j, const std::string& path) {
    check_keys(j, {"source", "target", "components"}, "map", path);
    ChainComplex src = complex_from(member(j, "source", path), path + ".source");
    ChainComplex tgt = complex_from(member(j, "target", path), path + ".target");
    return map_from_comps(src, tgt, member(j, "components", path), path + ".components");
}

Json ses_body(const SplitSES& e) {
    Json j = Json::object();
    j["Fp"] = complex_body(e.sub);
    j["F"] = complex_body(e.total);
    j["Fq"] = complex_body(e.quot);
    j["iota"] = comps_to_json(e.incl);
    j["pi"] = comps_to_json(e.proj);
    return j;
}

SplitSES ses_from(const Json& j, const std::string& path) {
    check_keys(j, {"Fp", "F", "Fq", "iota", "pi"}, "ses", path);
    SplitSES e;
    e.sub = complex_from(member(j, "Fp", path), path + ".Fp");
    e.total = complex_from(member(j, "F", path), path + ".F");
    e.quot = complex_from(member(j, "Fq", path), path + ".Fq");
    e.incl = map_from_comps(e.sub, e.total, member(j, "iota", path), path + ".iota");
    e.proj = map_from_comps(e.total, e.quot, member(j, "pi", path), path + ".pi");
    return e;
}

Json with_type(const char* type, Json body) {
    Json doc = Json::object();
    doc["type"] = type;
    for (auto& [key, value] : body.items()) doc[key] = std::move(value);
    return doc;
}

}  // namespace

Json complex_to_json(const ChainComplex& x) { return with_type("complex", complex_body(x)); }

Json map_to_json(const ChainMap& f) { return with_type("map", map_body(f)); }

Json triangle_to_json(const Triangle& t) {
    Json j = Json::object();
    j["type"] = "triangle";
    j["x"] = complex_body(t.x());
    j["y"] = complex_body(t.y());
    j["z"] = complex_body(t.z());
    j["f"] = comps_to_json(t.f());
    j["g"] = comps_to_json(t.g());
    j["w"] = comps_to_json(t.w());
    return j;
}

Json square_to_json(const CommSquare& s) {
    Json j = Json::object();
    j["type"] = "square";
    j["x"] = complex_body(s.x());
    j["y"] = complex_body(s.y());
    j["z"] = complex_body(s.z());
    j["corner"] = complex_body(s.corner());
    j["f"] = comps_to_json(s.f());
    j["g"] = comps_to_json(s.g());
    j["p"] = comps_to_json(s.p());
    j["q"] = comps_to_json(s.q());
    j["witness"] = comps_to_json(s.w());
    return j;
}

Json nine_to_json(const NineDiagram& n) {
    Json j = Json::object();
    j["type"] = "nine";
    Json entries = Json::array();
    for (int r = 0; r < 3; ++r) {
        Json row = Json::array();
        for (int k = 0; k < 3; ++k) row.push_back(complex_body(n.x(r, k)));
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    Json horizontal = Json::array();
    for (int r = 0; r < 3; ++r) {
        Json row = Json::array();
        for (int k = 0; k < 2; ++k) row.push_back(comps_to_json(n.dh[r][k]));
        horizontal.push_back(std::move(row));
    }
    j["horizontal"] = std::move(horizontal);
    Json vertical = Json::array();
    for (int r = 0; r < 2; ++r) {
        Json row = Json::array();
        for (int k = 0; k < 3; ++k) row.push_back(comps_to_json(n.dv[r][k]));
        vertical.push_back(std::move(row));
    }
    j["vertical"] = std::move(vertical);
    Json w = Json::object();
    Json wrow = Json::array(), wcol = Json::array();
    for (int r = 0; r < 3; ++r) wrow.push_back(comps_to_json(n.w_row[r]));
    for (int k = 0; k < 3; ++k) wcol.push_back(comps_to_json(n.w_col[k]));
    w["row"] = std::move(wrow);
    w["col"] = std::move(wcol);
    w["ul"] = comps_to_json(n.w_ul);
    w["lr"] = comps_to_json(n.w_lr);
    j["witnesses"] = std::move(w);
    return j;
}

Json lower_to_json(const LowerNine& l) {
    Json j = Json::object();
    j["type"] = "nine";
    const ChainComplex* e[3][3] = {{nullptr, nullptr, &l.x02},
                                   {nullptr, &l.x11, &l.x12},
                                   {&l.x20, &l.x21, &l.x22}};
    Json entries = Json::array();
    for (int r = 0; r < 3; ++r) {
        Json row = Json::array();
        for (int k = 0; k < 3; ++k)
            row.push_back(e[r][k] ? complex_body(*e[r][k]) : Json(nullptr));
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    const ChainMap* dh[3][2] = {{nullptr, nullptr}, {nullptr, &l.dh11}, {&l.dh20, &l.dh21}};
    const ChainMap* dv[2][3] = {{nullptr, nullptr, &l.dv02}, {nullptr, &l.dv11, &l.dv12}};
    Json horizontal = Json::array();
    for (int r = 0; r < 3; ++r) {
        Json row = Json::array();
        for (int k = 0; k < 2; ++k)
            row.push_back(dh[r][k] ? comps_to_json(*dh[r][k]) : Json(nullptr));
        horizontal.push_back(std::move(row));
    }
    j["horizontal"] = std::move(horizontal);
    Json vertical = Json::array();
    for (int r = 0; r < 2; ++r) {
        Json row = Json::array();
        for (int k = 0; k < 3; ++k)
            row.push_back(dv[r][k] ? comps_to_json(*dv[r][k]) : Json(nullptr));
        vertical.push_back(std::move(row));
    }
    j["vertical"] = std::move(vertical);
    j["witnesses"] = Json(nullptr);
    return j;
}

Json ses_to_json(const SplitSES& e) { return with_type("ses", ses_body(e)); }

Json endo_to_json(const SESMap& m) {
    if (!(m.source == m.target))
        fail(Err::Validation,
             "endo_to_json: only endomorphisms of one sequence have a wire form");
    Json j = Json::object();
    j["type"] = "endo";
    j["ses"] = ses_body(m.source);
    j["fp"] = comps_to_json(m.sub);
    j["f"] = comps_to_json(m.total);
    j["fq"] = comps_to_json(m.quot);
    return j;
}

Json job_to_json(const Job& j) {
    Json out = Json::object();
    out["type"] = "job";
    out["command"] = j.command;
    out["field"] = j.field.str();
    out["seed"] = j.seed;
    out["cases"] = j.cases;
    out["max_rank"] = j.max_rank;
    out["window"] = Json{{"min", j.window_min}, {"max", j.window_max}};
    return out;
}

Json document_to_json(const Document& d) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ChainComplex>) return complex_to_json(v);
            else if constexpr (std::is_same_v<T, ChainMap>) return map_to_json(v);
            else if constexpr (std::is_same_v<T, Triangle>) return triangle_to_json(v);
            else if constexpr (std::is_same_v<T, CommSquare>) return square_to_json(v);
            else if constexpr (std::is_same_v<T, NineDiagram>) return nine_to_json(v);
            else if constexpr (std::is_same_v<T, LowerNine>) return lower_to_json(v);
            else if constexpr (std::is_same_v<T, SplitSES>) return ses_to_json(v);
            else if constexpr (std::is_same_v<T, SESMap>) return endo_to_json(v);
            else return job_to_json(v);
        },
        d);
}

const char* document_kind(const Document& d) {
    return std::visit(
        [](const auto& v) -> const char* {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ChainComplex>) return "complex";
            else if constexpr (std::is_same_v<T, ChainMap>) return "map";
            else if constexpr (std::is_same_v<T, Triangle>) return "triangle";
            else if constexpr (std::is_same_v<T, CommSquare>) return "square";
            else if constexpr (std::is_same_v<T, NineDiagram>) return "nine";
            else if constexpr (std::is_same_v<T, LowerNine>) return "lower-nine";
            else if constexpr (std::is_same_v<T, SplitSES>) return "ses";
            else if constexpr (std::is_same_v<T, SESMap>) return "endo";
            else return "job";
        },
        d);
}

namespace {

Document triangle_from(const Json& j, const std::string& path) {
    check_keys(j, {"x", "y", "z", "f", "g", "w"}, "triangle", path);
    ChainComplex x = complex_from(member(j, "x", path), path + ".x");
    ChainComplex y = complex_from(member(j, "y", path), path + ".y");
    ChainComplex z = complex_from(member(j, "z", path), path + ".z");
    ChainMap f = map_from_comps(x, y, member(j, "f", path), path + ".f");
    ChainMap g = map_from_comps(y, z, member(j, "g", path), path + ".g");
    ChainMap w = map_from_comps(shift(x, 1), z, member(j, "w", path), path + ".w");
    return Triangle(std::move(f), std::move(g), std::move(w));
}

Document square_from(const Json& j, const std::string& path) {
    check_keys(j, {"x", "y", "z", "corner", "f", "g", "p", "q", "witness"}, "square", path);
    ChainComplex x = complex_from(member(j, "x", path), path + ".x");
    ChainComplex y = complex_from(member(j, "y", path), path + ".y");
    ChainComplex z = complex_from(member(j, "z", path), path + ".z");
    ChainComplex corner = complex_from(member(j, "corner", path), path + ".corner");
    ChainMap f = map_from_comps(x, y, member(j, "f", path), path + ".f");
    ChainMap g = map_from_comps(x, z, member(j, "g", path), path + ".g");
    ChainMap p = map_from_comps(y, corner, member(j, "p", path), path + ".p");
    ChainMap q = map_from_comps(z, corner, member(j, "q", path), path + ".q");
    ChainMap w = map_from_comps(shift(x, 1), corner, member(j, "witness", path),
                                path + ".witness");
    return CommSquare(std::move(f), std::move(g), std::move(p), std::move(q), std::move(w));
}

const Json& grid_slot(const Json& grid, int r, int k, int rows, int cols, const char* name,
                      const std::string& path) {
    if (!grid.is_array() || static_cast<int>(grid.size()) != rows)
        parse_fail(path, std::string(name) + " must be an array of " + std::to_string(rows) +
                             " rows");
    const Json& row = grid[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
        parse_fail(path + "." + name + "[" + std::to_string(r) + "]",
                   "expected " + std::to_string(cols) + " columns");
    return row[k];
}

Document nine_from(const Json& j, const std::string& path) {
    check_keys(j, {"entries", "horizontal", "vertical", "witnesses"}, "nine", path);
    const Json& entries = member(j, "entries", path);
    const Json& horizontal = member(j, "horizontal", path);
    const Json& vertical = member(j, "vertical", path);
    const Json& witnesses = member(j, "witnesses", path);

    auto entry = [&](int r, int k) -> const Json& {
        return grid_slot(entries, r, k, 3, 3, "entries", path);
    };
    auto dh = [&](int r, int k) -> const Json& {
        return grid_slot(horizontal, r, k, 3, 2, "horizontal", path);
    };
    auto dv = [&](int r, int k) -> const Json& {
        return grid_slot(vertical, r, k, 2, 3, "vertical", path);
    };
    auto spot = [](const char* name, int r, int k) {
        return std::string(name) + "[" + std::to_string(r) + "][" + std::to_string(k) + "]";
    };

    bool any_null = false;
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k) any_null = any_null || entry(r, k).is_null();

    if (!any_null) {
        ChainComplex e[3][3];
        for (int r = 0; r < 3; ++r)
            for (int k = 0; k < 3; ++k)
                e[r][k] = complex_from(entry(r, k), path + "." + spot("entries", r, k));
        NineDiagram n;
        for (int r = 0; r < 3; ++r)
            for (int k = 0; k < 2; ++k)
                n.dh[r][k] = map_from_comps(e[r][k], e[r][k + 1], dh(r, k),
                                            path + "." + spot("horizontal", r, k));
        for (int r = 0; r < 2; ++r)
            for (int k = 0; k < 3; ++k)
                n.dv[r][k] = map_from_comps(e[r][k], e[r + 1][k], dv(r, k),
                                            path + "." + spot("vertical", r, k));
        check_keys(witnesses, {"row", "col", "ul", "lr"}, nullptr, path + ".witnesses");
        const Json& wrow = member(witnesses, "row", path + ".witnesses");
        const Json& wcol = member(witnesses, "col", path + ".witnesses");
        if (!wrow.is_array() || wrow.size() != 3)
            parse_fail(path + ".witnesses.row", "expected 3 witnesses");
        if (!wcol.is_array() || wcol.size() != 3)
            parse_fail(path + ".witnesses.col", "expected 3 witnesses");
        for (int r = 0; r < 3; ++r)
            n.w_row[r] = map_from_comps(shift(e[r][0], 1), e[r][2], wrow[r],
                                        path + ".witnesses.row[" + std::to_string(r) + "]");
        for (int k = 0; k < 3; ++k)
            n.w_col[k] = map_from_comps(shift(e[0][k], 1), e[2][k], wcol[k],
                                        path + ".witnesses.col[" + std::to_string(k) + "]");
        n.w_ul = map_from_comps(shift(e[0][0], 1), e[1][1],
                                member(witnesses, "ul", path + ".witnesses"),
                                path + ".witnesses.ul");
        n.w_lr = map_from_comps(shift(e[1][1], 1), e[2][2],
                                member(witnesses, "lr", path + ".witnesses"),
                                path + ".witnesses.lr");
        return n;
    }

    // Lower diagram: exactly the first row and column are unknown; the six
    // lower-right entries and the six maps among them are given.
    const bool entry_present[3][3] = {{false, false, true},
                                      {false, true, true},
                                      {true, true, true}};
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k)
            if (entry(r, k).is_null() == entry_present[r][k])
                parse_fail(path + "." + spot("entries", r, k),
                           entry_present[r][k] ? "a lower diagram must give this entry"
                                               : "a lower diagram leaves this entry null");
    const bool dh_present[3][2] = {{false, false}, {false, true}, {true, true}};
    const bool dv_present[2][3] = {{false, false, true}, {false, true, true}};
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 2; ++k)
            if (dh(r, k).is_null() == dh_present[r][k])
                parse_fail(path + "." + spot("horizontal", r, k),
                           dh_present[r][k] ? "a lower diagram must give this map"
                                            : "a lower diagram leaves this map null");
    for (int r = 0; r < 2; ++r)
        for (int k = 0; k < 3; ++k)
            if (dv(r, k).is_null() == dv_present[r][k])
                parse_fail(path + "." + spot("vertical", r, k),
                           dv_present[r][k] ? "a lower diagram must give this map"
                                            : "a lower diagram leaves this map null");
    if (!witnesses.is_null())
        parse_fail(path + ".witnesses", "a lower diagram leaves the witnesses null");

    LowerNine low;
    low.x02 = complex_from(entry(0, 2), path + "." + spot("entries", 0, 2));
    low.x11 = complex_from(entry(1, 1), path + "." + spot("entries", 1, 1));
    low.x12 = complex_from(entry(1, 2), path + "." + spot("entries", 1, 2));
    low.x20 = complex_from(entry(2, 0), path + "." + spot("entries", 2, 0));
    low.x21 = complex_from(entry(2, 1), path + "." + spot("entries", 2, 1));
    low.x22 = complex_from(entry(2, 2), path + "." + spot("entries", 2, 2));
    low.dv02 = map_from_comps(low.x02, low.x12, dv(0, 2), path + "." + spot("vertical", 0, 2));
    low.dh11 = map_from_comps(low.x11, low.x12, dh(1, 1), path + "." + spot("horizontal", 1, 1));
    low.dv11 = map_from_comps(low.x11, low.x21, dv(1, 1), path + "." + spot("vertical", 1, 1));
    low.dv12 = map_from_comps(low.x12, low.x22, dv(1, 2), path + "." + spot("vertical", 1, 2));
    low.dh20 = map_from_comps(low.x20, low.x21, dh(2, 0), path + "." + spot("horizontal", 2, 0));
    low.dh21 = map_from_comps(low.x21, low.x22, dh(2, 1), path + "." + spot("horizontal", 2, 1));
    return low;
}

Document endo_from(const Json& j, const std::string& path) {
    check_keys(j, {"ses", "fp", "f", "fq"}, "endo", path);
    SplitSES e = ses_from(member(j, "ses", path), path + ".ses");
    SESMap m;
    m.source = e;
    m.target = e;
    m.sub = map_from_comps(e.sub, e.sub, member(j, "fp", path), path + ".fp");
    m.total = map_from_comps(e.total, e.total, member(j, "f", path), path + ".f");
    m.quot = map_from_comps(e.quot, e.quot, member(j, "fq", path), path + ".fq");
    return m;
}

Document job_from(const Json& j, const std::string& path) {
    check_keys(j, {"command", "field", "seed", "cases", "max_rank", "window"}, "job", path);
    Job job;
    const Json& cmd = member(j, "command", path);
    if (!cmd.is_string() || cmd.get<std::string>().empty())
        parse_fail(path + ".command", "expected a command name");
    job.command = cmd.get<std::string>();
    job.field = field_from_json(member(j, "field", path), path + ".field");
    const Json& seed = member(j, "seed", path);
    if (!seed.is_number_integer() ||
        (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0))
        parse_fail(path + ".seed", "expected a nonnegative integer");
    job.seed = seed.get<std::uint64_t>();
    job.cases = to_int(member(j, "cases", path), path + ".cases");
    if (job.cases < 1) parse_fail(path + ".cases", "cases must be at least 1");
    job.max_rank = to_int(member(j, "max_rank", path), path + ".max_rank");
    if (job.max_rank < 0) parse_fail(path + ".max_rank", "negative max rank");
    const Json& w = member(j, "window", path);
    check_keys(w, {"min", "max"}, nullptr, path + ".window");
    job.window_min = to_int(member(w, "min", path + ".window"), path + ".window.min");
    job.window_max = to_int(member(w, "max", path + ".window"), path + ".window.max");
    if (job.window_max < job.window_min)
        parse_fail(path + ".window", "empty generation window");
    return job;
}

}  // namespace

Document document_from_json(const Json& j) {
    const std::string path = "$";
    const Json& type = member(j, "type", path);
    if (!type.is_string()) parse_fail(path + ".type", "expected a type string");
    const std::string kind = type.get<std::string>();
    if (kind == "complex") return complex_from(j, path);
    if (kind == "map") return map_from(j, path);
    if (kind == "triangle") return triangle_from(j, path);
    if (kind == "square") return square_from(j, path);
    if (kind == "nine") return nine_from(j, path);
    if (kind == "ses") return ses_from(j, path);
    if (kind == "endo") return endo_from(j, path);
    if (kind == "job") return job_from(j, path);
    parse_fail(path + ".type", "unknown document type '" + kind + "'");
}

std::string serialize_document(const Document& d) {
    return document_to_json(d).dump(2) + "\n";
}

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
        fail(Err::Parse, "line " + std::to_string(line) + ": " + e.what());
    }
    return document_from_json(j);
}

}  // namespace ninefold
