#include "ninefold/chain_map.hpp"

#include "ninefold/linsys.hpp"

namespace ninefold {

// ---- LinSys -----------------------------------------------------------

Matrix flatten(const Matrix& m) {
    Matrix c = Matrix::zeros(m.field(), m.rows() * m.cols(), 1);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) c.set(i * m.cols() + j, 0, m.at(i, j));
    return c;
}

Matrix unflatten(const Matrix& column, const FieldSpec& f, int rows, int cols) {
    if (column.rows() != rows * cols || column.cols() != 1)
        fail(Err::Shape, "unflatten: size mismatch");
    Matrix m = Matrix::zeros(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, column.at(i * cols + j, 0));
    return m;
}

int LinSys::add_unknown(int rows, int cols) {
    if (rows < 0 || cols < 0) fail(Err::Shape, "LinSys: negative unknown shape");
    unknowns_.push_back({rows, cols});
    return static_cast<int>(unknowns_.size()) - 1;
}

void LinSys::begin_equation(const Matrix& rhs) {
    require_same_field(field_, rhs.field(), "LinSys equation");
    Equation eq;
    eq.rows = rhs.rows();
    eq.cols = rhs.cols();
    eq.rhs_flat = flatten(rhs);
    equations_.push_back(std::move(eq));
}

void LinSys::add_term(int unknown, const Matrix& left, const Matrix& right) {
    if (equations_.empty()) fail(Err::Shape, "LinSys: no open equation");
    if (unknown < 0 || unknown >= static_cast<int>(unknowns_.size()))
        fail(Err::Shape, "LinSys: unknown handle out of range");
    Equation& eq = equations_.back();
    const Shape& u = unknowns_[unknown];
    if (left.rows() != eq.rows || left.cols() != u.rows || right.rows() != u.cols ||
        right.cols() != eq.cols)
        fail(Err::Shape, "LinSys: term shape mismatch");
    eq.terms.emplace_back(unknown, kron(left, transpose(right)));
}

void LinSys::add_left_term(int unknown, const Matrix& left) {
    add_term(unknown, left, Matrix::identity(field_, unknowns_[unknown].cols));
}

void LinSys::add_right_term(int unknown, const Matrix& right) {
    add_term(unknown, Matrix::identity(field_, unknowns_[unknown].rows), right);
}

std::pair<Matrix, Matrix> LinSys::materialize() const {
    std::vector<int> offsets(unknowns_.size(), 0);
    int total = 0;
    for (std::size_t i = 0; i < unknowns_.size(); ++i) {
        offsets[i] = total;
        total += unknowns_[i].rows * unknowns_[i].cols;
    }
    int nrows = 0;
    for (const auto& eq : equations_) nrows += eq.rows * eq.cols;
    Matrix a = Matrix::zeros(field_, nrows, total);
    Matrix b = Matrix::zeros(field_, nrows, 1);
    int row0 = 0;
    for (const auto& eq : equations_) {
        int band = eq.rows * eq.cols;
        for (int i = 0; i < band; ++i) b.set(row0 + i, 0, eq.rhs_flat.at(i, 0));
        for (const auto& [u, coeff] : eq.terms)
            for (int i = 0; i < band; ++i)
                for (int j = 0; j < coeff.cols(); ++j) {
                    Scalar v = coeff.at(i, j);
                    if (v.is_zero()) continue;
                    int col = offsets[u] + j;
                    a.set(row0 + i, col, a.at(row0 + i, col) + v);
                }
        row0 += band;
    }
    return {std::move(a), std::move(b)};
}

std::vector<Matrix> LinSys::unflatten(const Matrix& coords) const {
    std::vector<Matrix> out;
    int off = 0;
    for (const Shape& u : unknowns_) {
        int n = u.rows * u.cols;
        out.push_back(ninefold::unflatten(block(coords, off, 0, n, 1), field_, u.rows, u.cols));
        off += n;
    }
    return out;
}

std::optional<std::vector<Matrix>> LinSys::solve() const {
    auto [a, b] = materialize();
    auto x = ninefold::solve(a, b);
    if (!x) return std::nullopt;
    return unflatten(*x);
}

std::optional<std::vector<Matrix>> LinSys::sample(Rng& rng) const {
    auto [a, b] = materialize();
    auto x = ninefold::solve(a, b);
    if (!x) return std::nullopt;
    Matrix k = kernel_basis(a);
    Matrix pt = *x;
    if (k.cols() > 0) pt = pt + rng.column_combination(k);
    return unflatten(pt);
}

// ---- ChainMap ---------------------------------------------------------

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::map<int, Matrix> comps)
    : source_(std::move(source)), target_(std::move(target)) {
    require_same_field(source_.field(), target_.field(), "chain map");
    for (auto& [n, m] : comps) {
        require_same_field(m.field(), source_.field(), "chain map component");
        if (m.rows() != target_.rank(n) || m.cols() != source_.rank(n))
            fail(Err::Shape, "chain map component in degree " + std::to_string(n) +
                                 " has shape " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + ", expected " +
                                 std::to_string(target_.rank(n)) + "x" +
                                 std::to_string(source_.rank(n)));
        if (!m.is_zero()) comps_.emplace(n, std::move(m));
    }
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) {
    return ChainMap(source, target, {});
}

ChainMap ChainMap::identity(const ChainComplex& x) {
    return scalar(x, Scalar::one(x.field()));
}

ChainMap ChainMap::scalar(const ChainComplex& x, const Scalar& c) {
    std::map<int, Matrix> comps;
    for (int n = x.min_deg(); n <= x.max_deg(); ++n)
        comps.emplace(n, scale(c, Matrix::identity(x.field(), x.rank(n))));
    return ChainMap(x, x, std::move(comps));
}

Matrix ChainMap::comp(int n) const {
    auto it = comps_.find(n);
    if (it != comps_.end()) return it->second;
    return Matrix::zeros(source_.field(), target_.rank(n), source_.rank(n));
}

bool ChainMap::is_chain_map() const {
    int lo = std::min(source_.min_deg(), target_.min_deg());
    int hi = std::max(source_.max_deg(), target_.max_deg());
    for (int n = lo; n <= hi; ++n)
        if (comp(n + 1) * source_.d(n) != target_.d(n) * comp(n)) return false;
    return true;
}

void ChainMap::require_chain_map(const char* what) const {
    if (!is_chain_map())
        fail(Err::Validation, std::string(what) + ": does not commute with the differentials");
}

bool ChainMap::operator==(const ChainMap& o) const {
    return source_ == o.source_ && target_ == o.target_ && comps_ == o.comps_;
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
    if (source_ != o.source_ || target_ != o.target_)
        fail(Err::Shape, "chain map +: endpoints differ");
    std::map<int, Matrix> comps;
    for (int n = std::min(source_.min_deg(), target_.min_deg());
         n <= std::max(source_.max_deg(), target_.max_deg()); ++n)
        comps.emplace(n, comp(n) + o.comp(n));
    return ChainMap(source_, target_, std::move(comps));
}

ChainMap ChainMap::operator-(const ChainMap& o) const { return *this + (-o); }

ChainMap ChainMap::operator-() const {
    std::map<int, Matrix> comps;
    for (const auto& [n, m] : comps_) comps.emplace(n, -m);
    return ChainMap(source_, target_, std::move(comps));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (f.target() != g.source()) fail(Err::Shape, "compose: middle complexes differ");
    std::map<int, Matrix> comps;
    int lo = std::min(f.source().min_deg(), g.target().min_deg());
    int hi = std::max(f.source().max_deg(), g.target().max_deg());
    for (int n = lo; n <= hi; ++n) comps.emplace(n, g.comp(n) * f.comp(n));
    return ChainMap(f.source(), g.target(), std::move(comps));
}

ChainMap scale_map(const Scalar& c, const ChainMap& f) {
    std::map<int, Matrix> comps;
    for (int n = f.source().min_deg(); n <= f.source().max_deg(); ++n)
        comps.emplace(n, scale(c, f.comp(n)));
    return ChainMap(f.source(), f.target(), std::move(comps));
}

ChainMap shift_map(const ChainMap& f, int k) {
    ChainComplex s = shift(f.source(), k), t = shift(f.target(), k);
    std::map<int, Matrix> comps;
    for (int n = s.min_deg(); n <= s.max_deg(); ++n) comps.emplace(n, f.comp(n + k));
    return ChainMap(std::move(s), std::move(t), std::move(comps));
}

ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g) {
    ChainComplex s = direct_sum(f.source(), g.source());
    ChainComplex t = direct_sum(f.target(), g.target());
    std::map<int, Matrix> comps;
    for (int n = s.min_deg(); n <= s.max_deg(); ++n)
        comps.emplace(n, block_diag(f.comp(n), g.comp(n)));
    return ChainMap(std::move(s), std::move(t), std::move(comps));
}

std::optional<Homotopy> find_null_homotopy(const ChainMap& f) {
    f.require_chain_map("null homotopy search");
    const ChainComplex& x = f.source();
    const ChainComplex& y = f.target();
    // f(n) = d_Y(n-1) s(n) + s(n+1) d_X(n), one unknown s per degree.
    LinSys sys(f.field());
    std::map<int, int> handle;
    int lo = std::min(x.min_deg(), y.min_deg());
    int hi = std::max(x.max_deg(), y.max_deg());
    for (int n = lo; n <= hi + 1; ++n) handle[n] = sys.add_unknown(y.rank(n - 1), x.rank(n));
    for (int n = lo; n <= hi; ++n) {
        sys.begin_equation(f.comp(n));
        sys.add_left_term(handle[n], y.d(n - 1));
        sys.add_right_term(handle[n + 1], x.d(n));
    }
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    Homotopy h;
    for (int n = lo; n <= hi + 1; ++n) {
        const Matrix& m = (*sol)[handle[n]];
        if (!m.is_zero()) h.s.emplace(n, m);
    }
    return h;
}

ChainMap homotopy_boundary(const ChainComplex& x, const ChainComplex& y, const Homotopy& h) {
    auto s_at = [&](int n) {
        auto it = h.s.find(n);
        if (it != h.s.end()) {
            if (it->second.rows() != y.rank(n - 1) || it->second.cols() != x.rank(n))
                fail(Err::Shape, "homotopy component shape in degree " + std::to_string(n));
            return it->second;
        }
        return Matrix::zeros(x.field(), y.rank(n - 1), x.rank(n));
    };
    std::map<int, Matrix> comps;
    int lo = std::min(x.min_deg(), y.min_deg());
    int hi = std::max(x.max_deg(), y.max_deg());
    for (int n = lo; n <= hi; ++n)
        comps.emplace(n, y.d(n - 1) * s_at(n) + s_at(n + 1) * x.d(n));
    return ChainMap(x, y, std::move(comps));
}

ChainMap random_chain_map(Rng& rng, const ChainComplex& x, const ChainComplex& y) {
    require_same_field(x.field(), y.field(), "random chain map");
    LinSys sys(x.field());
    std::map<int, int> handle;
    int lo = std::min(x.min_deg(), y.min_deg());
    int hi = std::max(x.max_deg(), y.max_deg());
    for (int n = lo; n <= hi; ++n) handle[n] = sys.add_unknown(y.rank(n), x.rank(n));
    for (int n = lo; n <= hi; ++n) {
        // d_Y(n) f(n) - f(n+1) d_X(n) = 0
        sys.begin_equation(Matrix::zeros(x.field(), y.rank(n + 1), x.rank(n)));
        sys.add_left_term(handle[n], y.d(n));
        if (n + 1 <= hi) sys.add_right_term(handle[n + 1], scale(Scalar::from_int(-1, x.field()), x.d(n)));
    }
    auto sol = sys.sample(rng);
    if (!sol) fail(Err::Construction, "chain map system must be consistent");
    std::map<int, Matrix> comps;
    for (int n = lo; n <= hi; ++n) comps.emplace(n, (*sol)[handle[n]]);
    return ChainMap(x, y, std::move(comps));
}

ChainComplex random_extension(Rng& rng, const ChainComplex& base, const ChainComplex& piece) {
    require_same_field(base.field(), piece.field(), "random_extension");
    const FieldSpec& f = base.field();
    if (piece.is_zero_complex()) return base;
    if (base.is_zero_complex()) return piece;
    int lo = std::min(base.min_deg(), piece.min_deg());
    int hi = std::max(base.max_deg(), piece.max_deg());

    // coupling u(n): piece^n -> base^{n+1} with d_base u + u d_piece = 0
    LinSys sys(f);
    std::map<int, int> handle;
    for (int n = lo; n <= hi; ++n) handle[n] = sys.add_unknown(base.rank(n + 1), piece.rank(n));
    for (int n = lo; n <= hi; ++n) {
        sys.begin_equation(Matrix::zeros(f, base.rank(n + 2), piece.rank(n)));
        sys.add_left_term(handle[n], base.d(n + 1));
        if (n + 1 <= hi) sys.add_right_term(handle[n + 1], piece.d(n));
    }
    auto sol = sys.sample(rng);
    if (!sol) fail(Err::Construction, "extension system must be consistent");

    std::vector<int> ranks;
    for (int n = lo; n <= hi; ++n) ranks.push_back(base.rank(n) + piece.rank(n));
    std::vector<Matrix> diffs;
    for (int n = lo; n < hi; ++n) {
        Matrix dn = Matrix::zeros(f, ranks[n + 1 - lo], ranks[n - lo]);
        paste(dn, 0, 0, base.d(n));
        paste(dn, 0, base.rank(n), (*sol)[handle[n]]);
        paste(dn, base.rank(n + 1), base.rank(n), piece.d(n));
        diffs.push_back(dn);
    }
    return ChainComplex(f, lo, std::move(ranks), std::move(diffs));
}

}  // namespace ninefold
