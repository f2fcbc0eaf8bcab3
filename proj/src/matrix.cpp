#include "ninefold/matrix.hpp"

#include <string>

namespace ninefold {

namespace {

struct QOps {
    using T = BigRat;
    T zero() const { return T(0); }
    T one() const { return T(1); }
    bool is_zero(const T& a) const { return a.is_zero(); }
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T neg(const T& a) const { return -a; }
    T inv(const T& a) const { return 1 / a; }
};

struct POps {
    std::uint64_t p;
    using T = std::uint64_t;
    T zero() const { return 0; }
    T one() const { return 1; }
    bool is_zero(T a) const { return a == 0; }
    T add(T a, T b) const { return mod_add(a, b, p); }
    T sub(T a, T b) const { return mod_sub(a, b, p); }
    T mul(T a, T b) const { return mod_mul(a, b, p); }
    T neg(T a) const { return mod_neg(a, p); }
    T inv(T a) const { return mod_inv(a, p); }
};

template <class Ops>
void mul_core(const Ops& ops, const std::vector<typename Ops::T>& a, int ar, int ac,
              const std::vector<typename Ops::T>& b, int bc, std::vector<typename Ops::T>& out) {
    out.assign(static_cast<std::size_t>(ar) * bc, ops.zero());
    for (int i = 0; i < ar; ++i)
        for (int k = 0; k < ac; ++k) {
            const auto& aik = a[static_cast<std::size_t>(i) * ac + k];
            if (ops.is_zero(aik)) continue;
            for (int j = 0; j < bc; ++j) {
                auto& o = out[static_cast<std::size_t>(i) * bc + j];
                o = ops.add(o, ops.mul(aik, b[static_cast<std::size_t>(k) * bc + j]));
            }
        }
}

// In-place Gauss-Jordan. Pivot rule: scan the current column top-down and
// take the first nonzero entry. Records pivot columns in ascending order.
template <class Ops>
void rref_core(const Ops& ops, std::vector<typename Ops::T>& a, int rows, int cols,
               std::vector<int>& pivots) {
    pivots.clear();
    int lead = 0;
    auto at = [&](int r, int c) -> typename Ops::T& {
        return a[static_cast<std::size_t>(r) * cols + c];
    };
    for (int col = 0; col < cols && lead < rows; ++col) {
        int piv = -1;
        for (int r = lead; r < rows; ++r)
            if (!ops.is_zero(at(r, col))) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != lead)
            for (int c = 0; c < cols; ++c) std::swap(at(piv, c), at(lead, c));
        auto s = ops.inv(at(lead, col));
        for (int c = col; c < cols; ++c) at(lead, c) = ops.mul(s, at(lead, c));
        for (int r = 0; r < rows; ++r) {
            if (r == lead || ops.is_zero(at(r, col))) continue;
            auto f = at(r, col);
            for (int c = col; c < cols; ++c)
                at(r, c) = ops.sub(at(r, c), ops.mul(f, at(lead, c)));
        }
        pivots.push_back(col);
        ++lead;
    }
}

}  // namespace

void Matrix::check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        fail(Err::Shape, "matrix index (" + std::to_string(r) + "," + std::to_string(c) +
                             ") out of range for " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
}

Matrix Matrix::zeros(const FieldSpec& f, int rows, int cols) {
    if (rows < 0 || cols < 0) fail(Err::Shape, "negative matrix dimension");
    Matrix m;
    m.field_ = f;
    m.rows_ = rows;
    m.cols_ = cols;
    std::size_t n = static_cast<std::size_t>(rows) * cols;
    if (f.is_rationals())
        m.q_.assign(n, BigRat(0));
    else
        m.m_.assign(n, 0);
    return m;
}

Matrix Matrix::identity(const FieldSpec& f, int n) {
    Matrix m = zeros(f, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
    return m;
}

Matrix Matrix::from_rows(const FieldSpec& f, const std::vector<std::vector<long long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m = zeros(f, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) fail(Err::Shape, "ragged row list");
        for (int j = 0; j < c; ++j) m.set(i, j, Scalar::from_int(rows[i][j], f));
    }
    return m;
}

Scalar Matrix::at(int r, int c) const {
    check_index(r, c);
    std::size_t i = static_cast<std::size_t>(r) * cols_ + c;
    if (field_.is_rationals()) return Scalar::rational(q_[i]);
    return Scalar::residue(m_[i], field_);
}

void Matrix::set(int r, int c, const Scalar& v) {
    check_index(r, c);
    require_same_field(field_, v.field(), "matrix set");
    std::size_t i = static_cast<std::size_t>(r) * cols_ + c;
    if (field_.is_rationals())
        q_[i] = v.rat();
    else
        m_[i] = v.res();
}

bool Matrix::is_zero() const {
    if (field_.is_rationals()) {
        for (const auto& v : q_)
            if (!v.is_zero()) return false;
    } else {
        for (auto v : m_)
            if (v != 0) return false;
    }
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(field_, rows_);
}

bool Matrix::operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && q_ == o.q_ && m_ == o.m_;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require_same_field(field_, o.field_, "matrix +");
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(Err::Shape, "matrix +: shapes differ");
    Matrix r = *this;
    if (field_.is_rationals())
        for (std::size_t i = 0; i < q_.size(); ++i) r.q_[i] += o.q_[i];
    else
        for (std::size_t i = 0; i < m_.size(); ++i) r.m_[i] = mod_add(m_[i], o.m_[i], field_.p());
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    require_same_field(field_, o.field_, "matrix -");
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(Err::Shape, "matrix -: shapes differ");
    Matrix r = *this;
    if (field_.is_rationals())
        for (std::size_t i = 0; i < q_.size(); ++i) r.q_[i] -= o.q_[i];
    else
        for (std::size_t i = 0; i < m_.size(); ++i) r.m_[i] = mod_sub(m_[i], o.m_[i], field_.p());
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r = *this;
    if (field_.is_rationals())
        for (auto& v : r.q_) v = -v;
    else
        for (auto& v : r.m_) v = mod_neg(v, field_.p());
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require_same_field(field_, o.field_, "matrix *");
    if (cols_ != o.rows_)
        fail(Err::Shape, "matrix *: inner dimensions differ (" + std::to_string(cols_) + " vs " +
                             std::to_string(o.rows_) + ")");
    Matrix r;
    r.field_ = field_;
    r.rows_ = rows_;
    r.cols_ = o.cols_;
    if (field_.is_rationals())
        mul_core(QOps{}, q_, rows_, cols_, o.q_, o.cols_, r.q_);
    else
        mul_core(POps{field_.p()}, m_, rows_, cols_, o.m_, o.cols_, r.m_);
    return r;
}

Matrix scale(const Scalar& c, const Matrix& m) {
    require_same_field(c.field(), m.field_, "scale");
    Matrix r = m;
    if (m.field_.is_rationals())
        for (auto& v : r.q_) v *= c.rat();
    else
        for (auto& v : r.m_) v = mod_mul(v, c.res(), m.field_.p());
    return r;
}

Matrix transpose(const Matrix& m) {
    Matrix r = Matrix::zeros(m.field_, m.cols_, m.rows_);
    for (int i = 0; i < m.rows_; ++i)
        for (int j = 0; j < m.cols_; ++j) {
            std::size_t src = static_cast<std::size_t>(i) * m.cols_ + j;
            std::size_t dst = static_cast<std::size_t>(j) * m.rows_ + i;
            if (m.field_.is_rationals())
                r.q_[dst] = m.q_[src];
            else
                r.m_[dst] = m.m_[src];
        }
    return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    require_same_field(a.field_, b.field_, "kron");
    Matrix r = Matrix::zeros(a.field_, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) {
            std::size_t ai = static_cast<std::size_t>(i) * a.cols_ + j;
            for (int k = 0; k < b.rows_; ++k)
                for (int l = 0; l < b.cols_; ++l) {
                    std::size_t bi = static_cast<std::size_t>(k) * b.cols_ + l;
                    std::size_t ri = static_cast<std::size_t>(i * b.rows_ + k) * r.cols_ +
                                     (j * b.cols_ + l);
                    if (a.field_.is_rationals())
                        r.q_[ri] = a.q_[ai] * b.q_[bi];
                    else
                        r.m_[ri] = mod_mul(a.m_[ai], b.m_[bi], a.field_.p());
                }
        }
    return r;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    require_same_field(a.field_, b.field_, "hstack");
    if (a.rows_ != b.rows_) fail(Err::Shape, "hstack: row counts differ");
    Matrix r = Matrix::zeros(a.field_, a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < r.cols_; ++j) {
            std::size_t dst = static_cast<std::size_t>(i) * r.cols_ + j;
            bool left = j < a.cols_;
            const Matrix& src = left ? a : b;
            std::size_t si = static_cast<std::size_t>(i) * src.cols_ + (left ? j : j - a.cols_);
            if (a.field_.is_rationals())
                r.q_[dst] = src.q_[si];
            else
                r.m_[dst] = src.m_[si];
        }
    return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    require_same_field(a.field_, b.field_, "vstack");
    if (a.cols_ != b.cols_) fail(Err::Shape, "vstack: column counts differ");
    Matrix r = Matrix::zeros(a.field_, a.rows_ + b.rows_, a.cols_);
    if (a.field_.is_rationals()) {
        std::copy(a.q_.begin(), a.q_.end(), r.q_.begin());
        std::copy(b.q_.begin(), b.q_.end(), r.q_.begin() + a.q_.size());
    } else {
        std::copy(a.m_.begin(), a.m_.end(), r.m_.begin());
        std::copy(b.m_.begin(), b.m_.end(), r.m_.begin() + a.m_.size());
    }
    return r;
}

Matrix block(const Matrix& m, int r0, int c0, int rows, int cols) {
    if (r0 < 0 || c0 < 0 || rows < 0 || cols < 0 || r0 + rows > m.rows_ || c0 + cols > m.cols_)
        fail(Err::Shape, "block: range out of bounds");
    Matrix r = Matrix::zeros(m.field_, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            std::size_t src = static_cast<std::size_t>(r0 + i) * m.cols_ + (c0 + j);
            std::size_t dst = static_cast<std::size_t>(i) * cols + j;
            if (m.field_.is_rationals())
                r.q_[dst] = m.q_[src];
            else
                r.m_[dst] = m.m_[src];
        }
    return r;
}

Scalar trace(const Matrix& m) {
    if (m.rows_ != m.cols_) fail(Err::Shape, "trace of non-square matrix");
    Scalar t = Scalar::zero(m.field_);
    for (int i = 0; i < m.rows_; ++i) t = t + m.at(i, i);
    return t;
}

Echelon rref(const Matrix& m) {
    Echelon e;
    e.reduced = m;
    if (m.field_.is_rationals())
        rref_core(QOps{}, e.reduced.q_, m.rows_, m.cols_, e.pivots);
    else
        rref_core(POps{m.field_.p()}, e.reduced.m_, m.rows_, m.cols_, e.pivots);
    return e;
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Matrix kernel_basis(const Matrix& m) {
    Echelon e = rref(m);
    std::vector<int> free_cols;
    {
        std::size_t pi = 0;
        for (int c = 0; c < m.cols_; ++c) {
            if (pi < e.pivots.size() && e.pivots[pi] == c)
                ++pi;
            else
                free_cols.push_back(c);
        }
    }
    Matrix k = Matrix::zeros(m.field_, m.cols_, static_cast<int>(free_cols.size()));
    for (int j = 0; j < static_cast<int>(free_cols.size()); ++j) {
        int fc = free_cols[j];
        k.set(fc, j, Scalar::one(m.field_));
        for (int pi = 0; pi < static_cast<int>(e.pivots.size()); ++pi)
            k.set(e.pivots[pi], j, -e.reduced.at(pi, fc));
    }
    return k;
}

std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b) {
    require_same_field(a.field_, b.field_, "solve");
    if (a.rows_ != b.rows_) fail(Err::Shape, "solve: row counts differ");
    Echelon e = rref(hstack(a, b));
    // Any pivot landing in the right block certifies inconsistency.
    for (int p : e.pivots)
        if (p >= a.cols_) return std::nullopt;
    Matrix x = Matrix::zeros(a.field_, a.cols_, b.cols_);
    for (int pi = 0; pi < static_cast<int>(e.pivots.size()); ++pi)
        for (int j = 0; j < b.cols_; ++j)
            x.set(e.pivots[pi], j, e.reduced.at(pi, a.cols_ + j));
    return x;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (b.cols_ != 1 && !(b.rows_ == a.rows_ && b.cols_ >= 0))
        fail(Err::Shape, "solve: right-hand side shape");
    return solve_matrix(a, b);
}

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
    auto xt = solve_matrix(transpose(a), transpose(b));
    if (!xt) return std::nullopt;
    return transpose(*xt);
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    require_same_field(a.field(), b.field(), "block_diag");
    Matrix top = hstack(a, Matrix::zeros(a.field(), a.rows(), b.cols()));
    Matrix bot = hstack(Matrix::zeros(a.field(), b.rows(), a.cols()), b);
    return vstack(top, bot);
}

void paste(Matrix& dst, int r0, int c0, const Matrix& src) {
    require_same_field(dst.field(), src.field(), "paste");
    if (r0 < 0 || c0 < 0 || r0 + src.rows() > dst.rows() || c0 + src.cols() > dst.cols())
        fail(Err::Shape, "paste: block out of range");
    for (int i = 0; i < src.rows(); ++i)
        for (int j = 0; j < src.cols(); ++j) dst.set(r0 + i, c0 + j, src.at(i, j));
}

}  // namespace ninefold
