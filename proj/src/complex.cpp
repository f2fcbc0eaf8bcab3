#include "ninefold/complex.hpp"

#include <string>

namespace ninefold {

ChainComplex ChainComplex::zero(const FieldSpec& f) {
    ChainComplex c;
    c.field_ = f;
    return c;
}

ChainComplex ChainComplex::concentrated(const FieldSpec& f, int deg, int rank) {
    if (rank < 0) fail(Err::Shape, "negative rank");
    if (rank == 0) return zero(f);
    return ChainComplex(f, deg, {rank}, {});
}

ChainComplex::ChainComplex(const FieldSpec& f, int min_deg, std::vector<int> ranks,
                           std::vector<Matrix> diffs)
    : field_(f), min_deg_(min_deg), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
    if (!ranks_.empty() && diffs_.size() != ranks_.size() - 1)
        fail(Err::Shape, "complex needs one differential per adjacent degree pair");
    for (int r : ranks_)
        if (r < 0) fail(Err::Shape, "negative rank");
    for (std::size_t i = 0; i < diffs_.size(); ++i) {
        const Matrix& m = diffs_[i];
        require_same_field(field_, m.field(), "complex differential");
        if (m.rows() != ranks_[i + 1] || m.cols() != ranks_[i])
            fail(Err::Shape, "differential out of degree " + std::to_string(min_deg_ + (int)i) +
                                 " has shape " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + ", expected " +
                                 std::to_string(ranks_[i + 1]) + "x" + std::to_string(ranks_[i]));
    }
    for (std::size_t i = 0; i + 1 < diffs_.size(); ++i)
        if (!(diffs_[i + 1] * diffs_[i]).is_zero())
            fail(Err::Validation, "d*d != 0 out of degree " + std::to_string(min_deg_ + (int)i));
    trim();
}

void ChainComplex::trim() {
    while (!ranks_.empty() && ranks_.back() == 0) {
        ranks_.pop_back();
        if (!diffs_.empty()) diffs_.pop_back();
    }
    while (!ranks_.empty() && ranks_.front() == 0) {
        ranks_.erase(ranks_.begin());
        if (!diffs_.empty()) diffs_.erase(diffs_.begin());
        ++min_deg_;
    }
    if (ranks_.empty()) min_deg_ = 0;
}

int ChainComplex::rank(int n) const {
    int i = n - min_deg_;
    if (i < 0 || i >= static_cast<int>(ranks_.size())) return 0;
    return ranks_[i];
}

Matrix ChainComplex::d(int n) const {
    int i = n - min_deg_;
    if (i >= 0 && i < static_cast<int>(diffs_.size())) return diffs_[i];
    return Matrix::zeros(field_, rank(n + 1), rank(n));
}

int ChainComplex::total_rank() const {
    int t = 0;
    for (int r : ranks_) t += r;
    return t;
}

bool ChainComplex::operator==(const ChainComplex& o) const {
    return field_ == o.field_ && min_deg_ == o.min_deg_ && ranks_ == o.ranks_ &&
           diffs_ == o.diffs_;
}

ChainComplex shift(const ChainComplex& x, int k) {
    if (x.is_zero_complex() || k == 0) {
        ChainComplex c = x;
        return c;
    }
    std::vector<int> ranks;
    std::vector<Matrix> diffs;
    for (int n = x.min_deg(); n <= x.max_deg(); ++n) ranks.push_back(x.rank(n));
    bool flip = k % 2 != 0;
    for (int n = x.min_deg(); n < x.max_deg(); ++n)
        diffs.push_back(flip ? -x.d(n) : x.d(n));
    return ChainComplex(x.field(), x.min_deg() - k, std::move(ranks), std::move(diffs));
}

ChainComplex direct_sum(const ChainComplex& x, const ChainComplex& y) {
    require_same_field(x.field(), y.field(), "direct_sum");
    if (x.is_zero_complex()) return y;
    if (y.is_zero_complex()) return x;
    int lo = std::min(x.min_deg(), y.min_deg());
    int hi = std::max(x.max_deg(), y.max_deg());
    std::vector<int> ranks;
    std::vector<Matrix> diffs;
    for (int n = lo; n <= hi; ++n) ranks.push_back(x.rank(n) + y.rank(n));
    for (int n = lo; n < hi; ++n) diffs.push_back(block_diag(x.d(n), y.d(n)));
    return ChainComplex(x.field(), lo, std::move(ranks), std::move(diffs));
}

std::map<int, int> homology_dims(const ChainComplex& x) {
    std::map<int, int> h;
    for (int n = x.min_deg(); n <= x.max_deg(); ++n) {
        int cycles = x.rank(n) - rank(x.d(n));
        int boundaries = rank(x.d(n - 1));
        h[n] = cycles - boundaries;
    }
    return h;
}

bool is_acyclic(const ChainComplex& x) {
    for (auto& [n, dim] : homology_dims(x))
        if (dim != 0) return false;
    return true;
}

Scalar euler_characteristic(const ChainComplex& x) {
    Scalar chi = Scalar::zero(x.field());
    for (int n = x.min_deg(); n <= x.max_deg(); ++n) {
        Scalar term = Scalar::from_int(x.rank(n), x.field());
        chi = (n % 2 == 0) ? chi + term : chi - term;
    }
    return chi;
}

ChainComplex random_complex(Rng& rng, const FieldSpec& f, int min_deg, int max_deg,
                            int max_rank) {
    if (max_deg < min_deg) return ChainComplex::zero(f);
    std::vector<int> ranks;
    for (int n = min_deg; n <= max_deg; ++n) ranks.push_back(rng.range(0, max_rank));
    std::vector<Matrix> diffs;
    for (std::size_t i = 0; i + 1 < ranks.size(); ++i) {
        if (i == 0 || diffs.back().is_zero()) {
            diffs.push_back(rng.matrix(f, ranks[i + 1], ranks[i]));
            continue;
        }
        // d_next must kill the column space of d_prev: draw the transpose of
        // d_next from the span of ker(d_prev^T).
        Matrix k = kernel_basis(transpose(diffs.back()));
        Matrix coeff = rng.matrix(f, k.cols(), ranks[i + 1]);
        diffs.push_back(transpose(k * coeff));
    }
    return ChainComplex(f, min_deg, std::move(ranks), std::move(diffs));
}

}  // namespace ninefold
