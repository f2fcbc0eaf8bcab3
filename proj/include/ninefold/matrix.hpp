#pragma once

#include <optional>
#include <vector>

#include "ninefold/scalar.hpp"

namespace ninefold {

class Matrix;
struct Echelon;

// Dense matrix over a runtime-chosen exact field. Storage is field-tagged:
// one flat row-major buffer of rationals, or one of residues, never boxed
// per entry. Zero-dimensional shapes (0 x n, n x 0) are first-class — the
// ends of a bounded complex produce them constantly.
class Matrix {
public:
    Matrix() : field_(FieldSpec::rationals()), rows_(0), cols_(0) {}

    static Matrix zeros(const FieldSpec& f, int rows, int cols);
    static Matrix identity(const FieldSpec& f, int n);
    // Row-major integer literals, reduced into the field. Shape is taken from
    // the nested list; all rows must agree.
    static Matrix from_rows(const FieldSpec& f, const std::vector<std::vector<long long>>& rows);

    const FieldSpec& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar at(int r, int c) const;
    void set(int r, int c, const Scalar& v);

    bool is_zero() const;
    bool is_identity() const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix operator*(const Matrix& o) const;

    friend Matrix scale(const Scalar& c, const Matrix& m);
    friend Matrix transpose(const Matrix& m);
    friend Matrix kron(const Matrix& a, const Matrix& b);
    friend Matrix hstack(const Matrix& a, const Matrix& b);
    friend Matrix vstack(const Matrix& a, const Matrix& b);
    friend Matrix block(const Matrix& m, int r0, int c0, int rows, int cols);
    friend Scalar trace(const Matrix& m);

    // Gauss-Jordan with the topmost-nonzero pivot rule: deterministic, and the
    // reduced form is the canonical representative of the row space.
    friend Echelon rref(const Matrix& m);
    friend int rank(const Matrix& m);
    // Columns form the canonical kernel basis: one vector per free column,
    // carrying 1 in its free slot and 0 in the other free slots.
    friend Matrix kernel_basis(const Matrix& m);
    // A x = b with free variables pinned to zero; nullopt when inconsistent.
    friend std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
    // A X = B column by column (same pinning); X A = B via solve_left.
    friend std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b);
    friend std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);

private:
    void check_index(int r, int c) const;

    FieldSpec field_;
    int rows_, cols_;
    std::vector<BigRat> q_;        // used iff field is Q
    std::vector<std::uint64_t> m_; // used iff field is F_p
};

Matrix scale(const Scalar& c, const Matrix& m);
Matrix transpose(const Matrix& m);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block(const Matrix& m, int r0, int c0, int rows, int cols);
Scalar trace(const Matrix& m);

struct Echelon {
    Matrix reduced;           // the RREF itself
    std::vector<int> pivots;  // pivot column per pivot row, ascending
};

Echelon rref(const Matrix& m);
int rank(const Matrix& m);
Matrix kernel_basis(const Matrix& m);
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b);
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);

// Direct sum placement diag(a, b).
Matrix block_diag(const Matrix& a, const Matrix& b);

// Copies src into dst with upper-left corner at (r0, c0).
void paste(Matrix& dst, int r0, int c0, const Matrix& src);

}  // namespace ninefold
