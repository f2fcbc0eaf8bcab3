#pragma once

#include <optional>
#include <vector>

#include "ninefold/matrix.hpp"
#include "ninefold/rng.hpp"

namespace ninefold {

// Linear system whose unknowns are matrices and whose equations are sums of
// two-sided products  sum_t  L_t * U_{b_t} * R_t = C.  Everything is
// flattened row-major, the two-sided product becoming kron(L, R^T), and the
// assembled system is solved exactly. Used wherever a degreewise family of
// matrix equations must be solved or sampled jointly (homotopies, morphisms
// of filtered objects, correction blocks of induced triangle maps).
class LinSys {
public:
    explicit LinSys(const FieldSpec& f) : field_(f) {}

    // Declares a matrix unknown; returns its handle.
    int add_unknown(int rows, int cols);

    // Starts the equation "... = rhs"; terms are added below.
    void begin_equation(const Matrix& rhs);
    // Adds L * U_b * R to the currently open equation.
    void add_term(int unknown, const Matrix& left, const Matrix& right);
    // Convenience for L * U_b (right identity) and U_b * R (left identity).
    void add_left_term(int unknown, const Matrix& left);
    void add_right_term(int unknown, const Matrix& right);

    // Canonical solution (free coordinates zero); nullopt if inconsistent.
    std::optional<std::vector<Matrix>> solve() const;
    // Particular solution plus a random element of the homogeneous space;
    // the system must be consistent.
    std::optional<std::vector<Matrix>> sample(Rng& rng) const;

private:
    struct Shape {
        int rows, cols;
    };
    struct Equation {
        Matrix rhs_flat;  // column vector, rows*cols of the equation shape
        int rows, cols;
        std::vector<std::pair<int, Matrix>> terms;  // (unknown, kron(L, R^T))
    };
    std::pair<Matrix, Matrix> materialize() const;  // (A, b)
    std::vector<Matrix> unflatten(const Matrix& coords) const;

    FieldSpec field_;
    std::vector<Shape> unknowns_;
    std::vector<Equation> equations_;
};

// Row-major flattening of a matrix into a single column, and back.
Matrix flatten(const Matrix& m);
Matrix unflatten(const Matrix& column, const FieldSpec& f, int rows, int cols);

}  // namespace ninefold
