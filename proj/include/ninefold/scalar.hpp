#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ninefold {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Every failure the library can raise carries one of these tags so callers
// (and the CLI exit-code mapping) can tell input problems apart from broken
// mathematical contracts.
enum class Err {
    Parse,          // malformed document / flag
    Shape,          // dimension bookkeeping violated
    FieldMismatch,  // operands live over different fields
    Validation,     // structural invariant fails (d^2 != 0, not a chain map, ...)
    Witness,        // witness present but incompatible with the maps
    NotExact,       // a triangle/square fails exactness where it is required
    Completion,     // lower-diagram completion impossible on this input
    Naturality,     // induced maps fail to commute / correction unsolvable
    Construction,   // derived object violates its own contract
    Domain,         // division by zero, bad modulus, ...
};

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

// Coefficient field: the rationals, or Z/p for an odd-or-even prime p < 2^31.
class FieldSpec {
public:
    enum class Kind { Rationals, Prime };

    FieldSpec() : kind_(Kind::Rationals), p_(0) {}
    static FieldSpec rationals() { return FieldSpec(); }
    static FieldSpec prime(std::uint32_t p);

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::Rationals; }
    bool is_prime() const { return kind_ == Kind::Prime; }
    std::uint32_t p() const { return p_; }

    bool operator==(const FieldSpec& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    // "Q" or "F<p>", both ways.
    std::string str() const;
    static FieldSpec parse(const std::string& text);

private:
    Kind kind_;
    std::uint32_t p_;
};

void require_same_field(const FieldSpec& a, const FieldSpec& b, const char* where);

// Arithmetic on residues mod p (p < 2^31, products stay inside uint64).
std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_neg(std::uint64_t a, std::uint64_t p);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);  // Err::Domain on 0

// One field element, boxed together with its field so mixed-field use is
// detectable at every operation. Rationals are kept canonical (gcd 1,
// positive denominator) by cpp_rational itself; residues canonical in [0,p).
class Scalar {
public:
    Scalar() : field_(FieldSpec::rationals()), q_(0), r_(0) {}

    static Scalar zero(const FieldSpec& f) { return from_int(0, f); }
    static Scalar one(const FieldSpec& f) { return from_int(1, f); }
    static Scalar from_int(long long n, const FieldSpec& f);
    static Scalar rational(BigRat q);
    static Scalar residue(std::uint64_t v, const FieldSpec& f);

    const FieldSpec& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    // Canonical decimal text: "a" or "a/b" over Q, the residue over F_p.
    std::string str() const;
    static Scalar parse(const std::string& text, const FieldSpec& f);

    const BigRat& rat() const { return q_; }
    std::uint64_t res() const { return r_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;  // Err::Domain on zero divisor
    Scalar operator-() const;
    Scalar inv() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

private:
    FieldSpec field_;
    BigRat q_;
    std::uint64_t r_;
};

}  // namespace ninefold
