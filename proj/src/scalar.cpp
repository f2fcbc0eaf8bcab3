#include "ninefold/scalar.hpp"

#include <charconv>

namespace ninefold {

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t acc = 1;
    base %= p;
    while (exp) {
        if (exp & 1) acc = acc * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return acc;
}

// Deterministic Miller-Rabin; the bases 2,3,5,7 decide primality for every
// n < 3,215,031,751, which covers the whole admissible range p < 2^31.
bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint32_t p) {
    if (p >= (1u << 31) || !is_prime_u32(p))
        fail(Err::Domain, "field modulus must be a prime below 2^31, got " + std::to_string(p));
    FieldSpec f;
    f.kind_ = Kind::Prime;
    f.p_ = p;
    return f;
}

std::string FieldSpec::str() const {
    return is_rationals() ? "Q" : "F" + std::to_string(p_);
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "Q") return rationals();
    if (text.size() >= 2 && text[0] == 'F') {
        std::uint32_t p = 0;
        auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), p);
        if (ec == std::errc() && ptr == text.data() + text.size()) return prime(p);
    }
    fail(Err::Parse, "unrecognized field '" + text + "' (expected Q or F<p>)");
}

void require_same_field(const FieldSpec& a, const FieldSpec& b, const char* where) {
    if (a != b)
        fail(Err::FieldMismatch,
             std::string(where) + ": fields differ (" + a.str() + " vs " + b.str() + ")");
}

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

std::uint64_t mod_neg(std::uint64_t a, std::uint64_t p) { return a == 0 ? 0 : p - a; }

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    if (a == 0) fail(Err::Domain, "division by zero in F" + std::to_string(p));
    // Extended Euclid on (a, p); p prime so gcd is 1.
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

Scalar Scalar::from_int(long long n, const FieldSpec& f) {
    Scalar s;
    s.field_ = f;
    if (f.is_rationals()) {
        s.q_ = BigRat(n);
    } else {
        long long m = n % static_cast<long long>(f.p());
        if (m < 0) m += f.p();
        s.r_ = static_cast<std::uint64_t>(m);
    }
    return s;
}

Scalar Scalar::rational(BigRat q) {
    Scalar s;
    s.field_ = FieldSpec::rationals();
    s.q_ = std::move(q);
    return s;
}

Scalar Scalar::residue(std::uint64_t v, const FieldSpec& f) {
    if (!f.is_prime()) fail(Err::Domain, "residue scalar requires a prime field");
    Scalar s;
    s.field_ = f;
    s.r_ = v % f.p();
    return s;
}

bool Scalar::is_zero() const { return field_.is_rationals() ? q_.is_zero() : r_ == 0; }

bool Scalar::is_one() const { return field_.is_rationals() ? q_ == 1 : r_ == 1; }

std::string Scalar::str() const {
    if (field_.is_rationals()) return q_.str();
    return std::to_string(r_);
}

Scalar Scalar::parse(const std::string& text, const FieldSpec& f) {
    if (text.empty()) fail(Err::Parse, "empty scalar literal");
    try {
        if (f.is_rationals()) {
            Scalar s;
            s.field_ = f;
            auto slash = text.find('/');
            if (slash == std::string::npos) {
                s.q_ = BigRat(BigInt(text));
            } else {
                BigInt num(text.substr(0, slash));
                BigInt den(text.substr(slash + 1));
                if (den.is_zero()) fail(Err::Parse, "zero denominator in '" + text + "'");
                if (den < 0) {  // the two-argument constructor insists on den > 0
                    num = -num;
                    den = -den;
                }
                s.q_ = BigRat(num, den);  // constructor normalizes the gcd
            }
            return s;
        }
        std::size_t pos = 0;
        bool neg = text[0] == '-';
        long long mag = std::stoll(neg ? text.substr(1) : text, &pos);
        if (pos != (neg ? text.size() - 1 : text.size())) fail(Err::Parse, "trailing junk");
        return from_int(neg ? -mag : mag, f);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(Err::Parse, "bad scalar literal '" + text + "' over " + f.str());
    }
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_field(field_, o.field_, "scalar +");
    Scalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.q_ = q_ + o.q_;
    else
        s.r_ = mod_add(r_, o.r_, field_.p());
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_same_field(field_, o.field_, "scalar -");
    Scalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.q_ = q_ - o.q_;
    else
        s.r_ = mod_sub(r_, o.r_, field_.p());
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_field(field_, o.field_, "scalar *");
    Scalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.q_ = q_ * o.q_;
    else
        s.r_ = mod_mul(r_, o.r_, field_.p());
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::operator-() const {
    Scalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.q_ = -q_;
    else
        s.r_ = mod_neg(r_, field_.p());
    return s;
}

Scalar Scalar::inv() const {
    Scalar s;
    s.field_ = field_;
    if (field_.is_rationals()) {
        if (q_.is_zero()) fail(Err::Domain, "division by zero in Q");
        s.q_ = 1 / q_;
    } else {
        s.r_ = mod_inv(r_, field_.p());
    }
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    if (field_ != o.field_) return false;
    return field_.is_rationals() ? q_ == o.q_ : r_ == o.r_;
}

}  // namespace ninefold
