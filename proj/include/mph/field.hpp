#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "mph/errors.hpp"

namespace mph {

using Integer = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace detail {

inline bool is_prime_u64(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace detail

// The ground field of a session: the rationals (characteristic 0) or a prime
// field F_p. All arithmetic in the library is exact; there is no floating
// point anywhere.
class FieldSpec {
public:
    FieldSpec() = default;  // rationals

    static FieldSpec rationals() { return FieldSpec(); }

    static FieldSpec prime_field(std::uint64_t p) {
        if (p >= (std::uint64_t{1} << 31))
            throw parse_error("prime field characteristic must be < 2^31");
        if (!detail::is_prime_u64(p))
            throw parse_error("field characteristic " + std::to_string(p) + " is not prime");
        FieldSpec f;
        f.p_ = p;
        return f;
    }

    // "q" for the rationals, "f<p>" for F_p (the syntax used in input files).
    static FieldSpec parse(const std::string& s) {
        if (s == "q" || s == "Q") return rationals();
        if (s.size() >= 2 && (s[0] == 'f' || s[0] == 'F')) {
            std::uint64_t p = 0;
            for (std::size_t i = 1; i < s.size(); ++i) {
                if (s[i] < '0' || s[i] > '9') throw parse_error("bad field spec '" + s + "'");
                p = p * 10 + (s[i] - '0');
                if (p >= (std::uint64_t{1} << 31)) throw parse_error("field characteristic too large");
            }
            return prime_field(p);
        }
        throw parse_error("bad field spec '" + s + "' (expected 'q' or 'f<p>')");
    }

    bool is_rationals() const { return p_ == 0; }
    std::uint64_t characteristic() const { return p_; }

    std::string str() const { return p_ == 0 ? "q" : "f" + std::to_string(p_); }

    bool operator==(const FieldSpec& o) const { return p_ == o.p_; }
    bool operator!=(const FieldSpec& o) const { return p_ != o.p_; }

private:
    std::uint64_t p_ = 0;
};

// An exact field element. Rationals are kept in lowest terms with positive
// denominator (boost::multiprecision canonicalizes); prime-field values live
// in [0, p) with machine-word arithmetic.
class Scalar {
public:
    Scalar() = default;  // rational zero; use the factories for a real field

    static Scalar zero(const FieldSpec& f) { return of_int(f, 0); }
    static Scalar one(const FieldSpec& f) { return of_int(f, 1); }

    static Scalar of_int(const FieldSpec& f, long long n) {
        Scalar s;
        s.p_ = f.characteristic();
        if (s.p_ == 0) {
            s.q_ = n;
        } else {
            long long m = n % static_cast<long long>(s.p_);
            if (m < 0) m += static_cast<long long>(s.p_);
            s.v_ = static_cast<std::uint64_t>(m);
        }
        return s;
    }

    static Scalar of_integer(const FieldSpec& f, const Integer& n) {
        Scalar s;
        s.p_ = f.characteristic();
        if (s.p_ == 0) {
            s.q_ = BigRational(n);
        } else {
            Integer m = n % Integer(s.p_);
            if (m < 0) m += Integer(s.p_);
            s.v_ = static_cast<std::uint64_t>(m);
        }
        return s;
    }

    // num/den; den must be invertible in the field.
    static Scalar of_fraction(const FieldSpec& f, const Integer& num, const Integer& den) {
        if (den == 0) throw parse_error("zero denominator in scalar");
        if (f.is_rationals()) {
            Scalar s;
            s.q_ = BigRational(num, den);
            return s;
        }
        Scalar d = of_integer(f, den);
        if (d.is_zero())
            throw parse_error("denominator " + den.str() + " vanishes in characteristic " +
                              std::to_string(f.characteristic()));
        return of_integer(f, num) * d.inverse();
    }

    FieldSpec field() const {
        return p_ == 0 ? FieldSpec::rationals() : FieldSpec::prime_field(p_);
    }

    bool is_zero() const { return p_ == 0 ? q_.is_zero() : v_ == 0; }
    bool is_one() const { return p_ == 0 ? q_ == 1 : v_ == 1; }

    Scalar operator+(const Scalar& o) const {
        same_field(o);
        Scalar s(*this);
        if (p_ == 0) {
            s.q_ += o.q_;
        } else {
            s.v_ = v_ + o.v_;
            if (s.v_ >= p_) s.v_ -= p_;
        }
        return s;
    }

    Scalar operator-(const Scalar& o) const {
        same_field(o);
        Scalar s(*this);
        if (p_ == 0) {
            s.q_ -= o.q_;
        } else {
            s.v_ = v_ + p_ - o.v_;
            if (s.v_ >= p_) s.v_ -= p_;
        }
        return s;
    }

    Scalar operator-() const {
        Scalar s(*this);
        if (p_ == 0)
            s.q_ = -q_;
        else if (v_ != 0)
            s.v_ = p_ - v_;
        return s;
    }

    Scalar operator*(const Scalar& o) const {
        same_field(o);
        Scalar s(*this);
        if (p_ == 0) {
            s.q_ *= o.q_;
        } else {
            unsigned __int128 prod = static_cast<unsigned __int128>(v_) * o.v_;
            s.v_ = static_cast<std::uint64_t>(prod % p_);
        }
        return s;
    }

    Scalar inverse() const {
        check(!is_zero(), "inverse of zero scalar");
        Scalar s(*this);
        if (p_ == 0) {
            s.q_ = 1 / q_;
        } else {
            // extended Euclid on (v, p)
            std::int64_t t = 0, newt = 1;
            std::int64_t r = static_cast<std::int64_t>(p_), newr = static_cast<std::int64_t>(v_);
            while (newr != 0) {
                std::int64_t qq = r / newr;
                std::int64_t tmp = t - qq * newt;
                t = newt;
                newt = tmp;
                tmp = r - qq * newr;
                r = newr;
                newr = tmp;
            }
            check(r == 1, "gcd(v, p) != 1 in prime field");
            if (t < 0) t += static_cast<std::int64_t>(p_);
            s.v_ = static_cast<std::uint64_t>(t);
        }
        return s;
    }

    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const {
        if (p_ != o.p_) return false;
        return p_ == 0 ? q_ == o.q_ : v_ == o.v_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // rationals print as "p/q" (or "p" when integral); F_p values as integers
    std::string str() const {
        if (p_ == 0) return q_.str();
        return std::to_string(v_);
    }

    const BigRational& rational_value() const {
        check(p_ == 0, "rational_value on prime-field scalar");
        return q_;
    }

private:
    void same_field(const Scalar& o) const {
        if (p_ != o.p_) throw invariant_error("scalar field mismatch");
    }

    BigRational q_;
    std::uint64_t v_ = 0;
    std::uint64_t p_ = 0;
};

}  // namespace mph
