#pragma once

/*
 * Exact coefficient fields for the linear algebra oracle.
 *
 * Rational is the default and is what every acceptance check runs over.
 * PrimeField is an optional mod-p field, p >= 5, selected at runtime via
 * the GENTLE_FIELD environment variable (rationals | gf:<p>).
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gentle {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& x) { return x.str(); }

// Fixed-modulus prime field. Modulus is a process-wide runtime constant.
class PrimeField {
public:
    PrimeField() : v_(0) {}
    PrimeField(long long x) {
        long long p = modulus();
        long long r = x % p;
        if (r < 0) r += p;
        v_ = r;
    }

    static void set_modulus(long long p) {
        if (p < 5) throw std::invalid_argument("prime field modulus must be >= 5");
        for (long long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("prime field modulus must be prime");
        modulus_ref() = p;
    }
    static long long modulus() { return modulus_ref(); }

    bool is_zero() const { return v_ == 0; }
    long long value() const { return v_; }

    PrimeField operator-() const { return v_ == 0 ? PrimeField(0) : raw(modulus() - v_); }
    PrimeField& operator+=(const PrimeField& o) {
        v_ += o.v_;
        if (v_ >= modulus()) v_ -= modulus();
        return *this;
    }
    PrimeField& operator-=(const PrimeField& o) {
        v_ -= o.v_;
        if (v_ < 0) v_ += modulus();
        return *this;
    }
    PrimeField& operator*=(const PrimeField& o) {
        v_ = (v_ * o.v_) % modulus();
        return *this;
    }
    PrimeField& operator/=(const PrimeField& o) { return *this *= o.inverse(); }

    PrimeField inverse() const {
        if (v_ == 0) throw std::domain_error("division by zero in prime field");
        // extended Euclid
        long long a = v_, b = modulus(), x0 = 1, x1 = 0;
        while (b != 0) {
            long long q = a / b;
            long long t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return PrimeField(x0);
    }

    friend PrimeField operator+(PrimeField a, const PrimeField& b) { return a += b; }
    friend PrimeField operator-(PrimeField a, const PrimeField& b) { return a -= b; }
    friend PrimeField operator*(PrimeField a, const PrimeField& b) { return a *= b; }
    friend PrimeField operator/(PrimeField a, const PrimeField& b) { return a /= b; }
    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.v_ == b.v_; }
    friend bool operator!=(const PrimeField& a, const PrimeField& b) { return a.v_ != b.v_; }

private:
    static PrimeField raw(long long v) {
        PrimeField f;
        f.v_ = v;
        return f;
    }
    static long long& modulus_ref() {
        static long long p = 5;
        return p;
    }
    long long v_;
};

inline std::string to_string(const PrimeField& x) { return std::to_string(x.value()); }

template <typename F>
struct field_traits {
    static F zero() { return F(0); }
    static F one() { return F(1); }
    static bool is_zero(const F& x) { return x == F(0); }
};

template <typename F>
inline F from_rational(const Rational& x);

template <>
inline Rational from_rational<Rational>(const Rational& x) {
    return x;
}

template <>
inline PrimeField from_rational<PrimeField>(const Rational& x) {
    using boost::multiprecision::cpp_int;
    long long p = PrimeField::modulus();
    cpp_int num = boost::multiprecision::numerator(x) % p;
    cpp_int den = boost::multiprecision::denominator(x) % p;
    PrimeField n(static_cast<long long>(num));
    PrimeField d(static_cast<long long>(den));
    if (d.is_zero()) throw std::domain_error("rational has no image in the prime field");
    return n / d;
}

} // namespace gentle
