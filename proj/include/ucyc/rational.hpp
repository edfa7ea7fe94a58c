#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucyc {

using Int = mpz_class;

/// Thrown when an input violates a documented precondition or invariant.
class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a computation would exceed the configured resource cap.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arbitrary-precision rational, always reduced, denominator > 0.
///
/// mpq_class does not canonicalize values built from a numerator/denominator
/// pair, so every constructor here funnels through canonicalize().
class Rational {
public:
    Rational() : q_(0) {}
    Rational(int v) : q_(v) {}
    Rational(long v) : q_(static_cast<long>(v)) {}
    Rational(const Int& v) : q_(v) {}
    Rational(const Int& num, const Int& den) : q_(num, den) {
        if (den == 0) throw domain_error("Rational: zero denominator");
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(Int(num), Int(den)) {}
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    const Int num() const { return q_.get_num(); }
    const Int den() const { return q_.get_den(); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

private:
    mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// n! as an exact integer.
inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Exact simplex moment: the integral of s_0^{m_0} ... s_k^{m_k} over the
/// standard k-simplex equals m_0! ... m_k! / (k + sum m_i)!.
inline Rational simplex_moment(const std::vector<unsigned long>& powers) {
    Int num = 1;
    unsigned long total = 0;
    for (unsigned long m : powers) {
        num *= factorial(m);
        total += m;
    }
    Int den = factorial(static_cast<unsigned long>(powers.size() - 1) + total);
    return Rational(num, den);
}

}  // namespace ucyc
