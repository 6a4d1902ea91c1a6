#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "binaryweyl/errors.hpp"

namespace bw {

// Arbitrary-precision rational in canonical form (gcd 1, positive denominator).
// Thin value wrapper over GMP's mpq.
class Rational {
  public:
    Rational() : q_(0) {}
    Rational(long n) : q_(static_cast<signed long>(n)) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : q_(n) {}                             // NOLINT(google-explicit-constructor)
    Rational(long num, long den) {
        if (den == 0) throw DomainError("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    // Accepts "p", "p/q" and decimal literals like "-3.25"; decimals parse exactly.
    static Rational parse(std::string_view text);

    Rational operator-() const { return Rational(mpq_class(-q_), NoCanon{}); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.q_ == 0) throw DomainError("rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational pow_int(long e) const;
    Rational abs() const { return Rational(mpq_class(::abs(q_)), NoCanon{}); }
    int sign() const { return sgn(q_); }
    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    // Requires is_integer() and a value fitting in long.
    long to_long() const;
    double to_double() const { return q_.get_d(); }
    std::string str() const { return q_.get_str(); }  // "p" or "p/q"

  private:
    struct NoCanon {};
    Rational(mpq_class q, NoCanon) : q_(std::move(q)) {}
    mpq_class q_;
};

inline Rational Rational::pow_int(long e) const {
    if (e == 0) return Rational(1);
    bool invert = e < 0;
    unsigned long ue = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (invert && q_ == 0) throw DomainError("zero raised to a negative power");
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q_.get_num().get_mpz_t(), ue);
    mpz_pow_ui(den.get_mpz_t(), q_.get_den().get_mpz_t(), ue);
    mpq_class r(invert ? den : num, invert ? num : den);
    r.canonicalize();
    return Rational(std::move(r), NoCanon{});
}

inline long Rational::to_long() const {
    if (!is_integer()) throw DomainError("rational " + str() + " is not an integer");
    if (!q_.get_num().fits_slong_p()) throw DomainError("integer too large for long");
    return q_.get_num().get_si();
}

inline Rational Rational::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty numeric literal", 0);
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'", 0);
        if (q.get_den() == 0) throw DomainError("rational with zero denominator");
        q.canonicalize();
        return Rational(std::move(q), NoCanon{});
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        mpz_class z;
        if (z.set_str(s, 10) != 0) throw ParseError("malformed integer '" + s + "'", 0);
        return Rational(mpq_class(z), NoCanon{});
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
        throw ParseError("malformed decimal '" + s + "'", 0);
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw ParseError("malformed decimal '" + s + "'", 0);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q), NoCanon{});
}

}  // namespace bw
