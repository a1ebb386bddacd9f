#pragma once

// Exact scalar types and small vector helpers shared by every module.

#include <algorithm>
#include <boost/multiprecision/gmp.hpp>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polystrata {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Malformed input: wrong dimensions, violated preconditions, bad JSON.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Well-formed input that exceeds a documented desk-scale limit.
class RefusedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Integer& z) { return z.sign(); }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm(const Integer& a, const Integer& b) { return boost::multiprecision::lcm(a, b); }

/// Largest integer not exceeding q.
inline Integer floor(const Rational& q) {
    Integer n = numerator(q);
    Integer d = denominator(q);
    Integer quot = n / d;  // truncates toward zero
    if (n.sign() < 0 && quot * d != n) quot -= 1;
    return quot;
}

inline Integer ceil(const Rational& q) { return -floor(-q); }

/// "p" for integers, "p/q" otherwise. Lowest terms are guaranteed by GMP.
inline std::string to_string(const Rational& q) {
    if (is_integral(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

inline Integer parse_integer(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw InputError("empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw InputError("bad integer literal: " + s);
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw InputError("bad integer literal: " + s);
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s);
}

/// Accepts "p", "-p" and "p/q" with q != 0.
inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in " + std::string(text));
    return Rational(num, den);
}

inline RatVector to_rational(const IntVector& v) {
    RatVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

inline bool is_integral(const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_integral(q); });
}

/// Precondition: every entry integral.
inline IntVector to_integer(const RatVector& v) {
    IntVector out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!is_integral(x)) throw InputError("expected integral coordinates, got " + to_string(x));
        out.push_back(numerator(x));
    }
    return out;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    T s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <class T>
std::vector<T> operator+(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

template <class T>
std::vector<T> operator-(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

template <class T, class S>
std::vector<T> scaled(const std::vector<T>& a, const S& s) {
    std::vector<T> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

/// Scale a rational vector to the primitive integer vector on the same ray.
inline IntVector primitive(const RatVector& v) {
    Integer den = 1;
    for (const auto& x : v) den = lcm(den, denominator(x));
    IntVector out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = numerator(v[i] * den);
        g = gcd(g, out[i]);
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

inline IntVector primitive(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    if (g <= 1) return v;
    IntVector out(v);
    for (auto& x : out) x /= g;
    return out;
}

inline IntVector unit_vector(std::size_t n, std::size_t i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    return e;
}

}  // namespace polystrata
