// Exact rational scalars, points, and deterministic random draws.
//
// Every geometric predicate in this library is evaluated over
// boost::multiprecision::cpp_rational; nothing is ever rounded.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace plink {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using Point = std::vector<Rational>;

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rational(num, den);
}

inline std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline Point sub(const Point& a, const Point& b) {
    Point out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline Point add(const Point& a, const Point& b) {
    Point out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline Point scale(const Rational& c, const Point& a) {
    Point out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

// Deterministic RNG. mt19937_64 has a fully specified sequence; the bounded
// draw below avoids std::uniform_int_distribution, whose output is
// implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [lo, hi], inclusive, via rejection sampling.
    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("int_in: empty range");
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());  // full range
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<std::int64_t>(v % span);
    }

  private:
    std::mt19937_64 eng_;
};

// FNV-1a, used to derive reproducible seeds from serialized geometry.
inline std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace plink
