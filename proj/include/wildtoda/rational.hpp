#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace wildtoda {

// Exact rational scalar used everywhere arithmetic must be exact.
// Arbitrary-precision numerator/denominator, always normalized.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using VecQ = std::vector<Rat>;

inline Rat rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rat(num, den);
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Machine-readable form: always "p/q", including a unit denominator.
inline std::string to_pq_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Human form: omits "/1".
inline std::string to_short_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return to_pq_string(r);
}

// Accepts "p/q" or a bare integer "p".
inline Rat rat_from_string(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational: '" + s + "'");
    }
}

inline Rat dot(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat norm_sq(const VecQ& v) { return dot(v, v); }

inline Rat sum(const VecQ& v) {
    Rat s = 0;
    for (const auto& x : v) s += x;
    return s;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

} // namespace wildtoda
