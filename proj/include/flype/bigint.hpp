#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace flype {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

// log of a positive big integer, usable far past the double overflow range.
inline double log_big(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log_big: nonpositive argument");
    unsigned bits = boost::multiprecision::msb(x);
    if (bits < 512) return std::log(x.convert_to<double>());
    BigInt top = x >> (bits - 256);
    return std::log(top.convert_to<double>()) + (bits - 256) * std::log(2.0);
}

inline BigInt exact_div(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0) throw std::logic_error("exact_div: remainder nonzero");
    return q;
}

}  // namespace flype
