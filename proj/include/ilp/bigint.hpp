#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ilp {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt binomial(const BigInt& n, const BigInt& k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    BigInt kk = k > n - k ? n - k : k;
    for (BigInt i = 0; i < kk; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

inline BigInt binomial(size_t n, size_t k) { return binomial(BigInt(n), BigInt(k)); }

}  // namespace ilp
