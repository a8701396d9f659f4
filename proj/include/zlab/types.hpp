#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zlab {

using BigInt = boost::multiprecision::cpp_int;
using i64 = std::int64_t;
using u64 = std::uint64_t;

// Error categories. The CLI maps invariant_failure to exit code 2 and the
// rest to exit code 1.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct capacity_error : std::length_error {
    using std::length_error::length_error;
};

struct invariant_failure : std::logic_error {
    using std::logic_error::logic_error;
};

// Largest modulus accepted by the 64-bit kernels; products of two residues
// stay below 2^62.
inline constexpr i64 kMaxModulus = (i64{1} << 31) - 1;

inline i64 gcd64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i64 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

inline i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<__int128>(mod_floor(a, m)) * mod_floor(b, m) % m);
}

// A fraction with 64-bit parts; comparisons go through 128-bit products.
struct Frac64 {
    i64 num = 0;
    i64 den = 1;

    static Frac64 reduce(__int128 n, __int128 d);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline bool operator<(const Frac64& x, const Frac64& y) {
    return static_cast<__int128>(x.num) * y.den < static_cast<__int128>(y.num) * x.den;
}

inline bool operator==(const Frac64& x, const Frac64& y) {
    return static_cast<__int128>(x.num) * y.den == static_cast<__int128>(y.num) * x.den;
}

inline bool operator<=(const Frac64& x, const Frac64& y) { return !(y < x); }

// Inverse of a modulo m, or -1 when gcd(a,m) != 1.
i64 inverse_mod(i64 a, i64 m);

bool is_prime(i64 n);

void require_modulus(i64 q, const char* where);

}  // namespace zlab
