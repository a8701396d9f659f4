#include "zlab/types.hpp"

#include <sstream>

namespace zlab {

i64 inverse_mod(i64 a, i64 m) {
    if (m <= 0) throw domain_error("inverse_mod: modulus must be positive");
    if (m == 1) return 0;
    i64 r0 = m, r1 = mod_floor(a, m);
    i64 s0 = 0, s1 = 1;
    while (r1 != 0) {
        i64 k = r0 / r1;
        i64 r2 = r0 - k * r1;
        r0 = r1;
        r1 = r2;
        i64 s2 = s0 - k * s1;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) return -1;
    return mod_floor(s0, m);
}

Frac64 Frac64::reduce(__int128 n, __int128 d) {
    if (d == 0) throw domain_error("Frac64: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
        __int128 r = a % b;
        a = b;
        b = r;
    }
    if (a == 0) return {0, 1};
    n /= a;
    d /= a;
    if (d > static_cast<__int128>(INT64_MAX) || n > static_cast<__int128>(INT64_MAX) || n < -static_cast<__int128>(INT64_MAX))
        throw capacity_error("Frac64: value does not fit in 64 bits");
    return {static_cast<i64>(n), static_cast<i64>(d)};
}

namespace {

u64 pow_mod(u64 b, u64 e, u64 m) {
    unsigned __int128 r = 1, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<u64>(r);
}

}  // namespace

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = static_cast<u64>(n) - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow_mod(a, d, static_cast<u64>(n));
        if (x == 1 || x == static_cast<u64>(n) - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = static_cast<u64>(static_cast<unsigned __int128>(x) * x % static_cast<u64>(n));
            if (x == static_cast<u64>(n) - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

void require_modulus(i64 q, const char* where) {
    if (q <= 0) {
        std::ostringstream os;
        os << where << ": modulus must be positive, got " << q;
        throw domain_error(os.str());
    }
    if (q > kMaxModulus) {
        std::ostringstream os;
        os << where << ": modulus " << q << " exceeds " << kMaxModulus;
        throw capacity_error(os.str());
    }
}

}  // namespace zlab
