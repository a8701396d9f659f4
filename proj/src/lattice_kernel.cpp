// Exact star discrepancy of X(a,q). With C(i,k) = #{j <= i : aj mod q <= k}
// (residue 0 read as q) the scaled local discrepancy of the closed box
// [0,i/q]x[0,k/q] is D_i[k] = q C(i,k) - i k, and the open box
// [0,(i+1)/q)x[0,(k+1)/q) has (i+1)(k+1) - q C(i,k) = i + 1 + k - D_i[k].
// Row i adds -k + q[k >= r_i] to every column.

#include "lattice_kernel.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace zlab::detail {

namespace {

template <class T>
LatticeMax sweep(i64 a, i64 q, std::vector<T>& buf) {
    const T Q = static_cast<T>(q);
    const i64 n = q - 1;  // columns 1..q-1; column q is identically zero
    buf.assign(static_cast<std::size_t>(q), T{0});
    T* __restrict D = buf.data();
    LatticeMax best{q, 0, false};  // open box [0,1/q)x[0,1)
    auto take = [&](i64 v, i64 row, bool closed) {
        if (v > best.value) best = {v, row, closed};
    };
    i64 r1 = 0;
    i64 i = 1;
    for (; i + 1 <= n; i += 2) {
        r1 = mod_floor(r1 + a, q);
        const T ra = static_cast<T>(r1 == 0 ? q : r1);
        i64 r2 = mod_floor(r1 + a, q);
        const T rb = static_cast<T>(r2 == 0 ? q : r2);
        r1 = r2;
        T mx1 = std::numeric_limits<T>::min(), mx2 = mx1;
        T mn1 = std::numeric_limits<T>::max(), mn2 = mn1;
        for (i64 k = 1; k <= n; ++k) {
            const T kk = static_cast<T>(k);
            T d = D[k] - kk + (kk >= ra ? Q : T{0});
            mx1 = std::max(mx1, d);
            mn1 = std::min(mn1, static_cast<T>(d - kk));
            d = d - kk + (kk >= rb ? Q : T{0});
            mx2 = std::max(mx2, d);
            mn2 = std::min(mn2, static_cast<T>(d - kk));
            D[k] = d;
        }
        take(static_cast<i64>(mx1), i, true);
        take(i + 1 - static_cast<i64>(mn1), i, false);
        take(static_cast<i64>(mx2), i + 1, true);
        take(i + 2 - static_cast<i64>(mn2), i + 1, false);
    }
    for (; i <= n; ++i) {
        r1 = mod_floor(r1 + a, q);
        const T ra = static_cast<T>(r1 == 0 ? q : r1);
        T mx = std::numeric_limits<T>::min();
        T mn = std::numeric_limits<T>::max();
        for (i64 k = 1; k <= n; ++k) {
            const T kk = static_cast<T>(k);
            T d = D[k] - kk + (kk >= ra ? Q : T{0});
            mx = std::max(mx, d);
            mn = std::min(mn, static_cast<T>(d - kk));
            D[k] = d;
        }
        take(static_cast<i64>(mx), i, true);
        take(i + 1 - static_cast<i64>(mn), i, false);
    }
    return best;
}

}  // namespace

LatticeMax lattice_max(i64 a, i64 q) {
    if (q <= 46340) {
        thread_local std::vector<std::int32_t> buf;
        return sweep(a, q, buf);
    }
    thread_local std::vector<std::int64_t> buf;
    return sweep(a, q, buf);
}

}  // namespace zlab::detail
