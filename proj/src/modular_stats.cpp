#include "zlab/modular_stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace zlab {

void StatReport::finish() {
    abs_dev = std::fabs(observed - predicted);
    rel_dev = abs_dev / std::max(predicted, 1.0);
}

double StatReport::get(const std::string& key) const {
    for (const auto& kv : params)
        if (kv.first == key) return kv.second;
    for (const auto& kv : extra)
        if (kv.first == key) return kv.second;
    throw validation_error("StatReport: no field " + key);
}

i64 mobius(i64 n) {
    if (n <= 0) throw domain_error("mobius: argument must be positive");
    i64 mu = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

namespace {

// Is the real number num/den * q inside some run of B? Runs are read as
// closed real intervals [s, s+len-1] on the scale of B's modulus.
bool point_in_union(const IntervalUnion& B, __int128 num, __int128 den) {
    const auto& runs = B.intervals();
    // last run with start <= num/den
    auto it = std::upper_bound(runs.begin(), runs.end(), 0, [&](int, const std::pair<i64, i64>& r) {
        return num < static_cast<__int128>(r.first) * den;
    });
    if (it == runs.begin()) return false;
    --it;
    return num <= static_cast<__int128>(it->first + it->second - 1) * den;
}

void check_same_modulus(const IntervalUnion& A, const IntervalUnion& B, const char* where) {
    if (A.modulus() != B.modulus()) {
        std::ostringstream os;
        os << where << ": moduli differ (" << A.modulus() << " vs " << B.modulus() << ")";
        throw validation_error(os.str());
    }
}

std::vector<char> residue_indicator(const std::vector<i64>& S, i64 q, const char* where) {
    std::vector<char> in(static_cast<std::size_t>(q), 0);
    for (i64 s : S) {
        if (s < 0 || s >= q) {
            std::ostringstream os;
            os << where << ": residue " << s << " outside [0, " << q << ")";
            throw validation_error(os.str());
        }
        in[s] = 1;
    }
    return in;
}

std::vector<i64> inverse_table(i64 q) {
    // inv[u] = u^{-1} mod q, or -1
    std::vector<i64> inv(static_cast<std::size_t>(q), -1);
    for (i64 u = 1; u < q; ++u) {
        if (inv[u] != -1) continue;
        i64 v = inverse_mod(u, q);
        if (v < 0) continue;
        inv[u] = v;
        inv[v] = u;
    }
    return inv;
}

void t_action_pre(const std::vector<i64>& A, const std::vector<i64>& B, i64 N, i64 q) {
    if (q < 3) throw domain_error("count_T_action: q must be at least 3");
    require_modulus(q, "count_T_action");
    if (N < 0 || N >= q) throw domain_error("count_T_action: need 0 <= N < q");
    (void)A;
    (void)B;
}

StatReport t_action_report(i64 observed, std::size_t A, std::size_t B, i64 N, i64 q) {
    StatReport r;
    r.op = "count_T_action";
    r.q = q;
    r.params = {{"N", static_cast<double>(N)}, {"A", static_cast<double>(A)}, {"B", static_cast<double>(B)}};
    r.observed = static_cast<double>(observed);
    r.predicted = static_cast<double>(N) * static_cast<double>(A) * static_cast<double>(B) / static_cast<double>(q);
    r.finish();
    return r;
}

}  // namespace

StatReport count_T_action(const std::vector<i64>& A, const std::vector<i64>& B, i64 N, i64 q) {
    t_action_pre(A, B, N, q);
    auto inA = residue_indicator(A, q, "count_T_action");
    auto inB = residue_indicator(B, q, "count_T_action");
    std::vector<i64> as;
    for (i64 a = 0; a < q; ++a)
        if (inA[a]) as.push_back(a);
    auto inv = inverse_table(q);
    i64 total = 0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic, 16)
    for (i64 c = 1; c <= N; ++c) {
        const i64 c2 = mod_floor(2 * c, q);
        i64 local = 0;
        for (i64 a : as) {
            i64 u = a + c2;
            if (u >= q) u -= q;
            const i64 w = inv[u];
            if (w < 0) continue;
            i64 b = w - c2;
            if (b < 0) b += q;
            local += inB[b];
        }
        total += local;
    }
    return t_action_report(total, as.size(), static_cast<std::size_t>(std::count(inB.begin(), inB.end(), 1)), N, q);
}

StatReport count_T_action_serial(const std::vector<i64>& A, const std::vector<i64>& B, i64 N, i64 q) {
    t_action_pre(A, B, N, q);
    auto inA = residue_indicator(A, q, "count_T_action");
    auto inB = residue_indicator(B, q, "count_T_action");
    i64 total = 0;
    for (i64 c = 1; c <= N; ++c)
        for (i64 a = 0; a < q; ++a) {
            if (!inA[a]) continue;
            i64 w = inverse_mod(a + 2 * c, q);
            if (w < 0) continue;
            total += inB[mod_floor(w - 2 * c, q)];
        }
    return t_action_report(total, static_cast<std::size_t>(std::count(inA.begin(), inA.end(), 1)),
                           static_cast<std::size_t>(std::count(inB.begin(), inB.end(), 1)), N, q);
}

bool in_inverse(i64 a, const IntervalUnion& B, InverseRule rule) {
    const i64 q = B.modulus();
    const i64 g = gcd64(a, q);
    const i64 qp = q / g;
    if (qp == 1) return false;
    const i64 bp = inverse_mod((a / g) % qp, qp);
    if (rule == InverseRule::geometric)
        return point_in_union(B, static_cast<__int128>(bp) * q, qp);
    for (i64 b = bp; b <= q; b += qp)
        if (B.contains(b)) return true;
    return false;
}

namespace {

StatReport intersect_report(i64 geo, i64 lift, i64 excluded, i64 nA, i64 nB, i64 q) {
    StatReport r;
    r.op = "intersect_inverse";
    r.q = q;
    r.params = {{"A", static_cast<double>(nA)}, {"B", static_cast<double>(nB)}};
    r.observed = static_cast<double>(geo);
    r.predicted = static_cast<double>(nA) * static_cast<double>(nB) / static_cast<double>(q);
    r.extra = {{"residue_lift", static_cast<double>(lift)}, {"excluded", static_cast<double>(excluded)}};
    r.finish();
    return r;
}

}  // namespace

StatReport intersect_inverse(const IntervalUnion& A, const IntervalUnion& B) {
    check_same_modulus(A, B, "intersect_inverse");
    const i64 q = A.modulus();
    const auto elems = A.elements();
    const i64 n = static_cast<i64>(elems.size());
    i64 geo = 0, lift = 0, excluded = 0;
#pragma omp parallel for reduction(+ : geo, lift, excluded) schedule(static)
    for (i64 i = 0; i < n; ++i) {
        const i64 a = elems[i];
        if (a % q == 0) {
            ++excluded;
            continue;
        }
        geo += in_inverse(a, B, InverseRule::geometric);
        lift += in_inverse(a, B, InverseRule::residue_lift);
    }
    return intersect_report(geo, lift, excluded, n, B.size(), q);
}

// Reference: builds B^{-1} explicitly from B, one residue of A at a time.
StatReport intersect_inverse_serial(const IntervalUnion& A, const IntervalUnion& B) {
    check_same_modulus(A, B, "intersect_inverse");
    const i64 q = A.modulus();
    const auto inB = B.indicator();
    i64 geo = 0, lift = 0, excluded = 0;
    for (i64 a : A.elements()) {
        const i64 g = gcd64(a, q);
        const i64 qp = q / g;
        if (qp == 1) {
            ++excluded;
            continue;
        }
        i64 bp = 0;
        while ((a / g) * bp % qp != 1 % qp) ++bp;
        // point bp/qp against runs [s/q, e/q]
        bool hit = false;
        for (const auto& [s, len] : B.intervals())
            if (s * qp <= bp * q && bp * q <= (s + len - 1) * qp) hit = true;
        geo += hit;
        bool any = false;
        for (i64 b = 1; b <= q; ++b)
            if (inB[b] && b % qp == bp) any = true;
        lift += any;
    }
    return intersect_report(geo, lift, excluded, A.size(), B.size(), q);
}

StatReport sigma_star(const IntervalUnion& A) {
    const i64 q = A.modulus();
    const auto elems = A.elements();
    const i64 n = static_cast<i64>(elems.size());
    std::vector<char> self(elems.size(), 0);  // a in A^{-1}
    i64 direct = 0, sigma = 0;
#pragma omp parallel for reduction(+ : direct, sigma) schedule(static)
    for (i64 i = 0; i < n; ++i) {
        const i64 a = elems[i];
        if (!in_inverse(a, A, InverseRule::geometric)) continue;
        self[i] = 1;
        ++sigma;
        if (gcd64(a, q) == 1) ++direct;
    }
    i64 mobius_sum = 0;
    for (i64 g = 1; g <= q; ++g) {
        if (q % g != 0) continue;
        const i64 mu = mobius(g);
        if (mu == 0) continue;
        i64 s = 0;
        for (i64 i = 0; i < n; ++i)
            if (self[i] && elems[i] % g == 0) ++s;
        mobius_sum += mu * s;
    }
    if (mobius_sum != direct) {
        std::ostringstream os;
        os << "sigma_star: Moebius sum " << mobius_sum << " differs from direct count " << direct << " (q = " << q << ")";
        throw invariant_failure(os.str());
    }
    i64 phi = q;
    {
        i64 m = q;
        for (i64 p = 2; p * p <= m; ++p) {
            if (m % p != 0) continue;
            while (m % p == 0) m /= p;
            phi -= phi / p;
        }
        if (m > 1) phi -= phi / m;
    }
    StatReport r;
    r.op = "sigma_star";
    r.q = q;
    r.params = {{"A", static_cast<double>(n)}};
    r.observed = static_cast<double>(direct);
    r.predicted = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(phi) /
                  (static_cast<double>(q) * static_cast<double>(q));
    r.extra = {{"mobius_sum", static_cast<double>(mobius_sum)}, {"sigma", static_cast<double>(sigma)},
               {"phi", static_cast<double>(phi)}};
    r.finish();
    return r;
}

ThickenResult thicken(const std::vector<i64>& C, i64 N2, i64 q) {
    if (N2 < 1) throw domain_error("thicken: N2 must be at least 1");
    require_modulus(q, "thicken");
    const i64 h = N2 / 2;
    ThickenResult out;
    if (2 * h + 1 >= q) {
        out.set.resize(static_cast<std::size_t>(q));
        for (i64 r = 0; r < q; ++r) out.set[r] = r;
        out.size = q;
        return out;
    }
    std::vector<i64> diff(static_cast<std::size_t>(q + 1), 0);
    for (i64 c : C) {
        const i64 lo = mod_floor(c - h, q);
        const i64 hi = lo + 2 * h;  // inclusive, may wrap
        if (hi < q) {
            ++diff[lo];
            --diff[hi + 1];
        } else {
            ++diff[lo];
            --diff[q];
            ++diff[0];
            --diff[hi - q + 1];
        }
    }
    i64 run = 0;
    for (i64 r = 0; r < q; ++r) {
        run += diff[r];
        if (run > 0) out.set.push_back(r);
    }
    out.size = static_cast<i64>(out.set.size());
    return out;
}

GoodPartition classify_good(const IntervalUnion& A, i64 N_star, double theta) {
    if (N_star < 1) throw domain_error("classify_good: N_star must be positive");
    if (!(theta > 0 && theta <= 1)) throw domain_error("classify_good: theta must lie in (0, 1]");
    if (!A.intervals().empty() && N_star > A.min_length()) {
        std::ostringstream os;
        os << "classify_good: N_star = " << N_star << " exceeds the shortest interval " << A.min_length();
        throw validation_error(os.str());
    }
    const i64 q = A.modulus();
    const auto& runs = A.intervals();
    const i64 n = static_cast<i64>(runs.size());
    std::vector<char> good(runs.size(), 0);
#pragma omp parallel for schedule(dynamic, 4)
    for (i64 i = 0; i < n; ++i) {
        const auto [s, len] = runs[i];
        const i64 blocks = len / N_star;  // the last block absorbs the remainder
        i64 meet = 0;
        for (i64 b = 0; b < blocks; ++b) {
            const i64 lo = s + b * N_star;
            const i64 hi = (b + 1 == blocks) ? s + len - 1 : lo + N_star - 1;
            for (i64 a = lo; a <= hi; ++a)
                if (in_inverse(a, A, InverseRule::geometric)) {
                    ++meet;
                    break;
                }
        }
        good[i] = static_cast<double>(meet) >= theta * static_cast<double>(blocks);
    }
    GoodPartition out;
    std::vector<std::pair<i64, i64>> kept;
    for (i64 i = 0; i < n; ++i) {
        if (good[i]) {
            kept.push_back(runs[i]);
            ++out.good_intervals;
        } else {
            out.bad_size += runs[i].second;
            ++out.bad_intervals;
        }
    }
    out.good = IntervalUnion(q, std::move(kept));
    return out;
}

bool is_k_equidistributed(const std::vector<i64>& A, i64 lo, i64 hi, i64 k, double delta) {
    const i64 len = hi - lo + 1;
    i64 start = lo;
    for (i64 i = 0; i < k; ++i) {
        const i64 part = len / k + (i < len % k ? 1 : 0);
        const i64 end = start + part - 1;
        const i64 cnt = std::upper_bound(A.begin(), A.end(), end) - std::lower_bound(A.begin(), A.end(), start);
        if (static_cast<double>(cnt) < delta * static_cast<double>(part) / 2) return false;
        start = end + 1;
    }
    return true;
}

EquidistributedInterval equidistributed_interval(const std::vector<i64>& A_in, i64 N, i64 k) {
    if (k < 2) throw domain_error("equidistributed_interval: k must be at least 2");
    if (N < 1) throw domain_error("equidistributed_interval: N must be positive");
    std::vector<i64> A = A_in;
    std::sort(A.begin(), A.end());
    A.erase(std::unique(A.begin(), A.end()), A.end());
    if (A.empty()) throw domain_error("equidistributed_interval: A is empty");
    if (A.front() < 1 || A.back() > N) throw validation_error("equidistributed_interval: A must lie in [1, N]");

    auto count = [&](i64 lo, i64 hi) {
        return static_cast<i64>(std::upper_bound(A.begin(), A.end(), hi) - std::lower_bound(A.begin(), A.end(), lo));
    };
    const double delta = static_cast<double>(A.size()) / static_cast<double>(N);

    EquidistributedInterval out;
    out.lo = 1;
    out.hi = N;
    for (;;) {
        const i64 len = out.hi - out.lo + 1;
        const i64 inJ = count(out.lo, out.hi);
        bool sparse = false;
        i64 best_lo = 0, best_hi = -1, best_cnt = -1, best_len = 1;
        i64 start = out.lo;
        for (i64 i = 0; i < k; ++i) {
            const i64 part = len / k + (i < len % k ? 1 : 0);
            const i64 end = start + part - 1;
            const i64 c = count(start, end);
            // relative density below half that of J
            if (2 * c * len < inJ * part) sparse = true;
            // densest part, compared as c / part
            if (part > 0 && (best_cnt < 0 || c * best_len > best_cnt * part)) {
                best_lo = start;
                best_hi = end;
                best_cnt = c;
                best_len = part;
            }
            start = end + 1;
        }
        if (!sparse) break;
        out.lo = best_lo;
        out.hi = best_hi;
        ++out.steps;
    }
    const double kk = static_cast<double>(k);
    out.size_bound = static_cast<double>(N) * std::exp(-4 * kk * std::log(4 * kk) * std::log(1 / delta));
    out.size_ok = static_cast<double>(out.hi - out.lo + 1) >= out.size_bound;
    out.equidistributed = is_k_equidistributed(A, out.lo, out.hi, k, delta);
    return out;
}

IntervalUnion random_interval_union(i64 q, i64 count, i64 len, u64 seed) {
    if (count < 0 || len < 1) throw domain_error("random_interval_union: need count >= 0 and len >= 1");
    const i64 free = q - count * len;
    if (free < 0) throw capacity_error("random_interval_union: intervals do not fit in [1, q]");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<i64> dist(0, free);
    std::vector<i64> gaps(static_cast<std::size_t>(count));
    for (auto& g : gaps) g = dist(rng);
    std::sort(gaps.begin(), gaps.end());
    std::vector<std::pair<i64, i64>> runs;
    for (i64 i = 0; i < count; ++i) runs.emplace_back(gaps[i] + i * len + 1, len);
    return IntervalUnion(q, std::move(runs));
}

}  // namespace zlab
