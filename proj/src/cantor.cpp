#include "zlab/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace zlab {

Frac64 RationalInterval::length() const {
    __int128 n = static_cast<__int128>(hi.num) * lo.den - static_cast<__int128>(lo.num) * hi.den;
    __int128 d = static_cast<__int128>(hi.den) * lo.den;
    return Frac64::reduce(n, d);
}

std::pair<i64, i64> RationalInterval::scaled(i64 q) const {
    // smallest a with a/q > lo, largest a with a/q < hi
    __int128 ln = static_cast<__int128>(lo.num) * q;
    i64 first = static_cast<i64>(ln / lo.den) + 1;
    __int128 hn = static_cast<__int128>(hi.num) * q;
    i64 last = static_cast<i64>((hn + hi.den - 1) / hi.den) - 1;
    return {first, last};
}

IntervalUnion::IntervalUnion(i64 q, std::vector<std::pair<i64, i64>> runs) : q_(q), runs_(std::move(runs)) {
    i64 prev_end = 0;
    for (const auto& [s, len] : runs_) {
        if (len <= 0 || s < 1 || s + len - 1 > q_ || s <= prev_end) {
            std::ostringstream os;
            os << "IntervalUnion: bad run (" << s << ", " << len << ") for q = " << q_;
            throw validation_error(os.str());
        }
        prev_end = s + len - 1;
    }
}

IntervalUnion IntervalUnion::from_indicator(i64 q, const std::vector<char>& in) {
    std::vector<std::pair<i64, i64>> runs;
    for (i64 a = 1; a <= q; ++a) {
        if (!in[a]) continue;
        if (!runs.empty() && runs.back().first + runs.back().second == a)
            ++runs.back().second;
        else
            runs.emplace_back(a, 1);
    }
    return IntervalUnion(q, std::move(runs));
}

i64 IntervalUnion::size() const {
    i64 s = 0;
    for (const auto& r : runs_) s += r.second;
    return s;
}

bool IntervalUnion::contains(i64 a) const {
    auto it = std::upper_bound(runs_.begin(), runs_.end(), a,
                               [](i64 v, const std::pair<i64, i64>& r) { return v < r.first; });
    if (it == runs_.begin()) return false;
    --it;
    return a < it->first + it->second;
}

std::vector<i64> IntervalUnion::elements() const {
    std::vector<i64> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (const auto& [s, len] : runs_)
        for (i64 a = s; a < s + len; ++a) out.push_back(a);
    return out;
}

std::vector<char> IntervalUnion::indicator() const {
    std::vector<char> in(static_cast<std::size_t>(q_ + 1), 0);
    for (const auto& [s, len] : runs_)
        for (i64 a = s; a < s + len; ++a) in[a] = 1;
    return in;
}

i64 IntervalUnion::min_length() const {
    i64 m = 0;
    for (const auto& r : runs_) m = (m == 0 || r.second < m) ? r.second : m;
    return m;
}

i64 IntervalUnion::max_length() const {
    i64 m = 0;
    for (const auto& r : runs_) m = std::max(m, r.second);
    return m;
}

namespace {

void check_M(i64 M) {
    if (M < 2) throw domain_error("Q_M(t): M must be >= 2");
}

bool below(i64 v, double t) { return static_cast<double>(v) < t; }

// DFS over digit strings with all digits <= M and continuant < t. Prefixes
// ending in 1 are walked through but only canonical strings are emitted.
template <class Visit>
void walk_QM(std::vector<u64>& digits, i64 k, i64 km, i64 u, i64 um, i64 M, double t, Visit& visit) {
    for (i64 c = 1; c <= M; ++c) {
        i64 v = c * k + km;
        if (!below(v, t)) break;
        i64 w = c * u + um;
        digits.push_back(static_cast<u64>(c));
        if (c >= 2) visit(digits, w, v, v + k);
        walk_QM(digits, v, k, w, u, M, t, visit);
        digits.pop_back();
    }
}

i64 count_from(i64 k, i64 km, i64 M, double t) {
    i64 n = 0;
    for (i64 c = 1; c <= M; ++c) {
        i64 v = c * k + km;
        if (!below(v, t)) break;
        if (c >= 2) ++n;
        n += count_from(v, k, M, t);
    }
    return n;
}

Frac64 eval_digits(const std::vector<u64>& d) {
    u64 v = continuant_u64(d);
    std::vector<u64> tail(d.begin() + (d.empty() ? 0 : 1), d.end());
    u64 u = d.empty() ? 0 : continuant_u64(tail);
    return {static_cast<i64>(u), static_cast<i64>(v)};
}

}  // namespace

std::vector<FractionNode> enumerate_QM(i64 M, double t) {
    check_M(M);
    std::vector<FractionNode> out;
    std::vector<u64> digits;
    auto visit = [&](const std::vector<u64>& d, i64 u, i64 v, i64 v_ext) {
        out.push_back(FractionNode{d, u, v, v_ext});
    };
    // u tracks the numerator K(c_2..c_l): p_0 = 0, p_{-1} = 1
    walk_QM(digits, 1, 0, 0, 1, M, t, visit);
    return out;
}

std::vector<FractionNode> boundary_QMbar(i64 M, double t) {
    std::vector<FractionNode> all = enumerate_QM(M, t);
    std::vector<FractionNode> out;
    for (auto& n : all)
        if (!below(n.v_ext, t)) out.push_back(std::move(n));
    return out;
}

i64 count_QM_serial(i64 M, double t) {
    check_M(M);
    return count_from(1, 0, M, t);
}

i64 count_QM(i64 M, double t) {
    check_M(M);
    i64 total = 0;
    // shard on (c_1, c_2)
#pragma omp parallel for collapse(2) schedule(dynamic) reduction(+ : total)
    for (i64 c1 = 1; c1 <= M; ++c1) {
        for (i64 c2 = 0; c2 <= M; ++c2) {
            i64 v1 = c1;
            if (!below(v1, t)) continue;
            if (c2 == 0) {
                if (c1 >= 2) total += 1;
                continue;
            }
            i64 v2 = c2 * v1 + 1;
            if (!below(v2, t)) continue;
            total += (c2 >= 2 ? 1 : 0) + count_from(v2, v1, M, t);
        }
    }
    return total;
}

RationalInterval interval_J(const FractionNode& node, i64 M) {
    const auto& d = node.digits;
    if (d.empty() || d.back() < 2) throw validation_error("interval_J: node must end with a digit >= 2");
    std::vector<u64> e1(d.begin(), d.end() - 1);
    std::vector<u64> e2 = e1;
    e1.push_back(static_cast<u64>(M + 1));
    e2.push_back(d.back() - 1);
    e2.push_back(static_cast<u64>(M + 1));
    Frac64 f1 = eval_digits(e1), f2 = eval_digits(e2);
    if (f2 < f1) std::swap(f1, f2);
    return {f1, f2};
}

IntervalUnion decompose_ZM(i64 q, i64 M, double t) {
    require_modulus(q, "decompose_ZM");
    check_M(M);
    if (t * t > static_cast<double>(q)) throw domain_error("decompose_ZM: t must be <= sqrt(q)");
    std::vector<std::pair<i64, i64>> runs;
    for (const auto& node : boundary_QMbar(M, t)) {
        auto [first, last] = interval_J(node, M).scaled(q);
        first = std::max<i64>(first, 1);
        last = std::min<i64>(last, q - 1);
        if (first <= last) runs.emplace_back(first, last - first + 1);
    }
    std::sort(runs.begin(), runs.end());
    for (std::size_t i = 1; i < runs.size(); ++i) {
        if (runs[i].first < runs[i - 1].first + runs[i - 1].second)
            throw invariant_failure("decompose_ZM: J intervals overlap");
    }
    return IntervalUnion(q, std::move(runs));
}

// Walks the digits of a/q and decides whether a/q falls in some J_{u/v} with
// u/v a boundary node. At each level the boundary digit r (if any) is the
// unique r in [2,M] with K(P,r) < t <= K(P,r,1).
bool membership_ZM(i64 a, i64 q, i64 M, double t) {
    require_modulus(q, "membership_ZM");
    check_M(M);
    if (a < 1 || a > q) throw domain_error("membership_ZM: a must lie in [1, q]");
    std::vector<u64> d = expand_digits(a % q, q);
    i64 k = 1, km = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const i64 c = static_cast<i64>(std::min<u64>(d[i], static_cast<u64>(M + 1)));
        i64 r = 0;
        for (i64 rr = 2; rr <= M; ++rr) {
            i64 v = rr * k + km;
            if (!below(v, t)) break;
            if (!below(v + k, t)) {
                r = rr;
                break;
            }
        }
        if (r != 0) {
            if (c >= r && c <= M) return true;
            if (c == r - 1) return i + 1 < d.size() && d[i + 1] <= static_cast<u64>(M);
        }
        if (c > M) return false;
        i64 v = c * k + km;
        if (!below(v, t)) return false;
        km = k;
        k = v;
    }
    return false;
}

IntervalUnion membership_union(i64 q, i64 M, double t) {
    std::vector<char> in(static_cast<std::size_t>(q + 1), 0);
#pragma omp parallel for schedule(static)
    for (i64 a = 1; a <= q; ++a) in[a] = membership_ZM(a, q, M, t) ? 1 : 0;
    return IntervalUnion::from_indicator(q, in);
}

AdReport ad_check(const IntervalUnion& U, double w, i64 N, std::optional<i64> M) {
    if (U.size() == 0) throw domain_error("ad_check: U must be non-empty");
    if (!(w > 0 && w <= 1) || N < 1) throw domain_error("ad_check: need w in (0,1], N >= 1");
    const i64 q = U.modulus();
    // cyclic prefix counts over two periods
    std::vector<i64> pre(static_cast<std::size_t>(2 * q + 1), 0);
    std::vector<char> in = U.indicator();
    for (i64 i = 1; i <= 2 * q; ++i) pre[i] = pre[i - 1] + (in[(i - 1) % q + 1] ? 1 : 0);
    auto count = [&](i64 start, i64 len) {  // start in [1,q], len <= q
        return pre[start - 1 + len] - pre[start - 1];
    };
    AdReport r;
    r.w = w;
    r.N = N;
    const double nfac = std::pow(static_cast<double>(N), 1.0 - w);
    for (i64 L = 1; L <= q; L *= 2) {
        const i64 stride = std::max<i64>(1, L / 4);
        double best = 0;
        for (i64 s = 1; s <= q; s += stride)
            best = std::max(best, static_cast<double>(count(s, L)));
        double ratio = best / (std::pow(static_cast<double>(L), w) * nfac);
        r.c1_by_scale.emplace_back(L, ratio);
        r.c1_hat = std::max(r.c1_hat, ratio);
    }
    r.c2_inv_hat = -1;
    for (i64 h = 1; 2 * h + 1 <= q; h *= 2) {
        const i64 L = 2 * h + 1;
        if (L < N) continue;
        const double denom = std::pow(static_cast<double>(L), w) * nfac;
        for (const auto& [s, len] : U.intervals()) {
            for (i64 a = s; a < s + len; ++a) {
                i64 start = mod_floor(a - h - 1, q) + 1;
                double ratio = static_cast<double>(count(start, L)) / denom;
                if (r.c2_inv_hat < 0 || ratio < r.c2_inv_hat) r.c2_inv_hat = ratio;
            }
        }
    }
    if (r.c2_inv_hat < 0) r.c2_inv_hat = 0;
    if (M) {
        r.envelope = std::pow(static_cast<double>(*M), 4.0);
        r.within_envelope = r.c1_hat <= *r.envelope;
    }
    return r;
}

double hensley_w(i64 M) {
    if (M < 2) throw domain_error("hensley_w: M must be >= 2");
    const double m = static_cast<double>(M);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return 1.0 - 6.0 / (pi2 * m) - 72.0 * std::log(m) / (pi2 * pi2 * m * m);
}

DimensionEstimate estimate_dimension(i64 M, const std::vector<double>& t_grid) {
    check_M(M);
    if (t_grid.size() < 4) throw domain_error("estimate_dimension: need at least four grid points");
    DimensionEstimate e;
    e.M = M;
    e.w_hensley = hensley_w(M);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw domain_error("estimate_dimension: grid must increase");
        i64 n = count_QM(M, t_grid[i]);
        if (n <= 0 || (!e.samples.empty() && n <= e.samples.back().second))
            throw domain_error("estimate_dimension: counts do not increase along the grid");
        e.samples.emplace_back(t_grid[i], n);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(e.samples.size());
    for (const auto& [t, c] : e.samples) {
        double x = std::log(t), y = std::log(static_cast<double>(c));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    e.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    e.w_fit = e.slope / 2.0;
    return e;
}

}  // namespace zlab
