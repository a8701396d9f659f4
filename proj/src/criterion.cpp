#include "zlab/criterion.hpp"

#include "zlab/cf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace zlab {

i64 signed_residue(i64 a, i64 x, i64 q) {
    if (q < 2) throw domain_error("signed_residue: q must be >= 2");
    if (x < 1 || x >= q) {
        std::ostringstream os;
        os << "signed_residue: x = " << x << " outside [1, " << q << ")";
        throw domain_error(os.str());
    }
    i64 r = mul_mod(a, x, q);
    return 2 * r > q ? r - q : r;
}

HyperbolaPoint hyperbola_point(i64 a, i64 x, i64 q) {
    i64 y = signed_residue(a, x, q);
    return {x, y, x * std::llabs(y)};
}

i64 first_multiple_in_range(i64 A, i64 m, i64 L, i64 R) {
    A = mod_floor(A, m);
    if (L > R) return -1;
    if (L == 0) return 0;
    if (A == 0) return -1;
    if (2 * A > m) return first_multiple_in_range(m - A, m, m - R, m - L);
    i64 k = (L + A - 1) / A;
    if (static_cast<__int128>(A) * k <= R) return k;
    // no multiple of A in [L,R]: solve for the wrap count y modulo A
    i64 y = first_multiple_in_range(A - m % A, A, L % A, R % A);
    if (y < 0) return -1;
    __int128 num = static_cast<__int128>(m) * y + L + A - 1;
    return static_cast<i64>(num / A);
}

namespace {

void check_range(i64 q, i64 lo, i64 hi, const char* where) {
    require_modulus(q, where);
    if (q < 2 || lo < 1 || hi >= q || lo > hi) {
        std::ostringstream os;
        os << where << ": empty or invalid range [" << lo << ", " << hi << "] for q = " << q;
        throw domain_error(os.str());
    }
}

}  // namespace

// Walk the records of |ax| from x = lo upward. Any minimiser of x|ax| on
// [lo,hi] is such a record, and each step is one modular interval query.
MinProduct min_product(i64 a, i64 q, i64 lo, i64 hi) {
    check_range(q, lo, hi, "min_product");
    a = mod_floor(a, q);
    MinProduct out;
    out.reduced = gcd64(a, q) == 1;
    i64 x = lo;
    HyperbolaPoint cur = hyperbola_point(a, x, q);
    out.point = cur;
    while (cur.y != 0) {
        i64 Y = std::llabs(cur.y);
        // need a*d mod q in {z - y : |z| < Y}
        i64 L = mod_floor(-Y + 1 - cur.y, q);
        i64 R = L + 2 * Y - 2;
        i64 d = first_multiple_in_range(a, q, L, R);
        if (d <= 0 || d > hi - x) break;
        x += d;
        cur = hyperbola_point(a, x, q);
        if (cur.product < out.point.product) out.point = cur;
    }
    return out;
}

MinProduct min_product_scan(i64 a, i64 q, i64 lo, i64 hi) {
    check_range(q, lo, hi, "min_product_scan");
    MinProduct out;
    out.reduced = gcd64(a, q) == 1;
    out.point = hyperbola_point(a, lo, q);
    for (i64 x = lo + 1; x <= hi; ++x) {
        HyperbolaPoint p = hyperbola_point(a, x, q);
        if (p.product < out.point.product) out.point = p;
    }
    return out;
}

BoundedCertificate check_bounded(i64 a, i64 q, i64 M) {
    if (M < 1) throw domain_error("check_bounded: M must be positive");
    require_modulus(q, "check_bounded");
    if (q < 2) throw domain_error("check_bounded: q must be >= 2");
    a = mod_floor(a, q);
    if (gcd64(a, q) != 1) throw domain_error("check_bounded: gcd(a,q) must be 1");
    BoundedCertificate c;
    c.minimum = min_product(a, q, 1, q - 1).point;
    c.direct = max_quotient(expand(a, q)) <= static_cast<u64>(M);
    const __int128 p = c.minimum.product;
    if (p * M >= q)
        c.verdict = Verdict::bounded;
    else if (p * (M + 2) < q)
        c.verdict = Verdict::unbounded;
    else
        c.verdict = Verdict::inconclusive;
    return c;
}

namespace {

void check_window(i64 q, double t) {
    require_modulus(q, "critical_denominators");
    if (q < 2) throw domain_error("critical_denominators: q must be >= 2");
    if (!(t >= 1.0) || t * t > static_cast<double>(q)) throw domain_error("critical_denominators: need 1 <= t <= sqrt(q)");
}

CriticalDenominator make_critical(const HyperbolaPoint& p, i64 q, i64 level) {
    CriticalDenominator c;
    c.x = p.x;
    c.residue = p.y;
    c.level = level;
    c.type = static_cast<__int128>(p.x) * p.x <= q ? DenominatorType::I : DenominatorType::II;
    return c;
}

bool in_window(i64 x, i64 q, double t) {
    return static_cast<double>(x) >= t && static_cast<double>(x) * t <= static_cast<double>(q);
}

bool is_critical(const HyperbolaPoint& p, i64 q, i64 level) {
    return static_cast<__int128>(p.product) * level <= q;
}

}  // namespace

std::vector<CriticalDenominator> critical_denominators(i64 a, i64 q, double t, i64 level) {
    check_window(q, t);
    std::vector<CriticalDenominator> out;
    std::vector<i64> dens{1};  // q_0
    for (i64 x : convergent_denominators(a, q)) dens.push_back(x);
    i64 prev = 0;
    for (i64 x : dens) {
        if (x == prev || x >= q || !in_window(x, q, t)) {
            prev = x;
            continue;
        }
        prev = x;
        HyperbolaPoint p = hyperbola_point(a, x, q);
        if (is_critical(p, q, level)) out.push_back(make_critical(p, q, level));
    }
    return out;
}

namespace {

// x is a convergent denominator iff |ax| beats every smaller x.
std::vector<i64> record_denominators(i64 a, i64 q) {
    std::vector<i64> out;
    i64 best = q;
    for (i64 x = 1; x < q; ++x) {
        i64 y = std::llabs(signed_residue(a, x, q));
        if (y < best) {
            best = y;
            out.push_back(x);
        }
    }
    return out;
}

}  // namespace

std::vector<CriticalDenominator> critical_denominators_scan(i64 a, i64 q, double t, i64 level) {
    check_window(q, t);
    std::vector<CriticalDenominator> out;
    for (i64 x : record_denominators(a, q)) {
        if (!in_window(x, q, t)) continue;
        HyperbolaPoint p = hyperbola_point(a, x, q);
        if (is_critical(p, q, level)) out.push_back(make_critical(p, q, level));
    }
    return out;
}

bool repulsion_check(i64 a, i64 q, i64 M, double t) {
    require_modulus(q, "repulsion_check");
    if (!is_prime(q)) throw domain_error("repulsion_check: q must be prime");
    if (M < 1 || !(t > 0)) throw domain_error("repulsion_check: need M >= 1, t > 0");
    const double bound = static_cast<double>(q) / (4.0 * static_cast<double>(M) * t);
    for (i64 x = 1; static_cast<double>(x) <= bound && x < q; ++x) {
        if (static_cast<double>(std::llabs(signed_residue(a, x, q))) < t) return false;
    }
    return true;
}

namespace {

ProductProfile profile_from(const std::vector<i64>& dens, i64 a, i64 q, double t, i64 M) {
    if (q < 2) throw domain_error("product_profile: q must be >= 2");
    if (gcd64(mod_floor(a, q), q) != 1) throw domain_error("product_profile: gcd(a,q) must be 1");
    if (M < 1 || !(t >= 1.0)) throw domain_error("product_profile: need M >= 1, t >= 1");
    ProductProfile pr;
    pr.window_lo = t;
    pr.window_hi = static_cast<double>(q) / (4.0 * static_cast<double>(M) * t);
    for (double s = t; s <= pr.window_hi; s *= 2) pr.scales.push_back(s);
    const std::size_t n = pr.scales.size();
    pr.cell.assign(n, std::vector<bool>(n, false));
    for (i64 x : dens) {
        if (x >= q) continue;
        const double dx = static_cast<double>(x);
        const double dy = static_cast<double>(std::llabs(signed_residue(a, x, q)));
        for (std::size_t i = 0; i < n; ++i) {
            if (dx < pr.scales[i] || dx > 2 * pr.scales[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (dy >= pr.scales[j] && dy <= 2 * pr.scales[j]) pr.cell[i][j] = true;
            }
        }
    }
    const i64 lo = static_cast<i64>(std::ceil(t));
    const i64 hi = std::min<i64>(q - 1, static_cast<i64>(std::floor(pr.window_hi)));
    if (lo <= hi) {
        pr.min_point = min_product(a, q, lo, hi).point;
        if (pr.min_point->product > 0)
            pr.g_bound = static_cast<double>(q) / static_cast<double>(pr.min_point->product);
    }
    return pr;
}

}  // namespace

ProductProfile product_profile(i64 a, i64 q, double t, i64 M) {
    return profile_from(convergent_denominators(a, q), a, q, t, M);
}

ProductProfile product_profile_scan(i64 a, i64 q, double t, i64 M) {
    ProductProfile pr = profile_from(record_denominators(a, q), a, q, t, M);
    // the minimum is recomputed by a full scan of the window
    const i64 lo = static_cast<i64>(std::ceil(t));
    const i64 hi = std::min<i64>(q - 1, static_cast<i64>(std::floor(pr.window_hi)));
    if (lo <= hi) pr.min_point = min_product_scan(a, q, lo, hi).point;
    return pr;
}

}  // namespace zlab
