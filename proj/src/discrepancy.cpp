#include "zlab/discrepancy.hpp"

#include "lattice_kernel.hpp"
#include "zlab/cf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zlab {

void PointSet2D::validate() const {
    if (den < 1) throw validation_error("PointSet2D: denominator must be positive");
    for (const auto& [x, y] : points) {
        if (x < 1 || x > den || y < 1 || y > den) {
            std::ostringstream os;
            os << "PointSet2D: point (" << x << ", " << y << ")/" << den << " outside (0,1]^2";
            throw validation_error(os.str());
        }
    }
}

PointSet2D lattice_points(i64 a, i64 q) {
    require_modulus(q, "lattice_points");
    if (gcd64(a, q) != 1) throw domain_error("lattice_points: gcd(a,q) must be 1");
    PointSet2D P;
    P.den = q;
    P.points.reserve(static_cast<std::size_t>(q));
    for (i64 j = 1; j <= q; ++j) {
        i64 r = mul_mod(a, j, q);
        P.points.emplace_back(j, r == 0 ? q : r);
    }
    return P;
}

bool is_primitive_root(i64 g, i64 q) {
    if (!is_prime(q)) return false;
    g = mod_floor(g, q);
    if (g == 0) return false;
    i64 n = q - 1, m = n;
    for (i64 p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        i64 x = 1, b = g, e = n / p;
        while (e) {
            if (e & 1) x = mul_mod(x, b, q);
            b = mul_mod(b, b, q);
            e >>= 1;
        }
        if (x == 1) return false;
    }
    if (m > 1) {
        i64 x = 1, b = g, e = n / m;
        while (e) {
            if (e & 1) x = mul_mod(x, b, q);
            b = mul_mod(b, b, q);
            e >>= 1;
        }
        if (x == 1) return false;
    }
    return true;
}

LarcherSets larcher_sequences(i64 g, i64 q) {
    require_modulus(q, "larcher_sequences");
    if (!is_prime(q)) throw validation_error("larcher_sequences: q must be prime");
    if (!is_primitive_root(g, q)) {
        std::ostringstream os;
        os << "larcher_sequences: " << g << " is not a primitive root mod " << q;
        throw validation_error(os.str());
    }
    LarcherSets s;
    s.q = q;
    s.g = g;
    s.korobov.den = q;
    s.exponential.den = q;
    for (i64 j = 1; j <= q; ++j) {
        i64 r = mul_mod(g, j, q);
        s.one_d.push_back(r == 0 ? q : r);
        s.korobov.points.emplace_back(j, r == 0 ? q : r);
    }
    i64 p = mod_floor(g, q);
    for (i64 j = 1; j <= q - 1; ++j) {
        i64 next = mul_mod(p, g, q);
        s.exponential.points.emplace_back(p, next);
        p = next;
    }
    return s;
}

// Sorted-order formula: D* = max_i max(i/n - u_(i), u_(i) - (i-1)/n).
Frac64 star_discrepancy_1d(const std::vector<i64>& nums, i64 den) {
    if (nums.empty()) throw domain_error("star_discrepancy_1d: empty set");
    std::vector<i64> u = nums;
    std::sort(u.begin(), u.end());
    const __int128 n = static_cast<__int128>(u.size());
    __int128 best = 0;  // over n*den
    for (std::size_t i = 0; i < u.size(); ++i) {
        __int128 ui = static_cast<__int128>(u[i]) * n;
        __int128 hi = static_cast<__int128>(i + 1) * den - ui;
        __int128 lo = ui - static_cast<__int128>(i) * den;
        best = std::max({best, hi, lo});
    }
    return Frac64::reduce(best, n * den);
}

namespace {

struct Fenwick {
    std::vector<i64> t;
    explicit Fenwick(std::size_t n) : t(n + 1, 0) {}
    void add(std::size_t i) {
        for (++i; i < t.size(); i += i & (~i + 1)) ++t[i];
    }
    i64 prefix(std::size_t i) const {  // sum over [0, i)
        i64 s = 0;
        for (; i > 0; i -= i & (~i + 1)) s += t[i];
        return s;
    }
};

struct SweepBest {
    __int128 value = -1;  // over n*den^2
    WitnessBox box;
};

// Scans x-candidates [x_begin, x_end). xs: sorted distinct candidates
// (point coordinates plus den); ys likewise.
SweepBest sweep_range(const PointSet2D& P, const std::vector<std::pair<i64, i64>>& by_x,
                      const std::vector<i64>& xs, const std::vector<i64>& ys, std::size_t x_begin,
                      std::size_t x_end) {
    const __int128 n = static_cast<__int128>(P.size());
    const __int128 d2 = static_cast<__int128>(P.den) * P.den;
    SweepBest best;
    auto yindex = [&](i64 y) {
        return static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
    };
    Fenwick fw(ys.size());
    std::size_t p = 0;
    // points with x < xs[x_begin]
    while (p < by_x.size() && by_x[p].first < xs[x_begin]) fw.add(yindex(by_x[p++].second));
    for (std::size_t xi = x_begin; xi < x_end; ++xi) {
        const i64 x = xs[xi];
        // open boxes: points with x_j < x
        for (std::size_t yi = 0; yi < ys.size(); ++yi) {
            const i64 y = ys[yi];
            __int128 open = fw.prefix(yi);  // y_j < y
            __int128 v = static_cast<__int128>(x) * y * n - open * d2;
            if (v > best.value) best = {v, {x, y, P.den, false}};
        }
        while (p < by_x.size() && by_x[p].first == x) fw.add(yindex(by_x[p++].second));
        // closed boxes: points with x_j <= x
        for (std::size_t yi = 0; yi < ys.size(); ++yi) {
            const i64 y = ys[yi];
            __int128 closed = fw.prefix(yi + 1);  // y_j <= y
            __int128 v = closed * d2 - static_cast<__int128>(x) * y * n;
            if (v > best.value) best = {v, {x, y, P.den, true}};
        }
    }
    return best;
}

void candidates(const PointSet2D& P, std::vector<std::pair<i64, i64>>& by_x, std::vector<i64>& xs,
                std::vector<i64>& ys) {
    by_x = P.points;
    std::sort(by_x.begin(), by_x.end());
    for (const auto& [x, y] : P.points) {
        xs.push_back(x);
        ys.push_back(y);
    }
    xs.push_back(P.den);
    ys.push_back(P.den);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
}

DiscrepancyReport finish(const PointSet2D& P, const SweepBest& b) {
    DiscrepancyReport r;
    const __int128 n = static_cast<__int128>(P.size());
    r.exact = Frac64::reduce(b.value, n * P.den * P.den);
    r.value = r.exact.value();
    r.witness = b.box;
    r.general_envelope = 4.0 * r.value;
    if (P.size() <= 64) r.general_exact = general_discrepancy_exact(P);
    return r;
}

void check_nonempty(const PointSet2D& P) {
    if (P.points.empty()) throw domain_error("star discrepancy: empty point set");
    P.validate();
}

bool better(const SweepBest& a, const SweepBest& b) { return a.value > b.value; }

}  // namespace

DiscrepancyReport star_discrepancy_serial(const PointSet2D& P) {
    check_nonempty(P);
    std::vector<std::pair<i64, i64>> by_x;
    std::vector<i64> xs, ys;
    candidates(P, by_x, xs, ys);
    return finish(P, sweep_range(P, by_x, xs, ys, 0, xs.size()));
}

DiscrepancyReport star_discrepancy_exact(const PointSet2D& P) {
    check_nonempty(P);
    std::vector<std::pair<i64, i64>> by_x;
    std::vector<i64> xs, ys;
    candidates(P, by_x, xs, ys);
    const std::size_t chunk = 64;
    const std::size_t nchunks = (xs.size() + chunk - 1) / chunk;
    std::vector<SweepBest> part(nchunks);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t c = 0; c < nchunks; ++c)
        part[c] = sweep_range(P, by_x, xs, ys, c * chunk, std::min(xs.size(), (c + 1) * chunk));
    // first maximal chunk keeps the serial tie order
    SweepBest best = part[0];
    for (std::size_t c = 1; c < nchunks; ++c)
        if (better(part[c], best)) best = part[c];
    return finish(P, best);
}

// Closed boxes [x1,x2]x[y1,y2] for count - volume, open boxes for
// volume - count; edges range over point coordinates plus 0 and den.
Frac64 general_discrepancy_exact(const PointSet2D& P) {
    check_nonempty(P);
    if (P.size() > 64) throw capacity_error("general_discrepancy_exact: n must be <= 64");
    std::vector<i64> xs{0, P.den}, ys{0, P.den};
    for (const auto& [x, y] : P.points) {
        xs.push_back(x);
        ys.push_back(y);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    const std::size_t X = xs.size(), Y = ys.size();
    // cnt[i][j]: points with x-index < i and y-index < j
    std::vector<std::vector<i64>> cnt(X + 1, std::vector<i64>(Y + 1, 0));
    for (const auto& [x, y] : P.points) {
        std::size_t i = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
        std::size_t j = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
        ++cnt[i + 1][j + 1];
    }
    for (std::size_t i = 1; i <= X; ++i)
        for (std::size_t j = 1; j <= Y; ++j) cnt[i][j] += cnt[i - 1][j] + cnt[i][j - 1] - cnt[i - 1][j - 1];
    auto rect = [&](std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) {  // index ranges [i0,i1) x [j0,j1)
        if (i1 <= i0 || j1 <= j0) return i64{0};
        return cnt[i1][j1] - cnt[i0][j1] - cnt[i1][j0] + cnt[i0][j0];
    };
    const __int128 n = static_cast<__int128>(P.size());
    const __int128 d2 = static_cast<__int128>(P.den) * P.den;
    __int128 best = 0;
    for (std::size_t a = 0; a < X; ++a)
        for (std::size_t b = a; b < X; ++b)
            for (std::size_t c = 0; c < Y; ++c)
                for (std::size_t d = c; d < Y; ++d) {
                    const __int128 vol = static_cast<__int128>(xs[b] - xs[a]) * (ys[d] - ys[c]);
                    const __int128 closed = rect(a, b + 1, c, d + 1);
                    const __int128 open = rect(a + 1, b, c + 1, d);
                    best = std::max({best, closed * d2 - vol * n, vol * n - open * d2});
                }
    return Frac64::reduce(best, n * d2);
}

DiscrepancyReport lattice_star_discrepancy(i64 a, i64 q) {
    require_modulus(q, "lattice_star_discrepancy");
    if (gcd64(a, q) != 1) throw domain_error("lattice_star_discrepancy: gcd(a,q) must be 1");
    a = mod_floor(a, q);
    DiscrepancyReport r;
    if (q == 1) {
        // single point (1,1): the open unit box is empty
        r.exact = {1, 1};
        r.value = 1;
        r.witness = {1, 1, 1, false};
        return r;
    }
    const detail::LatticeMax m = detail::lattice_max(a, q);
    r.exact = Frac64::reduce(m.value, static_cast<__int128>(q) * q);
    r.value = r.exact.value();
    r.general_envelope = 4.0 * r.value;
    r.zaremba_bound = zaremba_bound(a, q);
    // recover the column of the maximiser from the counts of its row
    std::vector<i64> C(static_cast<std::size_t>(q + 1), 0);
    for (i64 j = 1; j <= m.row; ++j) {
        i64 res = mul_mod(a, j, q);
        ++C[static_cast<std::size_t>(res == 0 ? q : res)];
    }
    for (i64 k = 1; k <= q; ++k) C[k] += C[k - 1];
    const i64 i = m.row;
    r.witness = {1, q, q, false};
    for (i64 k = 0; k <= q; ++k) {
        const i64 up = q * C[k] - i * k;
        const i64 down = (i + 1) * (k + 1) - q * C[k];
        if (m.closed && k >= 1 && up == m.value) {
            r.witness = {i, k, q, true};
            break;
        }
        if (!m.closed && k <= q - 1 && down == m.value) {
            r.witness = {i + 1, k + 1, q, false};
            break;
        }
    }
    return r;
}

double zaremba_bound(i64 a, i64 q) {
    if (q < 2) throw domain_error("zaremba_bound: q must be >= 2");
    if (gcd64(a, q) != 1) throw domain_error("zaremba_bound: gcd(a,q) must be 1");
    const double M = static_cast<double>(max_quotient(expand(mod_floor(a, q), q)));
    const double L = std::log(static_cast<double>(q));
    return (4.0 * M / std::log(M + 1.0) + (4.0 * M + 1.0) / L) * L / static_cast<double>(q);
}

i64 lattice_grid_upper(i64 a, i64 q, i64 g) {
    if (q < 2) throw domain_error("lattice_grid_upper: q must be >= 2");
    if (g < 1) throw domain_error("lattice_grid_upper: g must be >= 1");
    if (gcd64(a, q) != 1) throw domain_error("lattice_grid_upper: gcd(a,q) must be 1");
    // lines G_u = min(u g, q), u = 0..m. Pc[u][v] = #{x <= G_u, y <= G_v},
    // Po[u][v] = #{x < G_u, y < G_v}. On the cell [G_u,G_u+1]x[G_v,G_v+1]
    // qC - XY <= q Pc[u+1][v+1] - G_u G_v and XY - qC_open <= G_u+1 G_v+1 - q Po[u][v].
    const i64 m = (q + g - 1) / g;
    const i64 w = m + 1;
    if (w > 10000) throw capacity_error("lattice_grid_upper: grid over 10^4 lines, raise g");
    auto G = [&](i64 u) { return std::min(u * g, q); };
    thread_local std::vector<i64> Pc, Po;
    Pc.assign(static_cast<std::size_t>(w * w), 0);
    Po.assign(static_cast<std::size_t>(w * w), 0);
    const i64 step = mod_floor(a, q);
    i64 r = 0;
    for (i64 j = 1; j <= q; ++j) {
        r += step;
        if (r >= q) r -= q;
        const i64 y = r == 0 ? q : r;
        Pc[static_cast<std::size_t>(((j + g - 1) / g) * w + (y + g - 1) / g)]++;
        const i64 ox = j / g + 1, oy = y / g + 1;
        if (ox <= m && oy <= m) Po[static_cast<std::size_t>(ox * w + oy)]++;
    }
    for (auto* P : {&Pc, &Po}) {
        auto& A = *P;
        for (i64 u = 0; u < w; ++u)
            for (i64 v = 0; v < w; ++v) {
                i64 x = A[static_cast<std::size_t>(u * w + v)];
                if (u) x += A[static_cast<std::size_t>((u - 1) * w + v)];
                if (v) x += A[static_cast<std::size_t>(u * w + v - 1)];
                if (u && v) x -= A[static_cast<std::size_t>((u - 1) * w + v - 1)];
                A[static_cast<std::size_t>(u * w + v)] = x;
            }
    }
    i64 best = q;  // open box [0,1/q)x[0,1)
    for (i64 u = 0; u < m; ++u)
        for (i64 v = 0; v < m; ++v) {
            best = std::max(best, q * Pc[static_cast<std::size_t>((u + 1) * w + v + 1)] - G(u) * G(v));
            best = std::max(best, G(u + 1) * G(v + 1) - q * Po[static_cast<std::size_t>(u * w + v)]);
        }
    return std::min(best, q * q);
}

namespace {

struct PairJob {
    i64 a;
    i64 q;
    i64 inv;
};

std::vector<PairJob> sweep_jobs(i64 q_lo, i64 q_hi) {
    std::vector<PairJob> jobs;
    for (i64 q = std::max<i64>(q_lo, 2); q <= q_hi; ++q) {
        for (i64 a = 1; a < q; ++a) {
            i64 inv = inverse_mod(a, q);
            if (inv < 0 || inv < a) continue;
            jobs.push_back({a, q, inv});
        }
    }
    return jobs;
}

struct JobResult {
    int stage = 0;  // 0 coarse grid, 1 fine grid, 2 exact
    i64 bad = 0;    // members of the pair over their bound
    double ratio = 0;
};

// D*(X(a,q)) = D*(X(a^{-1},q)): the second set is the first with axes swapped.
// The bounds differ because the digits of a^{-1}/q differ.
JobResult run_job(const PairJob& j, SweepMode mode) {
    const long double q2 = static_cast<long double>(j.q) * static_cast<long double>(j.q);
    const double b1 = std::min(1.0, zaremba_bound(j.a, j.q));
    const double b2 = j.inv == j.a ? b1 : std::min(1.0, zaremba_bound(j.inv, j.q));
    const long double cap = static_cast<long double>(std::min(b1, b2)) * q2;
    JobResult r;
    i64 value = 0;
    bool settled = false;
    if (mode == SweepMode::certify) {
        for (i64 g : {i64{16}, i64{4}}) {
            value = lattice_grid_upper(j.a, j.q, g);
            if (static_cast<long double>(value) <= cap) {
                settled = true;
                break;
            }
            ++r.stage;
        }
    }
    if (!settled) {
        r.stage = 2;
        value = detail::lattice_max(j.a, j.q).value;
    }
    const long double v = static_cast<long double>(value);
    r.bad = (v > static_cast<long double>(b1) * q2) + (j.inv != j.a && v > static_cast<long double>(b2) * q2);
    r.ratio = static_cast<double>(v / cap);
    return r;
}

void merge(LatticeSweepSummary& s, const PairJob& j, const JobResult& r) {
    s.pairs += j.inv == j.a ? 1 : 2;
    s.computed += 1;
    (r.stage == 0 ? s.grid_coarse : r.stage == 1 ? s.grid_fine : s.exact_runs) += 1;
    s.violations += r.bad;
    if (r.ratio > s.worst_ratio) {
        s.worst_ratio = r.ratio;
        s.worst_a = j.a;
        s.worst_q = j.q;
    }
}

}  // namespace

LatticeSweepSummary lattice_bound_sweep_serial(i64 q_lo, i64 q_hi, SweepMode mode) {
    LatticeSweepSummary s;
    s.q_lo = q_lo;
    s.q_hi = q_hi;
    s.mode = mode;
    for (const PairJob& j : sweep_jobs(q_lo, q_hi)) merge(s, j, run_job(j, mode));
    return s;
}

LatticeSweepSummary lattice_bound_sweep(i64 q_lo, i64 q_hi, SweepMode mode) {
    LatticeSweepSummary s;
    s.q_lo = q_lo;
    s.q_hi = q_hi;
    s.mode = mode;
    std::vector<PairJob> jobs = sweep_jobs(q_lo, q_hi);
    // largest moduli first for load balance
    std::stable_sort(jobs.begin(), jobs.end(), [](const PairJob& x, const PairJob& y) { return x.q > y.q; });
    std::vector<JobResult> res(jobs.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t i = 0; i < jobs.size(); ++i) res[i] = run_job(jobs[i], mode);
    // merge in the serial order so the worst case is reported identically
    std::vector<std::size_t> order(jobs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return jobs[x].q != jobs[y].q ? jobs[x].q < jobs[y].q : jobs[x].a < jobs[y].a;
    });
    for (std::size_t i : order) merge(s, jobs[i], res[i]);
    return s;
}

std::vector<std::string> kh_catalog() { return {"xy", "half_sum", "x", "const"}; }

// Hardy-Krause variation anchored at (1,1): sum over the x-face, the y-face
// and the Vitali variation of the mixed part.
KhReport koksma_hlawka_demo(const std::string& f_id, const PointSet2D& P) {
    check_nonempty(P);
    const __int128 n = static_cast<__int128>(P.size());
    const __int128 d = P.den;
    __int128 sum = 0;
    KhReport r;
    r.f_id = f_id;
    __int128 scale = 1;  // the sum is over n * scale
    if (f_id == "xy") {
        for (const auto& [x, y] : P.points) sum += static_cast<__int128>(x) * y;
        scale = d * d;
        r.integral = {1, 4};
        r.variation = 3;
    } else if (f_id == "half_sum") {
        for (const auto& [x, y] : P.points) sum += x + y;
        scale = 2 * d;
        r.integral = {1, 2};
        r.variation = 1;
    } else if (f_id == "x") {
        for (const auto& [x, y] : P.points) sum += x;
        scale = d;
        r.integral = {1, 2};
        r.variation = 1;
    } else if (f_id == "const") {
        sum = n;
        scale = 1;
        r.integral = {1, 1};
        r.variation = 0;
    } else {
        throw validation_error("koksma_hlawka_demo: unknown function '" + f_id + "'");
    }
    r.mean = Frac64::reduce(sum, n * scale);
    const __int128 en = static_cast<__int128>(r.mean.num) * r.integral.den - static_cast<__int128>(r.integral.num) * r.mean.den;
    r.error = Frac64::reduce(en < 0 ? -en : en, static_cast<__int128>(r.mean.den) * r.integral.den);
    r.dstar = star_discrepancy_exact(P).exact;
    r.holds = static_cast<__int128>(r.error.num) * r.dstar.den <= static_cast<__int128>(r.variation) * r.dstar.num * r.error.den;
    return r;
}

}  // namespace zlab
