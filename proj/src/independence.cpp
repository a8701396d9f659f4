#include "zlab/independence.hpp"

#include "zlab/cantor.hpp"
#include "zlab/cf.hpp"
#include "zlab/criterion.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace zlab {

ContinuantPair ContinuantPair::from_digits(std::vector<u64> digits) {
    for (u64 c : digits)
        if (c == 0) throw validation_error("ContinuantPair: digits must be positive");
    ContinuantPair p;
    p.x = continuant(digits);
    p.x_hat = digits.empty() ? BigInt(0) : continuant(digits.cbegin() + 1, digits.cend());
    p.digits = std::move(digits);
    return p;
}

BigInt wedge_d(const ContinuantPair& X, const ContinuantPair& Y) { return X.x * Y.x_hat - Y.x * X.x_hat; }

CrossRatioResult cross_ratio_check(const ContinuantPair& X, const ContinuantPair& Y, const ContinuantPair& Z,
                                   const ContinuantPair& Xs) {
    const BigInt dyz = wedge_d(Y, Z), dzx = wedge_d(Z, X), dxy = wedge_d(X, Y);
    CrossRatioResult r;
    r.d_cr = dyz * X.x + dzx * Y.x + dxy * Z.x == 0;
    r.d_cr_hat = dyz * X.x_hat + dzx * Y.x_hat + dxy * Z.x_hat == 0;
    r.d_cr_cr = wedge_d(X, Xs) * dyz == dxy * wedge_d(Xs, Z) - wedge_d(X, Z) * wedge_d(Xs, Y);
    return r;
}

namespace {

void normalize_sign(std::vector<i64>& m) {
    for (i64 v : m) {
        if (v == 0) continue;
        if (v < 0)
            for (auto& w : m) w = -w;
        return;
    }
}

i64 box_volume(const std::vector<i64>& C, i64 cap, const char* where) {
    long double vol = 1;
    for (i64 c : C) {
        if (c < 0) throw domain_error(std::string(where) + ": bounds must be non-negative");
        vol *= static_cast<long double>(2 * c + 1);
    }
    if (vol > static_cast<long double>(cap)) {
        std::ostringstream os;
        os << where << ": box of " << static_cast<double>(vol) << " vectors exceeds the cap " << cap;
        throw capacity_error(os.str());
    }
    return static_cast<i64>(vol);
}

// First relation (in lexicographic order) with leading coefficient alpha1,
// among vectors whose first nonzero entry is positive.
bool scan_shard(i64 alpha1, const std::vector<i64>& r, const std::vector<i64>& C, i64 q, std::vector<i64>& out) {
    const std::size_t k = r.size();
    std::vector<i64> al(k);
    al[0] = alpha1;
    for (std::size_t j = 1; j < k; ++j) al[j] = -C[j];
    for (;;) {
        bool zero = true, normalized = true;
        for (std::size_t j = 0; j < k; ++j) {
            if (al[j] == 0) continue;
            zero = false;
            normalized = al[j] > 0;
            break;
        }
        if (!zero && normalized) {
            __int128 s = 0;
            for (std::size_t j = 0; j < k; ++j) s += static_cast<__int128>(al[j]) * r[j];
            if (s % q == 0) {
                out = al;
                return true;
            }
        }
        std::size_t j = k;
        while (j > 1) {
            --j;
            if (al[j] < C[j]) {
                ++al[j];
                break;
            }
            al[j] = -C[j];
            if (j == 1) return false;
        }
        if (k == 1) return false;
    }
}

void independence_pre(const std::vector<i64>& xs, const std::vector<i64>& C, i64 q) {
    require_modulus(q, "test_independence");
    if (xs.empty() || xs.size() != C.size())
        throw validation_error("test_independence: need as many bounds as numbers, at least one");
    box_volume(C, 100000000, "test_independence");
}

IndependenceCertificate make_cert(const std::vector<i64>& xs, const std::vector<i64>& C) {
    IndependenceCertificate cert;
    cert.xs = xs;
    cert.bounds = C;
    return cert;
}

}  // namespace

IndependenceCertificate test_independence(const std::vector<i64>& xs, const std::vector<i64>& C, i64 q) {
    independence_pre(xs, C, q);
    std::vector<i64> r(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) r[j] = mod_floor(xs[j], q);
    auto cert = make_cert(xs, C);
    const i64 n = C[0] + 1;
    std::vector<std::vector<i64>> found(static_cast<std::size_t>(n));
    std::atomic<i64> best{n};
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 a1 = 0; a1 < n; ++a1) {
        if (a1 > best.load(std::memory_order_relaxed)) continue;
        std::vector<i64> rel;
        if (scan_shard(a1, r, C, q, rel)) {
            found[a1] = std::move(rel);
            i64 cur = best.load();
            while (a1 < cur && !best.compare_exchange_weak(cur, a1)) {
            }
        }
    }
    if (best.load() < n) {
        cert.independent = false;
        cert.relation = found[best.load()];
    }
    return cert;
}

IndependenceCertificate test_independence_serial(const std::vector<i64>& xs, const std::vector<i64>& C, i64 q) {
    independence_pre(xs, C, q);
    auto cert = make_cert(xs, C);
    const std::size_t k = xs.size();
    // plain odometer over the whole box, keeping the lexicographically least
    // sign-normalized relation
    std::vector<i64> al(k);
    for (std::size_t j = 0; j < k; ++j) al[j] = -C[j];
    for (;;) {
        std::vector<i64> m = al;
        normalize_sign(m);
        bool zero = std::all_of(m.begin(), m.end(), [](i64 v) { return v == 0; });
        if (!zero) {
            __int128 s = 0;
            for (std::size_t j = 0; j < k; ++j) s += static_cast<__int128>(m[j]) * xs[j];
            if (s % q == 0 && (cert.independent || m < cert.relation)) {
                cert.independent = false;
                cert.relation = m;
            }
        }
        std::size_t j = k;
        bool done = true;
        while (j > 0) {
            --j;
            if (al[j] < C[j]) {
                ++al[j];
                done = false;
                break;
            }
            al[j] = -C[j];
        }
        if (done) break;
    }
    return cert;
}

std::vector<double> dirichlet_radii(const std::vector<i64>& Xs, double T) {
    const std::size_t k = Xs.size();
    if (k < 2) throw domain_error("dirichlet_box: need k >= 2");
    long double prod = 1;
    for (i64 X : Xs) prod *= static_cast<long double>(X);
    const long double base = std::pow(4.0L * k * prod / T, 1.0L / static_cast<long double>(k - 1));
    std::vector<double> R(k);
    for (std::size_t j = 0; j < k; ++j) R[j] = static_cast<double>(base / static_cast<long double>(Xs[j]));
    return R;
}

DirichletOutcome dirichlet_box(const std::vector<i64>& xs_in, const std::vector<i64>& Xs, double T, i64 q) {
    require_modulus(q, "dirichlet_box");
    const std::size_t k = xs_in.size();
    if (k < 2 || Xs.size() != k) throw domain_error("dirichlet_box: need k >= 2 numbers with matching bounds");
    if (!(T >= 1)) throw domain_error("dirichlet_box: T must be at least 1");
    std::vector<i64> xs(k);
    long double prod = 1;
    for (std::size_t j = 0; j < k; ++j) {
        i64 x = mod_floor(xs_in[j], q);
        if (2 * x > q) x -= q;
        xs[j] = x;
        if (Xs[j] < 1 || std::llabs(x) > Xs[j]) {
            std::ostringstream os;
            os << "dirichlet_box: |x_" << j + 1 << "| = " << std::llabs(x) << " exceeds X_" << j + 1 << " = " << Xs[j];
            throw domain_error(os.str());
        }
        prod *= static_cast<long double>(Xs[j]);
    }
    const long double lhs = std::pow(8.0L * k, static_cast<long double>(k)) * prod;
    const long double rhs = static_cast<long double>(T) * std::pow(static_cast<long double>(q), k - 1.0L);
    if (lhs > rhs) {
        std::ostringstream os;
        os << "dirichlet_box: (8k)^k prod X_j = " << static_cast<double>(lhs) << " exceeds T q^(k-1) = " << static_cast<double>(rhs);
        throw domain_error(os.str());
    }
    DirichletOutcome out;
    out.R = dirichlet_radii(Xs, T);
    double Rprod = 1;
    for (std::size_t j = 0; j < k; ++j) {
        if (out.R[j] < 1) {
            std::ostringstream os;
            os << "dirichlet_box: R_" << j + 1 << " = " << out.R[j] << " is below 1";
            throw domain_error(os.str());
        }
        Rprod *= out.R[j];
    }
    if (Rprod < 2) throw domain_error("dirichlet_box: product of the R_j is below 2");

    std::vector<i64> rad(k), stride(k);
    std::vector<i64> span(k);
    for (std::size_t j = 0; j < k; ++j) {
        rad[j] = static_cast<i64>(std::floor(out.R[j]));
        span[j] = 2 * rad[j] + 1;
    }
    const i64 total = box_volume(rad, 50000000, "dirichlet_box");
    stride[k - 1] = 1;
    for (std::size_t j = k - 1; j > 0; --j) stride[j - 1] = stride[j] * span[j];
    auto decode = [&](i64 idx) {
        std::vector<i64> n(k);
        for (std::size_t j = 0; j < k; ++j) {
            n[j] = idx / stride[j] - rad[j];
            idx %= stride[j];
        }
        return n;
    };
    std::vector<std::pair<i64, i64>> sums(static_cast<std::size_t>(total));
    for (i64 idx = 0; idx < total; ++idx) {
        auto n = decode(idx);
        i64 s = 0;
        for (std::size_t j = 0; j < k; ++j) s += n[j] * xs[j];
        sums[idx] = {s, idx};
    }
    std::sort(sums.begin(), sums.end());
    std::size_t pick = 0;
    i64 gap = -1;
    for (std::size_t i = 1; i < sums.size(); ++i) {
        const i64 g = sums[i].first - sums[i - 1].first;
        if (gap < 0 || g < gap) {
            gap = g;
            pick = i;
            if (g == 0) break;
        }
    }
    auto hi = decode(sums[pick].second), lo = decode(sums[pick - 1].second);
    out.m.resize(k);
    for (std::size_t j = 0; j < k; ++j) out.m[j] = hi[j] - lo[j];
    out.kind = gap == 0 ? BoxCase::zero_sum : BoxCase::small_sum;
    normalize_sign(out.m);
    out.sum = 0;
    for (std::size_t j = 0; j < k; ++j) out.sum += out.m[j] * xs[j];

    bool ok = std::any_of(out.m.begin(), out.m.end(), [](i64 v) { return v != 0; });
    for (std::size_t j = 0; j < k; ++j) ok = ok && static_cast<double>(std::llabs(out.m[j])) <= 2 * out.R[j];
    if (out.kind == BoxCase::zero_sum)
        ok = ok && out.sum == 0;
    else
        ok = ok && out.sum != 0 && static_cast<double>(std::llabs(out.sum)) <= T;
    if (!ok) throw invariant_failure("dirichlet_box: pigeonhole output violates its postcondition");
    return out;
}

RepulsionOutcome repulsion_dependent(i64 a, i64 q, const std::vector<i64>& xs, const std::vector<i64>& Xs, i64 M,
                                     double t) {
    require_modulus(q, "repulsion_dependent");
    if (M < 1 || !(t >= 1)) throw domain_error("repulsion_dependent: need M >= 1, t >= 1");
    RepulsionOutcome out;
    out.threshold = static_cast<double>(q) / (4.0 * static_cast<double>(M) * t);
    if (out.threshold <= 1) {
        out.holds = true;
        out.vacuous = true;
        return out;
    }
    if (a < 1 || a > q || !membership_ZM(a, q, M, t)) throw domain_error("repulsion_dependent: a is not in Z_M(t)");
    const auto R = dirichlet_radii(Xs, t);
    std::vector<i64> C(R.size());
    for (std::size_t j = 0; j < R.size(); ++j) {
        if (2 * R[j] < 4) throw domain_error("repulsion_dependent: some C_j is below 4");
        C[j] = static_cast<i64>(std::floor(2 * R[j]));
    }
    if (!test_independence(xs, C, q).independent)
        throw domain_error("repulsion_dependent: the numbers are not C-independent");
    auto box = dirichlet_box(xs, Xs, t, q);
    if (box.kind == BoxCase::zero_sum)
        throw invariant_failure("repulsion_dependent: zero relation found among C-independent numbers");
    out.m = box.m;
    out.sum = box.sum;
    out.residue = signed_residue(a, mod_floor(box.sum, q), q);
    out.holds = static_cast<double>(std::llabs(out.residue)) >= out.threshold;
    return out;
}

namespace {

void check_triple(i64 x, i64 y, i64 z, const Triple& T, const std::vector<i64>& C, const char* name) {
    const __int128 s = static_cast<__int128>(T.alpha) * x + static_cast<__int128>(T.beta) * y +
                       static_cast<__int128>(T.gamma) * z;
    auto fail = [&](const std::string& why) {
        throw domain_error(std::string("triple_uniqueness: ") + name + " " + why);
    };
    if (s != 0) fail("does not satisfy the relation");
    if (gcd64(gcd64(T.alpha, T.beta), T.gamma) != 1) fail("is not primitive");
    if (std::llabs(T.alpha) > C[0] || std::llabs(T.beta) > C[1] || std::llabs(T.gamma) > C[2])
        fail("exceeds its bounds");
}

Triple normalized(Triple T) {
    std::vector<i64> v{T.alpha, T.beta, T.gamma};
    normalize_sign(v);
    return {v[0], v[1], v[2]};
}

}  // namespace

bool triple_uniqueness(i64 x, i64 y, i64 z, Triple T1, Triple T2, const std::vector<i64>& C,
                       const std::vector<i64>& Cp, i64 q, i64 M, double t) {
    require_modulus(q, "triple_uniqueness");
    if (C.size() != 3 || Cp.size() != 3) throw validation_error("triple_uniqueness: need three bounds per triple");
    for (i64 v : {x, y, z})
        if (static_cast<double>(v) < t || static_cast<double>(v) > static_cast<double>(q) / t)
            throw domain_error("triple_uniqueness: x, y, z must lie in [t, q/t]");
    check_triple(x, y, z, T1, C, "first triple");
    check_triple(x, y, z, T2, Cp, "second triple");
    const double c = static_cast<double>(*std::max_element(C.begin(), C.end()));
    const double cp = static_cast<double>(*std::max_element(Cp.begin(), Cp.end()));
    if (16 * c * cp > t) throw domain_error("triple_uniqueness: 16 |C| |C'| exceeds t");
    const double N = static_cast<double>(q) / (t * t);
    const double Md = static_cast<double>(M);
    if (std::pow(N, 1.5) > std::sqrt(static_cast<double>(q)) / (32 * Md * Md * c * cp))
        throw domain_error("triple_uniqueness: N^(3/2) exceeds sqrt(q) / (32 M^2 |C| |C'|)");
    const Triple a = normalized(T1), b = normalized(T2);
    return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma;
}

std::string to_string(Check c) {
    switch (c) {
        case Check::holds: return "holds";
        case Check::fails: return "fails";
        default: return "not-applicable";
    }
}

DistanceReport distance_bounds_check(i64 a, i64 b, i64 q, const ContinuantPair& X, const ContinuantPair& Y, i64 Mt) {
    require_modulus(q, "distance_bounds_check");
    if (Mt < 1) throw domain_error("distance_bounds_check: level must be positive");
    DistanceReport rep;
    rep.d = wedge_d(X, Y);
    const BigInt ad = abs(rep.d);
    const BigInt diff = BigInt(std::llabs(a - b));
    const BigInt Q(q), M(Mt);
    const BigInt& x = X.x;
    const BigInt& y = Y.x;
    auto dbl = [](const BigInt& v) { return v.convert_to<double>(); };

    const auto& r = X.digits;
    const auto& rp = Y.digits;
    const std::size_t s = r.size(), sp = rp.size();
    std::size_t l = 1;
    while (l <= std::min(s, sp) && r[l - 1] == rp[l - 1]) ++l;
    rep.l = l;

    // distance inequality, scaled by q M x^2 y^2
    auto critical = [&](const BigInt& v, i64 num) {
        if (v >= Q) return false;
        const i64 vv = v.convert_to<i64>();
        return BigInt(vv) * BigInt(std::llabs(signed_residue(num, vv, q))) * M <= Q;
    };
    if (critical(x, a) && critical(y, b)) {
        const BigInt lhs = abs(diff * M * x * x * y * y - ad * Q * M * x * y);
        const BigInt rhs = Q * (x * x + y * y);
        rep.distance.status = lhs <= rhs ? Check::holds : Check::fails;
        const double den = dbl(Q * M * x * x * y * y);
        rep.distance.lhs = dbl(lhs) / den;
        rep.distance.rhs = dbl(rhs) / den;
    }
    if (l <= std::min(s, sp) && s >= l + 1 && sp >= l + 1) {
        rep.r_l = r[l - 1];
        rep.rp_l = rp[l - 1];
        const BigInt sum(rep.r_l + rep.rp_l);
        // |d| >= x y |a-b| / (16 (r_l + r'_l) q)
        const BigInt lo_rhs = x * y * diff;
        const BigInt lo_lhs = ad * 16 * sum * Q;
        rep.lower.status = lo_lhs >= lo_rhs ? Check::holds : Check::fails;
        rep.lower.lhs = dbl(ad);
        rep.lower.rhs = dbl(lo_rhs) / dbl(16 * sum * Q);
        // |d| <= 8 x y r'_l |a-b| / q with r'_l the smaller branch digit
        const u64 big = std::max(rep.r_l, rep.rp_l), small = std::min(rep.r_l, rep.rp_l);
        if (big >= small + 2) {
            const BigInt up_rhs = 8 * x * y * BigInt(small) * diff;
            rep.upper.status = ad * Q <= up_rhs ? Check::holds : Check::fails;
            rep.upper.lhs = dbl(ad);
            rep.upper.rhs = dbl(up_rhs) / static_cast<double>(q);
        }
    }
    return rep;
}

K2Window k2_window(i64 q, i64 M) {
    K2Window w;
    const double sq = std::sqrt(static_cast<double>(q));
    const double m2 = 2.0 * static_cast<double>((M + 2) * (M + 2));
    const double Nmax = std::pow(sq / m2, 2.0 / 3.0);
    if (Nmax < 1) return w;
    w.t = std::ceil(std::sqrt(static_cast<double>(q) / Nmax));
    w.N = static_cast<double>(q) / (w.t * w.t);
    const double c = std::floor(sq / (m2 * std::pow(w.N, 1.5)));
    w.C = std::max<i64>(0, std::min<i64>(static_cast<i64>(c), static_cast<i64>(std::ceil(w.t / 4)) - 1));
    return w;
}

std::vector<HarvestInstance> harvest(i64 q, i64 M, double t) {
    require_modulus(q, "harvest");
    std::vector<HarvestInstance> out;
    const double hi_x = static_cast<double>(q) / t;
    i64 group = 0;
    for (const auto& node : boundary_QMbar(M, t)) {
        auto [first, last] = interval_J(node, M).scaled(q);
        first = std::max<i64>(first, 1);
        last = std::min<i64>(last, q - 1);
        for (i64 a = first; a <= last; ++a) {
            const auto d = expand_digits(a, q);
            i64 k = 1, km = 0;  // K(r_1..r_j), K(r_1..r_{j-1})
            i64 h = 0, hm = 1;  // K(r_2..r_j), K(r_2..r_{j-1})
            for (std::size_t j = 0; j < d.size(); ++j) {
                const i64 c = static_cast<i64>(d[j]);
                const i64 nk = c * k + km;
                const i64 nh = j == 0 ? 1 : c * h + hm;
                km = k;
                k = nk;
                hm = h;
                h = nh;
                const double xd = static_cast<double>(k);
                if (xd > t && xd < hi_x) {
                    HarvestInstance hi;
                    hi.q = q;
                    hi.M = M;
                    hi.t = t;
                    hi.group = group;
                    hi.a = a;
                    hi.digits.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(j + 1));
                    hi.x = k;
                    hi.x_hat = h;
                    out.push_back(std::move(hi));
                }
            }
        }
        ++group;
    }
    return out;
}

std::string to_json_line(const HarvestInstance& h) {
    nlohmann::ordered_json j;
    j["q"] = h.q;
    j["M"] = h.M;
    j["t"] = h.t;
    j["group"] = h.group;
    j["a"] = h.a;
    j["digits"] = h.digits;
    j["x"] = h.x;
    j["x_hat"] = h.x_hat;
    return j.dump();
}

K2Summary k2_sweep(i64 q_lo, i64 q_hi, const std::vector<i64>& Ms) {
    std::vector<std::pair<i64, i64>> jobs;
    for (i64 q = std::max<i64>(q_lo, 2); q <= q_hi; ++q)
        if (is_prime(q))
            for (i64 M : Ms) jobs.emplace_back(q, M);
    const i64 n = static_cast<i64>(jobs.size());
    i64 groups = 0, instances = 0, pairs = 0, dep = 0, gviol = 0, rchecks = 0, rfail = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : groups, instances, pairs, dep, gviol, rchecks, rfail)
    for (i64 i = 0; i < n; ++i) {
        const auto [q, M] = jobs[i];
        const K2Window w = k2_window(q, M);
        if (w.C < 1) continue;
        const auto inst = harvest(q, M, w.t);
        instances += static_cast<i64>(inst.size());
        std::map<i64, std::set<i64>> xs_by_group;
        for (const auto& h : inst) xs_by_group[h.group].insert(h.x);
        const double Nf = std::floor(w.N);
        const double gcd_cap = 4.0 * static_cast<double>((M + 2) * (M + 2)) * Nf * Nf;
        for (const auto& [g, xs] : xs_by_group) {
            ++groups;
            const std::vector<i64> v(xs.begin(), xs.end());
            for (std::size_t p = 0; p < v.size(); ++p)
                for (std::size_t r = p + 1; r < v.size(); ++r) {
                    ++pairs;
                    if (!test_independence_serial({v[p], v[r]}, {w.C, w.C}, q).independent) ++dep;
                    if (static_cast<double>(gcd64(v[p], v[r])) >= gcd_cap) ++gviol;
                }
        }
        for (const auto& node : boundary_QMbar(M, w.t)) {
            auto [first, last] = interval_J(node, M).scaled(q);
            first = std::max<i64>(first, 1);
            last = std::min<i64>(last, q - 1);
            for (i64 a = first; a <= last; ++a) {
                ++rchecks;
                if (!repulsion_check(a, q, M, w.t)) ++rfail;
            }
        }
    }
    return {groups, instances, pairs, dep, gviol, rchecks, rfail};
}

}  // namespace zlab
