// Registry behind `verify-lemma`: one entry per documented module invariant.

#include "zlab/cantor.hpp"
#include "zlab/cf.hpp"
#include "zlab/criterion.hpp"
#include "zlab/discrepancy.hpp"
#include "zlab/independence.hpp"
#include "zlab/modular_stats.hpp"
#include "zlab/reports.hpp"
#include "zlab/zaremba.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace zlab {

namespace {

struct Tally {
    LemmaResult r;
    void check(bool ok, const std::function<std::string()>& what) {
        ++r.checks;
        if (ok) return;
        if (r.failures++ == 0) r.first_failure = what();
    }
};

std::string pair_str(i64 a, i64 q) { return "a=" + std::to_string(a) + " q=" + std::to_string(q); }

std::vector<u64> reversed(std::vector<u64> d) {
    std::reverse(d.begin(), d.end());
    return d;
}

void for_each_tuple(int n, u64 hi, const std::function<void(const std::vector<u64>&)>& f) {
    std::vector<u64> d(static_cast<std::size_t>(n), 1);
    for (;;) {
        f(d);
        int j = n - 1;
        while (j >= 0 && d[j] == hi) d[j--] = 1;
        if (j < 0) return;
        ++d[j];
    }
}

// ---- cf_core

void roundtrip(Tally& t, i64 qmax, u64) {
    for (i64 q = 1; q <= qmax; ++q)
        for (i64 a = 0; a < q; ++a) {
            if (gcd64(a, q) != 1) continue;
            const Rational r = evaluate(expand(a, q));
            t.check(r.num == a && r.den == q, [&] { return pair_str(a, q); });
        }
}

void continuant_symmetry(Tally& t, i64, u64) {
    for (int n = 1; n <= 10; ++n)
        for_each_tuple(n, 5, [&](const std::vector<u64>& d) {
            t.check(continuant_u64(d) == continuant_u64(reversed(d)), [&] { return DigitSeq(canonicalize(d)).str(); });
        });
}

void domino(Tally& t, i64, u64) {
    auto K = [](const std::vector<u64>& d, int from, int to) {  // K(x_from..x_to), 1-based, empty = 1
        if (to < from) return u64{to == from - 1 ? 1u : 0u};
        return continuant_u64(std::vector<u64>(d.begin() + from - 1, d.begin() + to));
    };
    for (int n = 1; n <= 9; ++n)
        for_each_tuple(n, 4, [&](const std::vector<u64>& d) {
            const u64 full = K(d, 1, n);
            for (int m = 1; m < n; ++m) {
                const u64 rhs = K(d, 1, m) * K(d, m + 1, n) + K(d, 1, m - 1) * K(d, m + 2, n);
                t.check(full == rhs, [&] { return "n=" + std::to_string(n) + " m=" + std::to_string(m); });
            }
        });
}

void determinant(Tally& t, i64 qmax, u64) {
    for (i64 q = 1; q <= qmax; ++q)
        for (i64 a = 0; a < q; ++a) {
            if (gcd64(a, q) != 1) continue;
            const ConvergentTable ct = convergents(expand(a, q));
            for (std::size_t v = 1; v < ct.p.size(); ++v) {
                const BigInt lhs = ct.p[v] * ct.q[v - 1] - ct.p[v - 1] * ct.q[v];
                t.check(lhs == (v % 2 == 1 ? 1 : -1), [&] { return pair_str(a, q) + " nu=" + std::to_string(v); });
            }
        }
}

void inverse_law(Tally& t, i64 qmax, u64) {
    for (i64 q = 2; q <= qmax; ++q)
        for (i64 a = 1; a < q; ++a) {
            if (gcd64(a, q) != 1) continue;
            const DigitSeq d = expand(a, q);
            const Rational inv = evaluate(inverse_digits(d));
            const i64 b = inv.num.convert_to<i64>();
            t.check(inv.den == q && mul_mod(a, b, q) == 1 % q, [&] { return pair_str(a, q); });
            // the reversed string evaluates to +-a^{-1}
            const Rational rev = evaluate(DigitSeq(canonicalize(reversed(d.digits()))));
            const i64 c = rev.num.convert_to<i64>();
            const i64 prod = mul_mod(a, c, q);
            t.check(rev.den == q && (prod == 1 % q || prod == q - 1), [&] { return "reversal " + pair_str(a, q); });
        }
}

// ---- criterion

void min_product_oracle(Tally& t, i64 qmax, u64) {
    for (i64 q = 2; q <= qmax; ++q)
        for (i64 a = 1; a < q; ++a) {
            if (gcd64(a, q) != 1) continue;
            const auto f = min_product(a, q, 1, q - 1), s = min_product_scan(a, q, 1, q - 1);
            t.check(f.point.product == s.point.product, [&] { return pair_str(a, q); });
        }
}

void m_crit(Tally& t, i64 qmax, bool forward) {
    for (i64 q = 2; q <= qmax; ++q)
        for (i64 a = 1; a < q; ++a) {
            if (gcd64(a, q) != 1) continue;
            const i64 p = min_product(a, q, 1, q - 1).point.product;
            const u64 mq = max_quotient(expand(a, q));
            for (i64 M = 2; M <= 10; ++M) {
                if (forward) {
                    if (p * M >= q) t.check(mq <= static_cast<u64>(M), [&] { return pair_str(a, q) + " M=" + std::to_string(M); });
                } else {
                    if (mq <= static_cast<u64>(M)) t.check(p * (M + 2) >= q, [&] { return pair_str(a, q) + " M=" + std::to_string(M); });
                }
            }
        }
}

void critical_dens(Tally& t, i64 qmax, u64) {
    for (i64 q = 2; q <= qmax; ++q) {
        const double tt = std::max(1.0, std::floor(std::pow(static_cast<double>(q), 0.3)));
        for (i64 a = 1; a < q; ++a) {
            if (gcd64(a, q) != 1) continue;
            for (i64 level : {1, 2, 4}) {
                const auto f = critical_denominators(a, q, tt, level), s = critical_denominators_scan(a, q, tt, level);
                bool same = f.size() == s.size();
                for (std::size_t i = 0; same && i < f.size(); ++i) same = f[i].x == s[i].x;
                t.check(same, [&] { return pair_str(a, q) + " level=" + std::to_string(level); });
            }
        }
    }
}

// ---- cantor

void decomposition(Tally& t, i64 qmax, u64) {
    for (i64 q = 2; q <= qmax; ++q)
        for (i64 M : {2, 3, 5})
            for (double e : {0.3, 0.45}) {
                const double tt = std::pow(static_cast<double>(q), e);
                t.check(decompose_ZM(q, M, tt).elements() == membership_union(q, M, tt).elements(),
                        [&] { return "q=" + std::to_string(q) + " M=" + std::to_string(M); });
            }
}

void interval_lengths(Tally& t, i64 qmax, u64) {
    for (i64 q = 2; q <= qmax; ++q)
        for (i64 M : {2, 3, 5})
            for (double e : {0.3, 0.45}) {
                const double tt = std::pow(static_cast<double>(q), e);
                const IntervalUnion U = decompose_ZM(q, M, tt);
                const double lo = std::floor(static_cast<double>(q) / (tt * tt));
                const double hi = 8.0 * static_cast<double>(M + 1) * static_cast<double>(q) / (tt * tt) + 1;
                for (const auto& [s, len] : U.intervals())
                    t.check(static_cast<double>(len) >= lo && static_cast<double>(len) <= hi, [&] {
                        return "q=" + std::to_string(q) + " M=" + std::to_string(M) + " run at " + std::to_string(s);
                    });
            }
}

void qm_via_j(Tally& t, i64, u64) {
    for (i64 M : {2, 3})
        for (double tt : {4.0, 8.0, 16.0, 32.0, 64.0}) {
            const auto nodes = boundary_QMbar(M, tt);
            std::vector<RationalInterval> J;
            for (const auto& n : nodes) J.push_back(interval_J(n, M));
            std::vector<std::size_t> order(J.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return J[x].lo < J[y].lo; });
            for (std::size_t i = 1; i < order.size(); ++i)
                t.check(J[order[i - 1]].hi <= J[order[i]].lo, [&] { return "overlap at t=" + std::to_string(tt); });
            for (const auto& f : enumerate_QM(M, 4 * tt)) {
                for (std::size_t i = 0; i < nodes.size(); ++i) {
                    const auto& p = nodes[i].digits;
                    if (f.digits.size() < p.size() || !std::equal(p.begin(), p.end(), f.digits.begin())) continue;
                    const Frac64 x{f.u, f.v};
                    t.check(J[i].lo < x && x < J[i].hi, [&] { return DigitSeq(f.digits).str(); });
                }
            }
        }
}

void qm_monotone(Tally& t, i64, u64) {
    const std::vector<double> grid{2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377};
    for (i64 M = 2; M <= 6; ++M)
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const i64 c = count_QM(M, grid[i]);
            t.check(c <= count_QM(M + 1, grid[i]), [&] { return "M=" + std::to_string(M); });
            if (i + 1 < grid.size()) t.check(c <= count_QM(M, grid[i + 1]), [&] { return "t=" + std::to_string(grid[i]); });
        }
}

// ---- zaremba

void dfs_scan(Tally& t, i64 qmax, u64) {
    for (i64 q = 2; q <= qmax; ++q)
        for (i64 M : {2, 3, 5})
            t.check(find_numerators(q, M).numerators == find_numerators_scan(q, M).numerators,
                    [&] { return "q=" + std::to_string(q) + " M=" + std::to_string(M); });
}

void inverse_closure(Tally& t, i64 qmax, u64) {
    for (i64 q = 2; q <= qmax; ++q)
        for (i64 M : {2, 3, 5}) {
            const auto r = find_numerators(q, M);
            for (i64 a : r.numerators)
                t.check(std::binary_search(r.numerators.begin(), r.numerators.end(), inverse_mod(a, q)),
                        [&] { return pair_str(a, q) + " M=" + std::to_string(M); });
        }
}

void criterion_consistency(Tally& t, i64 qmax, u64) {
    for (i64 q = 2; q <= qmax; ++q)
        for (i64 M : {2, 3, 5})
            for (i64 a : find_numerators(q, M).numerators) {
                const auto c = check_bounded(a, q, M);
                t.check(c.minimum.product * (M + 2) >= q, [&] { return pair_str(a, q) + " M=" + std::to_string(M); });
            }
}

void moser_envelope(Tally& t, i64 qmax, u64) {
    const auto ex = exists_zaremba_range(2, qmax, 5);
    const auto ms = min_sum_range(2, qmax);
    for (i64 q = 2; q <= qmax; ++q) {
        if (!ex[q - 2]) continue;
        const i64 env = 5 * (static_cast<i64>(std::ceil(std::log(static_cast<double>(q)) / std::log(std::numbers::phi))) + 2);
        t.check(ms[q - 2].S <= env, [&] { return "q=" + std::to_string(q); });
    }
}

// ---- discrepancy

Frac64 grid_oracle(const PointSet2D& P) {
    const i64 d = P.den;
    const __int128 n = static_cast<__int128>(P.size());
    __int128 best = 0;
    for (i64 x = 0; x <= d; ++x)
        for (i64 y = 0; y <= d; ++y) {
            __int128 closed = 0, open = 0;
            for (const auto& [px, py] : P.points) {
                closed += px <= x && py <= y;
                open += px < x && py < y;
            }
            const __int128 vol = static_cast<__int128>(x) * y;
            best = std::max({best, closed * d * d - vol * n, vol * n - open * d * d});
        }
    return Frac64::reduce(best, n * d * d);
}

void grid_oracle_check(Tally& t, i64, u64 seed) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 200; ++k) {
        PointSet2D P;
        P.den = std::uniform_int_distribution<i64>(2, 40)(rng);
        const i64 n = std::uniform_int_distribution<i64>(1, 64)(rng);
        std::uniform_int_distribution<i64> c(1, P.den);
        for (i64 i = 0; i < n; ++i) P.points.emplace_back(c(rng), c(rng));
        t.check(star_discrepancy_exact(P).exact == grid_oracle(P), [&] { return "random set " + std::to_string(k); });
    }
    for (i64 q = 1; q <= 20; ++q)
        for (i64 a = 0; a < std::max<i64>(q, 1); ++a) {
            if (gcd64(a, q) != 1) continue;
            const Frac64 g = grid_oracle(lattice_points(a, q));
            t.check(lattice_star_discrepancy(a, q).exact == g && star_discrepancy_exact(lattice_points(a, q)).exact == g,
                    [&] { return pair_str(a, q); });
        }
}

void zaremba_bound_check(Tally& t, i64 qmax, u64) {
    const auto s = lattice_bound_sweep(2, qmax);
    t.r.checks = s.pairs;
    t.r.failures = s.violations;
    if (s.violations) t.r.first_failure = "see worst case";
    t.r.detail = Json{{"worst_ratio_upper", s.worst_ratio}, {"worst_a", s.worst_a}, {"worst_q", s.worst_q},
                      {"inverse_pairs", s.computed}, {"grid_step16", s.grid_coarse}, {"grid_step4", s.grid_fine},
                      {"exact_kernel", s.exact_runs}};
}

void koksma_hlawka(Tally& t, i64 qmax, u64 seed) {
    std::mt19937_64 rng(seed);
    std::vector<PointSet2D> sets;
    for (i64 q = 2; q <= std::min<i64>(qmax, 60); ++q)
        for (i64 a = 1; a < q; ++a)
            if (gcd64(a, q) == 1) sets.push_back(lattice_points(a, q));
    for (int k = 0; k < 50; ++k) {
        PointSet2D P;
        P.den = 64;
        std::uniform_int_distribution<i64> c(1, 64);
        for (int i = 0; i < 40; ++i) P.points.emplace_back(c(rng), c(rng));
        sets.push_back(P);
    }
    for (const auto& P : sets)
        for (const auto& f : kh_catalog())
            t.check(koksma_hlawka_demo(f, P).holds, [&] { return f; });
}

void larcher_bound(Tally& t, i64 qmax, u64) {
    i64 one = 0, kor = 0, ex = 0;
    for (i64 q = 3; q <= qmax; ++q) {
        if (!is_prime(q)) continue;
        for (i64 g = 2; g < q; ++g) {
            if (!is_primitive_root(g, q)) continue;
            const LarcherSets s = larcher_sequences(g, q);
            const Frac64 bound = Frac64::reduce(static_cast<__int128>(sum_quotients(expand(g, q))), q);
            const bool a = star_discrepancy_1d(s.one_d, q) <= bound;
            const bool b = lattice_star_discrepancy(g, q).exact <= bound;
            const bool c = star_discrepancy_exact(s.exponential).exact <= bound;
            one += !a;
            kor += !b;
            ex += !c;
            t.check(a && b && c, [&] { return "g=" + std::to_string(g) + " q=" + std::to_string(q); });
        }
    }
    t.r.detail = Json{{"one_d_violations", one}, {"korobov_violations", kor}, {"exponential_violations", ex}};
}

// ---- modular_stats

void brute_counts(Tally& t, i64 qmax, u64 seed) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 40; ++k) {
        const i64 q = std::uniform_int_distribution<i64>(3, std::max<i64>(qmax, 3))(rng);
        std::uniform_int_distribution<i64> res(0, q - 1);
        std::vector<i64> A, B;
        for (int i = 0; i < 30; ++i) {
            A.push_back(res(rng));
            B.push_back(res(rng));
        }
        std::sort(A.begin(), A.end());
        A.erase(std::unique(A.begin(), A.end()), A.end());
        std::sort(B.begin(), B.end());
        B.erase(std::unique(B.begin(), B.end()), B.end());
        const i64 N = std::uniform_int_distribution<i64>(0, std::min<i64>(q - 1, 60))(rng);
        t.check(count_T_action(A, B, N, q).observed == count_T_action_serial(A, B, N, q).observed,
                [&] { return "T-action q=" + std::to_string(q); });
        const i64 len = std::uniform_int_distribution<i64>(1, std::max<i64>(1, q / 20))(rng);
        const IntervalUnion U = random_interval_union(q, std::min<i64>(5, q / len), len, seed + k);
        const IntervalUnion V = random_interval_union(q, std::min<i64>(7, q / len), len, seed + 1000 + k);
        const auto p = intersect_inverse(U, V), s = intersect_inverse_serial(U, V);
        t.check(p.observed == s.observed && p.get("residue_lift") == s.get("residue_lift"),
                [&] { return "intersect q=" + std::to_string(q); });
    }
}

void moebius_identity(Tally& t, i64 qmax, u64 seed) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 60; ++k) {
        i64 q = std::uniform_int_distribution<i64>(4, std::max<i64>(qmax, 4))(rng);
        if (is_prime(q)) ++q;
        const i64 len = std::max<i64>(1, q / 50);
        const IntervalUnion A = random_interval_union(q, std::min<i64>(10, q / len), len, seed + k);
        bool ok = true;
        try {
            sigma_star(A);
        } catch (const invariant_failure&) {
            ok = false;
        }
        t.check(ok, [&] { return "q=" + std::to_string(q); });
    }
}

void equidistributed(Tally& t, i64, u64 seed) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 100; ++k) {
        const i64 N = std::uniform_int_distribution<i64>(50, 5000)(rng);
        const i64 kk = std::uniform_int_distribution<i64>(2, 6)(rng);
        std::vector<i64> A;
        const double p = std::uniform_real_distribution<double>(0.01, 0.9)(rng);
        const i64 cut = std::uniform_int_distribution<i64>(1, N)(rng);
        for (i64 x = 1; x <= N; ++x)
            if (x <= cut && std::bernoulli_distribution(p)(rng)) A.push_back(x);
        if (A.empty()) A.push_back(cut);
        const auto e = equidistributed_interval(A, N, kk);
        const double delta = static_cast<double>(A.size()) / static_cast<double>(N);
        t.check(e.equidistributed && e.size_ok && is_k_equidistributed(A, e.lo, e.hi, kk, delta),
                [&] { return "N=" + std::to_string(N) + " k=" + std::to_string(kk); });
    }
}

void intersect_deviation(Tally& t, i64, u64 seed) {
    const IntervalUnion A = random_interval_union(99991, 100, 300, seed);
    const StatReport r = intersect_inverse(A, A);
    t.check(r.rel_dev <= 0.2, [&] { return "rel_dev=" + std::to_string(r.rel_dev); });
    t.r.detail = Json{{"observed", r.observed}, {"predicted", r.predicted}, {"rel_dev", r.rel_dev}, {"seed", seed}};
}

// ---- independence

ContinuantPair random_pair(std::mt19937_64& rng) {
    const int len = std::uniform_int_distribution<int>(1, 10)(rng);
    std::uniform_int_distribution<u64> c(1, 6);
    std::vector<u64> d(static_cast<std::size_t>(len));
    for (auto& x : d) x = c(rng);
    return ContinuantPair::from_digits(d);
}

void cross_ratio(Tally& t, i64, u64 seed) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 10000; ++k) {
        const auto X = random_pair(rng), Y = random_pair(rng), Z = random_pair(rng), W = random_pair(rng);
        t.check(cross_ratio_check(X, Y, Z, W).all(), [&] { return "sample " + std::to_string(k); });
    }
}

void k2_sweep_check(Tally& t, i64 qmax, bool gcd) {
    const K2Summary s = k2_sweep(2, qmax, {2, 3});
    t.r.checks = s.pairs + (gcd ? 0 : s.repulsion_checks);
    t.r.failures = gcd ? s.gcd_violations : s.dependent_pairs + s.repulsion_failures;
    if (t.r.failures) t.r.first_failure = "see detail";
    t.r.detail = Json{{"groups", s.groups},           {"instances", s.instances},
                      {"pairs", s.pairs},             {"dependent_pairs", s.dependent_pairs},
                      {"gcd_violations", s.gcd_violations}, {"repulsion_checks", s.repulsion_checks},
                      {"repulsion_failures", s.repulsion_failures}};
}

void dirichlet_post(Tally& t, i64, u64 seed) {
    std::mt19937_64 rng(seed);
    int made = 0;
    for (int k = 0; k < 5000 && made < 300; ++k) {
        const std::size_t kk = std::uniform_int_distribution<int>(2, 3)(rng);
        const i64 q = std::uniform_int_distribution<i64>(1000, 1000000)(rng);
        std::vector<i64> xs(kk), Xs(kk);
        for (std::size_t j = 0; j < kk; ++j) {
            Xs[j] = std::uniform_int_distribution<i64>(1, 2000)(rng);
            xs[j] = std::uniform_int_distribution<i64>(-Xs[j], Xs[j])(rng);
        }
        const double T = std::uniform_real_distribution<double>(1, 50)(rng);
        try {
            dirichlet_box(xs, Xs, T, q);
            ++made;
            t.check(true, [] { return ""; });
        } catch (const domain_error&) {
            // preconditions not met; draw again
        } catch (const capacity_error&) {
        } catch (const invariant_failure& e) {
            ++made;
            t.check(false, [&] { return std::string(e.what()); });
        }
    }
}

void d_xy_bounds(Tally& t, i64 qmax, u64 seed) {
    std::mt19937_64 rng(seed);
    i64 counts[3] = {0, 0, 0}, fails[3] = {0, 0, 0};
    for (int k = 0; k < 20; ++k) {
        i64 q = std::uniform_int_distribution<i64>(std::min<i64>(1000, qmax), std::max<i64>(qmax, 2))(rng);
        for (i64 M : {2, 3}) {
            const double tt = std::floor(std::pow(static_cast<double>(q), 0.4));
            for (const auto& node : boundary_QMbar(M, tt)) {
                auto [first, last] = interval_J(node, M).scaled(q);
                first = std::max<i64>(first, 1);
                last = std::min<i64>(last, q - 1);
                std::vector<i64> as;
                for (i64 a = first; a <= last; ++a)
                    if (gcd64(a, q) == 1) as.push_back(a);
                for (std::size_t i = 0; i < as.size(); ++i)
                    for (std::size_t j = 0; j < as.size(); ++j) {
                        if (i == j) continue;
                        const auto da = expand_digits(as[i], q), db = expand_digits(as[j], q);
                        for (std::size_t s = 1; s <= da.size(); s += 2)
                            for (std::size_t s2 = 1; s2 <= db.size(); s2 += 2) {
                                const auto X = ContinuantPair::from_digits({da.begin(), da.begin() + s});
                                const auto Y = ContinuantPair::from_digits({db.begin(), db.begin() + s2});
                                const auto rep = distance_bounds_check(as[i], as[j], q, X, Y, M);
                                const InequalityReport* r3[3] = {&rep.distance, &rep.lower, &rep.upper};
                                for (int z = 0; z < 3; ++z) {
                                    if (r3[z]->status == Check::not_applicable) continue;
                                    ++counts[z];
                                    fails[z] += r3[z]->status == Check::fails;
                                }
                                t.check(rep.distance.status != Check::fails && rep.upper.status != Check::fails,
                                        [&] { return pair_str(as[i], q) + " vs " + std::to_string(as[j]); });
                            }
                    }
            }
        }
    }
    t.r.detail = Json{{"distance_checks", counts[0]}, {"distance_failures", fails[0]},
                      {"lower_checks", counts[1]},    {"lower_failures", fails[1]},
                      {"upper_checks", counts[2]},    {"upper_failures", fails[2]}};
}

// ---- cli_reports

void determinism(Tally& t, i64, u64 seed) {
    RunConfig c;
    c.verb = "stats";
    c.values = {{"op", "intersect"}, {"q", "10007"}, {"count", "20"}, {"len", "100"}, {"seed", std::to_string(seed)}};
    const std::string a = render(run(c), "json"), b = render(run(c), "json");
    t.check(a == b, [] { return "stats report differs between runs"; });
    c.verb = "decompose";
    c.values = {{"q", "1009"}, {"M", "3"}, {"theta", "0.4"}};
    t.check(render(run(c), "csv") == render(run(c), "csv"), [] { return "decompose csv differs between runs"; });
}

using Fn = std::function<void(Tally&, i64, u64)>;

struct Entry {
    LemmaInfo info;
    Fn fn;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e{
        {{"roundtrip", "cf_core", "evaluate(expand(a,q)) = a/q", true, 2000}, roundtrip},
        {{"continuant_symmetry", "cf_core", "K(c_1..c_n) = K(c_n..c_1), entries <= 5, n <= 10", true, 0},
         continuant_symmetry},
        {{"domino", "cf_core", "domino identity for all splits, entries <= 4, n <= 9", true, 0}, domino},
        {{"determinant", "cf_core", "p_v q_{v-1} - p_{v-1} q_v = (-1)^{v-1}", true, 1000}, determinant},
        {{"inverse_law", "cf_core", "inverse_digits gives a^{-1}; reversal gives +-a^{-1}", true, 2000}, inverse_law},
        {{"min_product_oracle", "criterion", "record walk equals full scan", true, 1000}, min_product_oracle},
        {{"M_crit_forward", "criterion", "min x|ax| >= q/M implies max digit <= M", true, 1000},
         [](Tally& t, i64 q, u64) { m_crit(t, q, true); }},
        {{"M_crit_converse", "criterion", "max digit <= M implies min x|ax| >= q/(M+2)", true, 1000},
         [](Tally& t, i64 q, u64) { m_crit(t, q, false); }},
        {{"critical_denominators", "criterion", "convergent list equals |ax| record scan", true, 1000}, critical_dens},
        {{"decomposition", "cantor", "decompose_ZM equals membership walk", true, 5000}, decomposition},
        {{"interval_lengths", "cantor", "lengths in [q/t^2, 8(M+1)q/t^2 + 1]", true, 5000}, interval_lengths},
        {{"QM_via_J", "cantor", "J intervals disjoint and cover boundary extensions", true, 0}, qm_via_j},
        {{"QM_monotone", "cantor", "|Q_M(t)| monotone in M and t", true, 0}, qm_monotone},
        {{"dfs_scan", "zaremba", "DFS equals brute force, M in {2,3,5}", true, 5000}, dfs_scan},
        {{"inverse_closure", "zaremba", "a in Z implies a^{-1} in Z", true, 2000}, inverse_closure},
        {{"criterion_consistency", "zaremba", "numerators pass check_bounded at q/(M+2)", true, 1000},
         criterion_consistency},
        {{"moser_envelope", "zaremba", "min S <= 5 (ceil(log q / log phi) + 2)", true, 20000}, moser_envelope},
        {{"grid_oracle", "discrepancy", "exact sweep equals dense grid, n <= 64", true, 20}, grid_oracle_check},
        {{"zaremba_bound", "discrepancy", "D*(X(a,q)) <= min(1, zaremba_bound)", true, 2000}, zaremba_bound_check},
        {{"koksma_hlawka", "discrepancy", "|error| <= V D* on the catalog", true, 60}, koksma_hlawka},
        {{"larcher_bound", "discrepancy", "D* of the three sequences <= S(g)/q", false, 500}, larcher_bound},
        {{"brute_counts", "modular_stats", "parallel counts equal double loops", true, 10000}, brute_counts},
        {{"moebius", "modular_stats", "sigma* equals the Moebius sum", true, 10000}, moebius_identity},
        {{"equidistributed", "modular_stats", "descent output passes the definition", true, 0}, equidistributed},
        {{"intersect_deviation", "modular_stats", "|A cap A^{-1}| near |A|^2/q, 100 x 300 mod 99991", false, 0},
         intersect_deviation},
        {{"cross_ratio", "independence", "three wedge identities on random quadruples", true, 0}, cross_ratio},
        {{"k2_independence", "independence", "critical pairs in one J are C-independent; repulsion", true, 5000},
         [](Tally& t, i64 q, u64) { k2_sweep_check(t, q, false); }},
        {{"gcd_remark", "independence", "gcd(x1,x2) < 4(M+2)^2 N^2", true, 5000},
         [](Tally& t, i64 q, u64) { k2_sweep_check(t, q, true); }},
        {{"dirichlet_post", "independence", "pigeonhole output satisfies its postcondition", true, 0}, dirichlet_post},
        {{"d_xy_bounds", "independence", "distance and upper bounds for d(x,y); lower bound reported", true, 3000},
         d_xy_bounds},
        {{"determinism", "cli_reports", "identical configs give identical bytes", true, 0}, determinism},
    };
    return e;
}

}  // namespace

const std::vector<LemmaInfo>& lemma_catalog() {
    static const std::vector<LemmaInfo> c = [] {
        std::vector<LemmaInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return c;
}

std::vector<LemmaResult> verify_lemma(const std::string& name, std::optional<i64> q_max, u64 seed) {
    std::vector<LemmaResult> out;
    for (const auto& e : entries()) {
        const std::string& n = e.info.name;
        if (n != name && n.rfind(name + "_", 0) != 0) continue;
        Tally t;
        t.r.name = n;
        t.r.asserted = e.info.asserted;
        t.r.q_max = q_max.value_or(e.info.default_q_max);
        e.fn(t, t.r.q_max, seed);
        out.push_back(std::move(t.r));
    }
    if (out.empty()) throw validation_error("verify-lemma: unknown name '" + name + "' (see --list)");
    return out;
}

}  // namespace zlab
