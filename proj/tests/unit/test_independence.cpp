#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zlab/cantor.hpp"
#include "zlab/cf.hpp"
#include "zlab/independence.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

using namespace zlab;

namespace {

std::vector<u64> random_digits(std::mt19937_64& rng, u64 hi, std::size_t max_len) {
    std::vector<u64> d(1 + rng() % max_len);
    for (auto& c : d) c = 1 + rng() % hi;
    return d;
}

// smallest sign-normalized relation by brute force over the box, or empty
std::vector<i64> brute_relation(const std::vector<i64>& xs, const std::vector<i64>& C, i64 q) {
    std::vector<std::vector<i64>> all;
    std::vector<i64> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == xs.size()) {
            all.push_back(cur);
            return;
        }
        for (i64 v = -C[j]; v <= C[j]; ++v) {
            cur.push_back(v);
            rec(j + 1);
            cur.pop_back();
        }
    };
    rec(0);
    std::vector<i64> best;
    for (auto& m : all) {
        std::size_t f = 0;
        while (f < m.size() && m[f] == 0) ++f;
        if (f == m.size() || m[f] < 0) continue;
        __int128 s = 0;
        for (std::size_t j = 0; j < m.size(); ++j) s += static_cast<__int128>(m[j]) * xs[j];
        if (s % q != 0) continue;
        if (best.empty() || m < best) best = m;
    }
    return best;
}

}  // namespace

TEST_CASE("wedge examples") {
    auto X = ContinuantPair::from_digits({2, 3});
    auto Y = ContinuantPair::from_digits({2, 2});
    CHECK(X.x == 7);
    CHECK(X.x_hat == 3);
    CHECK(wedge_d(X, Y) == -1);
    CHECK(wedge_d(X, X) == 0);
    CHECK_THROWS_AS(ContinuantPair::from_digits({1, 0}), validation_error);

    // consecutive convergent prefixes of one expansion
    std::vector<u64> d{3, 1, 4, 1, 5, 9, 2, 6};
    for (std::size_t n = 1; n < d.size(); ++n) {
        auto A = ContinuantPair::from_digits({d.begin(), d.begin() + static_cast<long>(n)});
        auto B = ContinuantPair::from_digits({d.begin(), d.begin() + static_cast<long>(n) + 1});
        CHECK(abs(wedge_d(A, B)) == 1);
    }
}

TEST_CASE("cross-ratio identities on random quadruples") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 10000; ++i) {
        auto X = ContinuantPair::from_digits(random_digits(rng, 6, 10));
        auto Y = ContinuantPair::from_digits(random_digits(rng, 6, 10));
        auto Z = ContinuantPair::from_digits(random_digits(rng, 6, 10));
        auto W = ContinuantPair::from_digits(random_digits(rng, 6, 10));
        REQUIRE(cross_ratio_check(X, Y, Z, W).all());
        REQUIRE(cross_ratio_check(X, Y, X, W).all());
    }
}

TEST_CASE("independence examples") {
    auto r = test_independence({1, 1}, {1, 1}, 1000);
    CHECK_FALSE(r.independent);
    CHECK(r.relation == std::vector<i64>{1, -1});
    auto s = test_independence({2, 3}, {3, 2}, 1000000);
    CHECK_FALSE(s.independent);
    CHECK(s.relation == std::vector<i64>{3, -2});
    CHECK(test_independence({2, 3}, {1, 1}, 1000000).independent);
    CHECK_THROWS_AS(test_independence({1, 2, 3}, {500, 500, 500}, 1000003), capacity_error);
    CHECK_THROWS_AS(test_independence({1, 2}, {1}, 7), validation_error);
}

TEST_CASE("parallel and serial scans agree with brute force") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 300; ++i) {
        const std::size_t k = 1 + rng() % 3;
        const i64 q = 50 + static_cast<i64>(rng() % 2000);
        std::vector<i64> xs(k), C(k);
        for (std::size_t j = 0; j < k; ++j) {
            xs[j] = static_cast<i64>(rng() % static_cast<u64>(q));
            C[j] = static_cast<i64>(rng() % 6);
        }
        auto want = brute_relation(xs, C, q);
        auto p = test_independence(xs, C, q);
        auto s = test_independence_serial(xs, C, q);
        CHECK(p.independent == want.empty());
        CHECK(s.independent == want.empty());
        if (!want.empty()) {
            CHECK(p.relation == want);
            CHECK(s.relation == want);
        }
    }
}

TEST_CASE("Dirichlet box") {
    auto a = dirichlet_box({1, 1}, {1, 1}, 1, 1000);
    CHECK(a.kind == BoxCase::zero_sum);
    CHECK(a.m == std::vector<i64>{1, -1});

    auto b = dirichlet_box({10, 13}, {13, 13}, 3, 1000000);
    CHECK(b.R[0] == doctest::Approx(4.0 * 2 * 169 / 3 / 13));
    CHECK(b.sum == 10 * b.m[0] + 13 * b.m[1]);
    CHECK(b.kind == BoxCase::zero_sum);
    CHECK(b.m == std::vector<i64>{13, -10});
    for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(b.m[j]) <= 2 * b.R[j]);

    // precondition failures name the inequality
    CHECK_THROWS_WITH_AS(dirichlet_box({10, 13}, {5, 13}, 3, 1000000), doctest::Contains("exceeds X_1"), domain_error);
    CHECK_THROWS_WITH_AS(dirichlet_box({10, 13}, {13, 13}, 3, 100), doctest::Contains("(8k)^k"), domain_error);
    CHECK_THROWS_AS(dirichlet_box({10}, {13}, 3, 1000), domain_error);

    std::mt19937_64 rng(5);
    int ran = 0;
    for (int i = 0; i < 400; ++i) {
        const i64 q = 100000 + static_cast<i64>(rng() % 900000);
        const std::size_t k = 3;
        std::vector<i64> xs(k), Xs(k);
        for (std::size_t j = 0; j < k; ++j) {
            Xs[j] = 1 + static_cast<i64>(rng() % 3000);
            xs[j] = static_cast<i64>(rng() % static_cast<u64>(2 * Xs[j] + 1)) - Xs[j];
        }
        const double T = 1 + static_cast<double>(rng() % 50);
        DirichletOutcome o;
        try {
            o = dirichlet_box(xs, Xs, T, q);
        } catch (const domain_error&) {
            continue;
        }
        ++ran;
        i64 s = 0;
        for (std::size_t j = 0; j < k; ++j) s += o.m[j] * xs[j];
        CHECK(s == o.sum);
        if (o.kind == BoxCase::zero_sum)
            CHECK(s == 0);
        else
            CHECK((s != 0 && std::abs(static_cast<double>(s)) <= T));
    }
    CHECK(ran > 50);
}

TEST_CASE("repulsion for dependent sums") {
    auto v = repulsion_dependent(5, 7, {1, 2}, {1, 2}, 2, 1);
    CHECK(v.vacuous);
    CHECK(v.holds);
    CHECK_THROWS_AS(repulsion_dependent(1, 100003, {100, 200}, {100, 200}, 2, 5), domain_error);
}

TEST_CASE("triple uniqueness") {
    const i64 q = 2000000000;
    const double t = 10000;
    const std::vector<i64> C{1, 1, 1}, C2{2, 2, 2};
    CHECK(triple_uniqueness(10000, 20000, 30000, {1, 1, -1}, {1, 1, -1}, C, C, q, 2, t));
    CHECK(triple_uniqueness(10000, 20000, 30000, {1, 1, -1}, {-1, -1, 1}, C, C, q, 2, t));
    // two genuinely different relations: reported, not hidden
    CHECK_FALSE(triple_uniqueness(10000, 20000, 30000, {1, 1, -1}, {2, -1, 0}, C, C2, q, 2, t));
    // huge bounds: refused
    const std::vector<i64> big{1000, 1000, 1000};
    CHECK_THROWS_AS(triple_uniqueness(10000, 10000, 20000, {1, 1, -1}, {1, -1, 0}, big, big, q, 2, t), domain_error);
    CHECK_THROWS_AS(triple_uniqueness(10000, 20000, 30000, {1, 1, 1}, {1, 1, -1}, C, C, q, 2, t), domain_error);
    CHECK_THROWS_AS(triple_uniqueness(5, 20000, 30000, {1, 1, -1}, {1, 1, -1}, C, C, q, 2, t), domain_error);
}

TEST_CASE("distance report") {
    // prefixes of one expansion: no branching digit
    const i64 q = 10007, a = 6185;
    auto d = expand_digits(a, q);
    auto X = ContinuantPair::from_digits({d.begin(), d.begin() + 4});
    auto Y = ContinuantPair::from_digits({d.begin(), d.begin() + 5});
    auto r = distance_bounds_check(a, a, q, X, Y, 2);
    CHECK(abs(r.d) == 1);
    CHECK(r.lower.status == Check::not_applicable);
    CHECK(r.upper.status == Check::not_applicable);
    CHECK(to_string(Check::not_applicable) == "not-applicable");

    // branching at the second digit
    auto P = ContinuantPair::from_digits({2, 1, 3, 2});
    auto Q = ContinuantPair::from_digits({2, 4, 1, 2});
    auto s = distance_bounds_check(5000, 5100, q, P, Q, 2);
    CHECK(s.l == 2);
    CHECK(s.r_l == 1);
    CHECK(s.rp_l == 4);
    CHECK(s.lower.status != Check::not_applicable);
    CHECK(s.upper.status != Check::not_applicable);
}

TEST_CASE("k = 2 window and harvest") {
    auto w = k2_window(4999, 2);
    CHECK(w.C >= 1);
    CHECK(w.t >= 1);
    CHECK(w.N == doctest::Approx(4999 / (w.t * w.t)));
    CHECK(k2_window(101, 5).C == 0);

    const i64 q = 4999, M = 2;
    auto inst = harvest(q, M, w.t);
    REQUIRE_FALSE(inst.empty());
    auto U = decompose_ZM(q, M, w.t);
    for (auto& h : inst) {
        CHECK(U.contains(h.a));
        CHECK(static_cast<double>(h.x) > w.t);
        CHECK(static_cast<double>(h.x) < q / w.t);
        CHECK(continuant(h.digits) == h.x);
        auto full = expand_digits(h.a, q);
        CHECK(std::equal(h.digits.begin(), h.digits.end(), full.begin()));
        std::vector<u64> tail(h.digits.begin() + 1, h.digits.end());
        CHECK(continuant(tail) == h.x_hat);
    }
    CHECK(to_json_line(inst[0]).find("\"x_hat\"") != std::string::npos);
}

TEST_CASE("k = 2 sweep on a small window of primes") {
    auto s = k2_sweep(1000, 2000, {2, 3});
    CHECK(s.instances > 0);
    CHECK(s.pairs > 0);
    CHECK(s.dependent_pairs == 0);
    CHECK(s.gcd_violations == 0);
    CHECK(s.repulsion_checks > 0);
    CHECK(s.repulsion_failures == 0);
}
