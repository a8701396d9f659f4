#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zlab/criterion.hpp"
#include "zlab/zaremba.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace zlab;

namespace {

std::vector<i64> digits(i64 a, i64 q) {
    std::vector<i64> d;
    while (a != 0) {
        d.push_back(q / a);
        i64 r = q % a;
        q = a;
        a = r;
    }
    return d;
}

i64 maxd(i64 a, i64 q) {
    auto d = digits(a, q);
    return *std::max_element(d.begin(), d.end());
}

i64 sumd(i64 a, i64 q) {
    auto d = digits(a, q);
    return std::accumulate(d.begin(), d.end(), i64{0});
}

std::vector<i64> brute(i64 q, i64 M) {
    std::vector<i64> out;
    for (i64 a = 1; a < q; ++a)
        if (std::gcd(a, q) == 1 && maxd(a, q) <= M) out.push_back(a);
    return out;
}

i64 inv(i64 a, i64 q) {
    for (i64 b = 1; b < q; ++b)
        if (a * b % q == 1) return b;
    return -1;
}

}  // namespace

TEST_CASE("find_numerators examples") {
    CHECK(find_numerators(7, 2).numerators == std::vector<i64>{5});
    CHECK(find_numerators(7, 3).numerators == std::vector<i64>{2, 3, 4, 5});
    CHECK(find_numerators(2, 2).numerators == std::vector<i64>{1});
    CHECK(find_numerators(7, 3).count == 4);
    CHECK_THROWS_AS(find_numerators(7, 1), domain_error);
    CHECK_THROWS_AS(find_numerators(1, 3), domain_error);
}

TEST_CASE("exists_zaremba examples") {
    CHECK(exists_zaremba(7, 2) == std::optional<i64>(5));
    CHECK_FALSE(exists_zaremba(6, 2).has_value());
    CHECK(exists_zaremba(13, 2) == std::optional<i64>(8));
    CHECK(exists_zaremba_serial(13, 2) == std::optional<i64>(8));
}

TEST_CASE("DFS equals brute force for q <= 1500") {
    for (i64 q = 2; q <= 1500; ++q)
        for (i64 M : {2, 3, 5}) {
            auto want = brute(q, M);
            REQUIRE(find_numerators(q, M).numerators == want);
            REQUIRE(find_numerators_serial(q, M).numerators == want);
            auto e = exists_zaremba(q, M);
            REQUIRE(e.has_value() == !want.empty());
            if (e) REQUIRE(maxd(*e, q) <= M);
            REQUIRE(exists_zaremba_serial(q, M) == e);
        }
}

TEST_CASE("scan agrees on larger q") {
    for (i64 q : {4999, 5000, 7919, 10007})
        for (i64 M : {2, 3, 5}) CHECK(find_numerators(q, M).numerators == find_numerators_scan(q, M).numerators);
}

TEST_CASE("exists over a range matches per-q calls") {
    auto r = exists_zaremba_range(2, 3000, 3);
    auto s = exists_zaremba_range_serial(2, 3000, 3);
    CHECK(r == s);
    for (i64 q = 2; q <= 3000; q += 37) CHECK(r[static_cast<std::size_t>(q - 2)] == exists_zaremba(q, 3));
}

TEST_CASE("counts") {
    CHECK(count_numerators(7, 2).count == 1);
    CHECK(count_numerators(7, 2).ratio > 0);
    for (i64 q : {2, 9, 30, 97, 210}) CHECK(count_numerators(q, q).count == euler_phi(q));
    CHECK(count_numerators(101, 5).count == static_cast<i64>(brute(101, 5).size()));
}

TEST_CASE("inverse closure") {
    // Counterexample from the smallest case: 5/7 = [0;1,2,2], inverse 3/7 = [0;2,3].
    auto r = find_numerators(7, 2).numerators;
    CHECK(std::find(r.begin(), r.end(), inv(5, 7)) == r.end());

    // What does hold: closure when c_1 >= 2, and M(a^{-1}) <= M + 1 in general.
    for (i64 q = 3; q <= 1200; ++q)
        for (i64 M : {2, 3, 5}) {
            auto list = find_numerators(q, M).numerators;
            for (i64 a : list) {
                i64 b = inv(a, q);
                CHECK(maxd(b, q) <= M + 1);
                if (digits(a, q)[0] >= 2) CHECK(std::binary_search(list.begin(), list.end(), b));
            }
        }
}

TEST_CASE("numerators pass the criterion at the M+2 level") {
    for (i64 q = 3; q <= 800; ++q)
        for (i64 M : {2, 3, 5})
            for (i64 a : find_numerators(q, M).numerators)
                CHECK(check_bounded(a, q, M).verdict != Verdict::unbounded);
}

TEST_CASE("min_sum examples and scan") {
    CHECK(min_sum(7) == MinSum{2, 5});
    CHECK(min_sum(2) == MinSum{1, 2});
    CHECK(min_sum(16) == MinSum{7, 7});
    for (i64 q = 2; q <= 2500; ++q) {
        i64 best = -1, arg = 0;
        for (i64 a = 1; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            i64 s = sumd(a, q);
            if (best < 0 || s < best) {
                best = s;
                arg = a;
            }
        }
        REQUIRE(min_sum(q) == MinSum{arg, best});
    }
    CHECK(min_sum_range(2, 3000) == min_sum_range_serial(2, 3000));
    for (i64 q : {9973, 10000, 65536}) CHECK(min_sum(q) == min_sum_scan(q));
}

TEST_CASE("Fibonacci bound on continuants with a fixed digit sum") {
    CHECK(fibonacci(1) == 1);
    CHECK(fibonacci(10) == 55);
    for (int s = 1; s <= 18; ++s) CHECK(max_continuant_with_sum(s) == fibonacci(s + 1));
}

TEST_CASE("Moser envelope with M = 5") {
    const double phi = (1 + std::sqrt(5.0)) / 2;
    auto ms = min_sum_range(2, 5000);
    for (i64 q = 2; q <= 5000; ++q) {
        const double env = 5.0 * (std::ceil(std::log(static_cast<double>(q)) / std::log(phi)) + 2);
        CHECK(static_cast<double>(ms[static_cast<std::size_t>(q - 2)].S) <= env);
    }
}

TEST_CASE("Larcher table") {
    auto rows = larcher_report(2, 20);
    REQUIRE(rows.size() == 19);
    CHECK(rows[0].per_log == doctest::Approx(2 / std::log(2.0)));
    CHECK_FALSE(rows[0].per_log_sqrtloglog.has_value());
    CHECK(rows[5].q == 7);
    CHECK(rows[5].per_log == doctest::Approx(2.569).epsilon(1e-3));
    CHECK(rows[5].phi_scaled.has_value());
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(97) == 96);
}

TEST_CASE("resumable search matches the one-shot search") {
    for (i64 q : {97, 1000, 10007})
        for (i64 M : {2, 3, 5}) {
            FrontierSearch s(q, M);
            while (!s.done()) {
                s.step(7);
                // restart from the saved state at every step
                s = FrontierSearch(q, M, s.frontier(), s.found(), s.nodes());
            }
            CHECK(s.result().numerators == find_numerators(q, M).numerators);
        }
    FrontierSearch bad(20, 3);
    bad.step(3);
    auto f = bad.frontier();
    REQUIRE_FALSE(f.empty());
    f[0].k += 1;
    CHECK_THROWS_AS(FrontierSearch(20, 3, f, {}, 3), validation_error);
    CHECK_THROWS_AS(FrontierSearch(20, 3).result(), validation_error);
}
