#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zlab/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

using namespace zlab;

namespace {

using Q = std::pair<i64, i64>;  // num, den

Q fold(const std::vector<u64>& d) {
    i64 num = 0, den = 1;
    for (auto it = d.rbegin(); it != d.rend(); ++it) {
        i64 nd = static_cast<i64>(*it) * den + num;
        num = den;
        den = nd;
    }
    return {num, den};
}

i64 K(const std::vector<u64>& d) { return fold(d).second; }

std::vector<u64> euclid(i64 a, i64 q) {
    std::vector<u64> d;
    while (a != 0) {
        d.push_back(static_cast<u64>(q / a));
        i64 r = q % a;
        q = a;
        a = r;
    }
    return d;
}

// all canonical digit strings with entries <= M and continuant < t
std::vector<std::vector<u64>> strings_below(i64 M, double t) {
    std::vector<std::vector<u64>> out;
    std::function<void(std::vector<u64>&)> rec = [&](std::vector<u64>& d) {
        for (u64 c = 1; c <= static_cast<u64>(M); ++c) {
            d.push_back(c);
            if (static_cast<double>(K(d)) < t) {
                if (c >= 2) out.push_back(d);
                rec(d);
            }
            d.pop_back();
        }
    };
    std::vector<u64> d;
    rec(d);
    return out;
}

// a in [1, q-1] strictly inside some J of a boundary node
std::vector<char> j_oracle(i64 q, i64 M, double t) {
    std::vector<char> in(static_cast<std::size_t>(q + 1), 0);
    for (auto& d : strings_below(M, t)) {
        std::vector<u64> ext = d;
        ext.push_back(1);
        if (static_cast<double>(K(ext)) < t) continue;
        std::vector<u64> e1(d.begin(), d.end() - 1), e2 = e1;
        e1.push_back(static_cast<u64>(M + 1));
        e2.push_back(d.back() - 1);
        e2.push_back(static_cast<u64>(M + 1));
        Q x = fold(e1), y = fold(e2);
        if (x.first * y.second > y.first * x.second) std::swap(x, y);
        for (i64 a = 1; a < q; ++a)
            if (a * x.second > x.first * q && a * y.second < y.first * q) in[a] = 1;
    }
    return in;
}

}  // namespace

TEST_CASE("enumerate Q_M(t) examples") {
    auto n = enumerate_QM(2, 5);
    std::set<Q> got;
    for (auto& f : n) got.insert({f.u, f.v});
    CHECK(got == std::set<Q>{{1, 2}, {2, 3}});
    CHECK(enumerate_QM(4, 2).empty());
    CHECK_THROWS_AS(enumerate_QM(1, 10), domain_error);

    // (3, 8): every reduced u/v, v < 8, with all digits <= 3
    std::set<Q> want;
    for (i64 v = 2; v < 8; ++v)
        for (i64 u = 1; u < v; ++u) {
            if (std::gcd(u, v) != 1) continue;
            auto d = euclid(u, v);
            if (*std::max_element(d.begin(), d.end()) <= 3) want.insert({u, v});
        }
    got.clear();
    for (auto& f : enumerate_QM(3, 8)) got.insert({f.u, f.v});
    CHECK(got == want);
    CHECK(got.count({1, 4}) == 0);
}

TEST_CASE("node fields are consistent") {
    for (auto& f : enumerate_QM(4, 300)) {
        auto [u, v] = fold(f.digits);
        CHECK(u == f.u);
        CHECK(v == f.v);
        auto ext = f.digits;
        ext.push_back(1);
        CHECK(K(ext) == f.v_ext);
        CHECK(f.digits.back() >= 2);
    }
}

TEST_CASE("boundary nodes") {
    CHECK(boundary_QMbar(2, 5).empty());
    auto b = boundary_QMbar(2, 4);
    REQUIRE(b.size() == 1);
    CHECK(b[0].u == 2);
    CHECK(b[0].v == 3);
}

TEST_CASE("counts agree with enumeration and are monotone") {
    for (i64 M : {2, 3, 5})
        for (double t : {3.0, 17.0, 100.0, 1000.0, 5000.0}) {
            i64 n = static_cast<i64>(enumerate_QM(M, t).size());
            CHECK(count_QM(M, t) == n);
            CHECK(count_QM_serial(M, t) == n);
            CHECK(static_cast<i64>(strings_below(M, t).size()) == n);
            CHECK(count_QM(M + 1, t) >= n);
            CHECK(count_QM(M, t * 1.5) >= n);
        }
}

TEST_CASE("interval J example and length bounds") {
    FractionNode node{{1, 2}, 2, 3, 4};
    auto J = interval_J(node, 2);
    CHECK(J.lo.num == 4);
    CHECK(J.lo.den == 7);
    CHECK(J.hi.num == 3);
    CHECK(J.hi.den == 4);
    CHECK_THROWS_AS(interval_J(FractionNode{{2, 1}, 1, 3, 4}, 2), validation_error);

    for (i64 M = 2; M <= 5; ++M)
        for (auto& f : enumerate_QM(M, 10000)) {
            auto I = interval_J(f, M);
            Frac64 len = I.length();
            Frac64 lower{1, f.v * f.v}, upper{2 * (M + 1), f.v * f.v};
            CHECK(lower < len);
            CHECK(len < upper);
            Frac64 x{f.u, f.v};
            CHECK(I.lo < x);
            CHECK(x < I.hi);
        }
}

TEST_CASE("J intervals are disjoint and cover the extensions of their nodes") {
    for (i64 M : {2, 3})
        for (double t : {4.0, 9.0, 20.0, 64.0}) {
            auto nodes = boundary_QMbar(M, t);
            std::vector<RationalInterval> Js;
            for (auto& n : nodes) Js.push_back(interval_J(n, M));
            std::sort(Js.begin(), Js.end(), [](auto& x, auto& y) { return x.lo < y.lo; });
            for (std::size_t i = 1; i < Js.size(); ++i) CHECK(Js[i - 1].hi <= Js[i].lo);

            for (auto& e : enumerate_QM(M, 8 * t)) {
                for (std::size_t i = 0; i < nodes.size(); ++i) {
                    auto& p = nodes[i].digits;
                    if (e.digits.size() < p.size() || !std::equal(p.begin(), p.end(), e.digits.begin())) continue;
                    auto I = interval_J(nodes[i], M);
                    Frac64 x{e.u, e.v};
                    CHECK(I.lo < x);
                    CHECK(x < I.hi);
                }
            }
        }
}

TEST_CASE("decomposition equals the independent J oracle") {
    for (i64 q : {101, 499, 1009, 2003})
        for (i64 M : {2, 3, 5})
            for (double e : {0.3, 0.4, 0.45}) {
                double t = std::floor(std::pow(static_cast<double>(q), e));
                auto U = decompose_ZM(q, M, t);
                CHECK(U.indicator() == j_oracle(q, M, t));
                CHECK(U == membership_union(q, M, t));
            }
}

TEST_CASE("decomposition equals membership up to q = 1500") {
    i64 bad = 0;
    for (i64 q = 5; q <= 1500; ++q)
        for (i64 M : {2, 3, 5})
            for (double e : {0.3, 0.45}) {
                double t = std::pow(static_cast<double>(q), e);
                if (!(decompose_ZM(q, M, t) == membership_union(q, M, t))) ++bad;
            }
    CHECK(bad == 0);
}

TEST_CASE("interval lengths lie in the stated window") {
    for (i64 q : {1009, 10007})
        for (i64 M : {2, 3, 5}) {
            double t = std::floor(std::pow(static_cast<double>(q), 0.4));
            auto U = decompose_ZM(q, M, t);
            REQUIRE(U.size() > 0);
            const i64 lo = static_cast<i64>(std::floor(q / (t * t)));
            const double hi = 8.0 * (M + 1) * q / (t * t) + 1;
            CHECK(U.min_length() >= lo);
            CHECK(static_cast<double>(U.max_length()) <= hi);
        }
    CHECK_THROWS_AS(decompose_ZM(100, 2, 11), domain_error);
}

TEST_CASE("membership by direct digit walk") {
    CHECK(membership_ZM(5, 7, 2, 2.5));
    CHECK_FALSE(membership_ZM(1, 101, 2, 5));  // c_1 = 101
    CHECK_THROWS_AS(membership_ZM(0, 7, 2, 2), domain_error);
    // digits all <= M: inside once t > 2 (below that there are no boundary nodes)
    for (i64 a : {5, 3}) {
        for (double t : {2.5, 3.0}) CHECK(membership_ZM(a, 7, 3, t));
    }
}

TEST_CASE("interval union basics") {
    IntervalUnion U(20, {{2, 3}, {5, 1}, {10, 4}});
    CHECK(U.size() == 8);
    CHECK(U.contains(4));
    CHECK(U.contains(5));
    CHECK_FALSE(U.contains(6));
    CHECK(U.min_length() == 1);
    CHECK(U.max_length() == 4);
    CHECK(IntervalUnion::from_indicator(20, U.indicator()).size() == 8);
    CHECK_THROWS_AS(IntervalUnion(20, {{5, 3}, {6, 1}}), validation_error);
    CHECK_THROWS_AS(IntervalUnion(20, {{19, 3}}), validation_error);
}

TEST_CASE("Ahlfors-David report") {
    IntervalUnion all(1000, {{1, 1000}});
    auto r = ad_check(all, 1.0, 1000);
    CHECK(r.c1_hat == doctest::Approx(1.0));

    // progression with step 10: the constant grows with the scale
    std::vector<char> in(1001, 0);
    for (i64 a = 10; a <= 1000; a += 10) in[a] = 1;
    auto ap = ad_check(IntervalUnion::from_indicator(1000, in), 0.5, 1);
    REQUIRE(ap.c1_by_scale.size() > 4);
    CHECK(ap.c1_by_scale.back().second > 2 * ap.c1_by_scale[3].second);

    auto U = decompose_ZM(10007, 3, 20);
    auto z = ad_check(U, hensley_w(3), U.min_length(), 3);
    CHECK(std::isfinite(z.c1_hat));
    CHECK(z.c1_hat > 0);
    REQUIRE(z.envelope);
    CHECK(*z.envelope == doctest::Approx(81.0));
    CHECK_THROWS_AS(ad_check(IntervalUnion(10), 0.5, 1), domain_error);
}

TEST_CASE("Hensley approximation") {
    CHECK(hensley_w(5) == doctest::Approx(0.83083).epsilon(1e-5));
    CHECK(hensley_w(10) == doctest::Approx(0.922188).epsilon(1e-6));
    for (i64 M = 3; M < 200; ++M) CHECK(hensley_w(M + 1) > hensley_w(M));
    CHECK_THROWS_AS(hensley_w(1), domain_error);
}

TEST_CASE("dimension fits") {
    std::vector<double> g2;
    for (int k = 8; k <= 16; ++k) g2.push_back(std::ldexp(1.0, k));
    auto e2 = estimate_dimension(2, g2);
    CHECK(e2.w_fit >= 0.50);
    CHECK(e2.w_fit <= 0.56);

    std::vector<double> g10;
    for (int k = 6; k <= 10; ++k) g10.push_back(std::ldexp(1.0, k));
    auto e10 = estimate_dimension(10, g10);
    CHECK(std::fabs(e10.w_fit - 0.92222) <= 0.03);
    for (std::size_t i = 1; i < e10.samples.size(); ++i) CHECK(e10.samples[i].second > e10.samples[i - 1].second);

    CHECK_THROWS_AS(estimate_dimension(2, {64.0}), domain_error);
    CHECK_THROWS_AS(estimate_dimension(2, {64.0, 32.0, 128.0, 256.0}), domain_error);
}
