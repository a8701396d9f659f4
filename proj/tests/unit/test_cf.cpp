#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zlab/cf.hpp"

#include <numeric>
#include <vector>

using namespace zlab;

namespace {

// Plain Euclid, independent of the library.
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

// Backward fold of [0;d...] into num/den.
std::pair<BigInt, BigInt> fold(const std::vector<u64>& d) {
    BigInt num = 0, den = 1;
    for (auto it = d.rbegin(); it != d.rend(); ++it) {
        BigInt nd = BigInt(*it) * den + num;
        num = den;
        den = nd;
    }
    return {num, den};
}

BigInt K(const std::vector<u64>& v) {
    BigInt a = 1, b = 0;  // K(empty), K(-1)
    for (u64 c : v) {
        BigInt n = BigInt(c) * a + b;
        b = a;
        a = n;
    }
    return a;
}

i64 inv_brute(i64 a, i64 q) {
    for (i64 b = 1; b < q; ++b)
        if (a * b % q == 1) return b;
    return -1;
}

// all tuples with entries in [1,hi] of length n
template <class F>
void tuples(int n, u64 hi, F f) {
    std::vector<u64> v(static_cast<std::size_t>(n), 1);
    while (true) {
        f(v);
        int i = n - 1;
        while (i >= 0 && v[i] == hi) v[i--] = 1;
        if (i < 0) return;
        ++v[i];
    }
}

}  // namespace

TEST_CASE("expand examples") {
    CHECK(expand(5, 7).digits() == std::vector<u64>{1, 2, 2});
    CHECK(expand(1, 2).digits() == std::vector<u64>{2});
    CHECK(expand(7, 16).digits() == std::vector<u64>{2, 3, 2});
    CHECK(expand(0, 9).empty());
    CHECK_THROWS_AS(expand(1, 0), domain_error);
    CHECK_THROWS_AS(expand(BigInt(3), BigInt(0)), domain_error);
}

TEST_CASE("expand of a reducible fraction is the reduced expansion") {
    CHECK(expand(10, 14).digits() == expand(5, 7).digits());
    CHECK(expand(6, 9).digits() == std::vector<u64>{1, 2});
}

TEST_CASE("evaluate examples and validation") {
    Rational r = evaluate(DigitSeq{1, 2, 2});
    CHECK(r.num == 5);
    CHECK(r.den == 7);
    Rational z = evaluate(DigitSeq{});
    CHECK(z.num == 0);
    CHECK(z.den == 1);
    Rational s = evaluate(DigitSeq{2, 3, 2});
    CHECK(s.num == 7);
    CHECK(s.den == 16);
    CHECK_THROWS_AS(DigitSeq({1, 2, 1}), validation_error);
    CHECK_THROWS_AS(DigitSeq({0, 2}), validation_error);
}

TEST_CASE("continuant examples") {
    CHECK(continuant({}) == 1);
    CHECK(continuant({2, 3, 2}) == 16);
    CHECK(continuant({1, 2, 2}) == 7);
    CHECK_THROWS_AS(continuant({1, 0, 2}), validation_error);
    CHECK(continuant_u64({2, 3, 2}) == 16u);
    std::vector<u64> ones(100, 1);
    CHECK_THROWS_AS(continuant_u64(ones), capacity_error);
    CHECK(continuant(ones) == K(ones));
}

TEST_CASE("convergent tables") {
    auto t = convergents(DigitSeq{1, 2, 2});
    std::vector<BigInt> q1{1, 1, 3, 7};
    CHECK(t.q == q1);
    auto t2 = convergents(DigitSeq{2});
    CHECK(t2.q == std::vector<BigInt>{1, 2});
    auto t3 = convergents(DigitSeq{2, 3, 2});
    CHECK(t3.q == std::vector<BigInt>{1, 2, 7, 16});
    CHECK(t3.p.back() == 7);
}

TEST_CASE("max and sum of quotients") {
    CHECK(max_quotient(DigitSeq{1, 2, 2}) == 2);
    CHECK(max_quotient(DigitSeq{7}) == 7);
    CHECK(max_quotient(DigitSeq{2, 3, 2}) == 3);
    CHECK(sum_quotients(DigitSeq{1, 2, 2}) == 5);
    CHECK(sum_quotients(DigitSeq{7}) == 7);
    CHECK(sum_quotients(DigitSeq{2, 3, 2}) == 7);
    CHECK_THROWS_AS(max_quotient(DigitSeq{}), domain_error);
    CHECK_THROWS_AS(sum_quotients(DigitSeq{}), domain_error);
}

TEST_CASE("inverse digits examples") {
    CHECK(inverse_digits(DigitSeq{1, 2, 2}).digits() == std::vector<u64>{2, 3});
    CHECK(inverse_digits(DigitSeq{2}).digits() == std::vector<u64>{2});
    CHECK(inverse_digits(DigitSeq{2, 3}).digits() == std::vector<u64>{1, 2, 2});
    CHECK_THROWS_AS(inverse_digits(DigitSeq{}), domain_error);
}

TEST_CASE("canonicalize folds a trailing one") {
    CHECK(canonicalize({2, 2, 1}) == std::vector<u64>{2, 3});
    CHECK(canonicalize({1}) == std::vector<u64>{1});  // 1/1 has nothing to fold into
    CHECK(canonicalize({3, 2}) == std::vector<u64>{3, 2});
}

TEST_CASE("round trip, determinant and inverse law up to q = 2000") {
    i64 bad = 0;
    for (i64 q = 2; q <= 2000; ++q) {
        for (i64 a = 1; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            DigitSeq d = expand(a, q);
            if (d.digits() != euclid(a, q)) ++bad;
            auto [n, m] = fold(d.digits());
            if (n != a || m != q) ++bad;
            Rational r = evaluate(d);
            if (r.num != a || r.den != q) ++bad;

            auto t = convergents(d);
            for (std::size_t v = 1; v < t.q.size(); ++v) {
                BigInt det = t.p[v] * t.q[v - 1] - t.p[v - 1] * t.q[v];
                if (det != ((v - 1) % 2 == 0 ? 1 : -1)) ++bad;
            }

            Rational ri = evaluate(inverse_digits(d));
            if (ri.den != q || ri.num != inv_brute(a, q)) ++bad;
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("continuant symmetry, entries in [1,5], n <= 7") {
    // n up to 10 is swept by the verify-lemma command; the unit run keeps it short
    i64 bad = 0;
    for (int n = 0; n <= 7; ++n) {
        tuples(n, 5, [&](const std::vector<u64>& v) {
            std::vector<u64> r(v.rbegin(), v.rend());
            if (continuant(v) != continuant(r) || continuant(v) != K(v)) ++bad;
        });
    }
    CHECK(bad == 0);
}

TEST_CASE("domino identity, entries in [1,4], n <= 9") {
    i64 bad = 0;
    for (int n = 2; n <= 9; ++n) {
        tuples(n, 4, [&](const std::vector<u64>& x) {
            BigInt whole = continuant(x);
            for (int m = 1; m < n; ++m) {
                auto b = x.begin();
                BigInt rhs = continuant(b, b + m) * continuant(b + m, x.end());
                if (m >= 1 && m + 1 <= n)
                    rhs += continuant(b, b + m - 1) * continuant(b + m + 1, x.end());
                if (rhs != whole) ++bad;
            }
        });
    }
    CHECK(bad == 0);
}

TEST_CASE("64-bit helpers agree with the exact path") {
    for (i64 q : {97, 1000, 65521}) {
        for (i64 a = 1; a < q; a += 7) {
            auto d = expand_digits(a, q);
            CHECK(d == euclid(a, q));
            auto qs = convergent_denominators(a, q);
            REQUIRE(qs.size() == d.size());
            for (std::size_t j = 0; j < d.size(); ++j) {
                std::vector<u64> pre(d.begin(), d.begin() + static_cast<long>(j) + 1);
                CHECK(BigInt(qs[j]) == K(pre));
            }
        }
    }
}

TEST_CASE("big integers") {
    // F_301 / F_302: ones, closed by a 2 in canonical form
    BigInt f0 = 0, f1 = 1;
    for (int i = 0; i < 301; ++i) {
        BigInt f2 = f0 + f1;
        f0 = f1;
        f1 = f2;
    }
    DigitSeq fib = expand(f0, f1);
    CHECK(fib.size() == 300);
    CHECK(max_quotient(fib) == 2);
    CHECK(fib.digits().back() == 2);
    CHECK(sum_quotients(fib) == 301);
    Rational fr = evaluate(fib);
    CHECK(fr.num == f0);
    CHECK(fr.den == f1);

    BigInt q = BigInt(1) << 200;
    BigInt a = 1;
    for (int i = 0; i < 60; ++i) a = (a * 6364136223846793005ULL + 1442695040888963407ULL) % q;
    a |= 1;
    DigitSeq d = expand(a, q);
    Rational r = evaluate(d);
    CHECK(r.num == a);
    CHECK(r.den == q);

    // 2^200 / 3 leaves a remainder of 1 after one step: the next quotient does not fit
    CHECK_THROWS_AS(expand(q / 3, q), capacity_error);
}
