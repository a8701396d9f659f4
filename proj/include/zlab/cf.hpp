#pragma once

#include "zlab/types.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace zlab {

// Canonical digits c_1..c_s of [0;c_1,...,c_s]: every c_j >= 1 and c_s >= 2.
// The empty sequence stands for 0/1.
class DigitSeq {
public:
    DigitSeq() = default;
    explicit DigitSeq(std::vector<u64> digits);
    DigitSeq(std::initializer_list<u64> digits);

    const std::vector<u64>& digits() const noexcept { return digits_; }
    std::size_t size() const noexcept { return digits_.size(); }
    bool empty() const noexcept { return digits_.empty(); }
    u64 operator[](std::size_t i) const { return digits_[i]; }

    std::string str() const;

    friend bool operator==(const DigitSeq&, const DigitSeq&) = default;

private:
    std::vector<u64> digits_;
};

struct Rational {
    BigInt num;
    BigInt den{1};
    bool reduced = true;

    static Rational make(BigInt a, BigInt q);
    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num == y.num && x.den == y.den;
    }
};

// p_0..p_s and q_0..q_s with p_0 = 0, q_0 = 1, p_1 = 1, q_1 = c_1.
struct ConvergentTable {
    std::vector<BigInt> p;
    std::vector<BigInt> q;
};

// Rewrites a trailing 1 into the previous digit: [.., c, 1] -> [.., c+1].
std::vector<u64> canonicalize(std::vector<u64> digits);

DigitSeq expand(const BigInt& a, const BigInt& q);
DigitSeq expand(i64 a, i64 q);
Rational evaluate(const DigitSeq& d);

BigInt continuant(const std::vector<u64>& digits);
BigInt continuant(std::vector<u64>::const_iterator first, std::vector<u64>::const_iterator last);
// Same recurrence in 64 bits; throws capacity_error on overflow.
u64 continuant_u64(const std::vector<u64>& digits);

ConvergentTable convergents(const DigitSeq& d);

u64 max_quotient(const DigitSeq& d);
u64 sum_quotients(const DigitSeq& d);

DigitSeq inverse_digits(const DigitSeq& d);

// Convergent denominators q_1..q_s of a/q (64-bit), for the search kernels.
std::vector<i64> convergent_denominators(i64 a, i64 q);
std::vector<u64> expand_digits(i64 a, i64 q);

}  // namespace zlab
