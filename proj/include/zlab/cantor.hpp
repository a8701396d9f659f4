#pragma once

#include "zlab/cf.hpp"
#include "zlab/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace zlab {

struct FractionNode {
    std::vector<u64> digits;
    i64 u = 0;
    i64 v = 1;
    i64 v_ext = 1;  // K(digits, 1)
};

struct RationalInterval {
    Frac64 lo;
    Frac64 hi;
    Frac64 length() const;
    // integers a with lo < a/q < hi, as [first, last]; empty when first > last
    std::pair<i64, i64> scaled(i64 q) const;
};

// Disjoint, sorted, non-empty runs of integers in [1, q].
class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(i64 q) : q_(q) {}
    IntervalUnion(i64 q, std::vector<std::pair<i64, i64>> runs);

    static IntervalUnion from_indicator(i64 q, const std::vector<char>& in);  // in[a], a in [1,q]

    i64 modulus() const noexcept { return q_; }
    const std::vector<std::pair<i64, i64>>& intervals() const noexcept { return runs_; }
    i64 size() const;
    bool contains(i64 a) const;
    std::vector<i64> elements() const;
    std::vector<char> indicator() const;  // index 0..q
    i64 min_length() const;
    i64 max_length() const;

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    i64 q_ = 1;
    std::vector<std::pair<i64, i64>> runs_;
};

struct DimensionEstimate {
    i64 M = 0;
    std::vector<std::pair<double, i64>> samples;
    double slope = 0;
    double w_fit = 0;
    double w_hensley = 0;
};

struct AdReport {
    double w = 0;
    i64 N = 0;
    double c1_hat = 0;        // max |U cap I| / (|I|^w N^{1-w}) over dyadic I
    double c2_inv_hat = 0;    // min of the same ratio over intervals centred at points of U, |I| >= N
    std::vector<std::pair<i64, double>> c1_by_scale;  // per dyadic length
    std::optional<double> envelope;                    // M^4
    bool within_envelope = true;
};

std::vector<FractionNode> enumerate_QM(i64 M, double t);
std::vector<FractionNode> boundary_QMbar(i64 M, double t);
i64 count_QM(i64 M, double t);         // parallel over the first digit
i64 count_QM_serial(i64 M, double t);

RationalInterval interval_J(const FractionNode& node, i64 M);

IntervalUnion decompose_ZM(i64 q, i64 M, double t);
bool membership_ZM(i64 a, i64 q, i64 M, double t);
IntervalUnion membership_union(i64 q, i64 M, double t);  // brute force via membership_ZM

AdReport ad_check(const IntervalUnion& U, double w, i64 N, std::optional<i64> M = std::nullopt);

double hensley_w(i64 M);
DimensionEstimate estimate_dimension(i64 M, const std::vector<double>& t_grid);

}  // namespace zlab
