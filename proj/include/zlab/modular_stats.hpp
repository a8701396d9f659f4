#pragma once

#include "zlab/cantor.hpp"
#include "zlab/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace zlab {

struct StatReport {
    std::string op;
    i64 q = 0;
    std::vector<std::pair<std::string, double>> params;
    double observed = 0;
    double predicted = 0;
    double abs_dev = 0;
    double rel_dev = 0;
    u64 seed = 0;
    std::vector<std::pair<std::string, double>> extra;

    void finish();  // fills abs_dev and rel_dev
    double get(const std::string& key) const;
};

struct ThickenResult {
    std::vector<i64> set;  // sorted residues in [0, q)
    i64 size = 0;
};

struct GoodPartition {
    IntervalUnion good;
    i64 bad_size = 0;  // |A \ good|
    i64 good_intervals = 0;
    i64 bad_intervals = 0;
};

struct EquidistributedInterval {
    i64 lo = 1;
    i64 hi = 1;
    int steps = 0;
    double size_bound = 0;         // N exp(-4k log(4k) log(1/delta))
    bool equidistributed = false;  // with the global density delta
    bool size_ok = false;
};

// Residue-level inverse conventions for composite q.
enum class InverseRule { geometric, residue_lift };

// Whether a in Z/qZ lies in B^{-1}. With g = gcd(a,q), a' = a/g, q' = q/g the
// point ((a')^{-1} mod q')/q' is tested against B. Returns false for q' = 1.
bool in_inverse(i64 a, const IntervalUnion& B, InverseRule rule);

StatReport count_T_action(const std::vector<i64>& A, const std::vector<i64>& B, i64 N, i64 q);
StatReport count_T_action_serial(const std::vector<i64>& A, const std::vector<i64>& B, i64 N, i64 q);

StatReport intersect_inverse(const IntervalUnion& A, const IntervalUnion& B);
StatReport intersect_inverse_serial(const IntervalUnion& A, const IntervalUnion& B);

StatReport sigma_star(const IntervalUnion& A);

ThickenResult thicken(const std::vector<i64>& C, i64 N2, i64 q);

GoodPartition classify_good(const IntervalUnion& A, i64 N_star, double theta = 0.5);

// A is a subset of [1, N].
EquidistributedInterval equidistributed_interval(const std::vector<i64>& A, i64 N, i64 k);
bool is_k_equidistributed(const std::vector<i64>& A, i64 lo, i64 hi, i64 k, double delta);

// 'count' disjoint runs of length 'len' in [1, q], chosen with a seeded RNG.
IntervalUnion random_interval_union(i64 q, i64 count, i64 len, u64 seed);

i64 mobius(i64 n);

}  // namespace zlab
