#pragma once

#include "zlab/types.hpp"

#include <optional>
#include <vector>

namespace zlab {

struct SearchResult {
    i64 q = 0;
    i64 M = 0;
    std::vector<i64> numerators;  // sorted
    i64 count = 0;
    double predicted_scale = 0;   // q^{2 w_M - 1}
};

struct MinSum {
    i64 a = 0;
    i64 S = 0;
    friend bool operator==(const MinSum&, const MinSum&) = default;
};

struct LarcherRow {
    i64 q = 0;
    i64 a = 0;
    i64 min_S = 0;
    double per_log = 0;           // S / log q
    std::optional<double> per_log_sqrtloglog;  // S / (log q sqrt(log log q)), q >= 3
    std::optional<double> phi_scaled;          // S phi(q) / (q log q log log q), q >= 3
};

SearchResult find_numerators(i64 q, i64 M);          // parallel over c_1
SearchResult find_numerators_serial(i64 q, i64 M);
SearchResult find_numerators_scan(i64 q, i64 M);     // brute force over a

std::optional<i64> exists_zaremba(i64 q, i64 M);
std::optional<i64> exists_zaremba_serial(i64 q, i64 M);
// exists_zaremba for every q in [lo, hi]; entry i is for q = lo + i
std::vector<std::optional<i64>> exists_zaremba_range(i64 lo, i64 hi, i64 M);
std::vector<std::optional<i64>> exists_zaremba_range_serial(i64 lo, i64 hi, i64 M);

struct CountResult {
    i64 count = 0;
    double ratio = 0;
};
CountResult count_numerators(i64 q, i64 M);

MinSum min_sum(i64 q);
MinSum min_sum_scan(i64 q);
std::vector<MinSum> min_sum_range(i64 lo, i64 hi);  // parallel over q
std::vector<MinSum> min_sum_range_serial(i64 lo, i64 hi);

i64 euler_phi(i64 n);
std::vector<LarcherRow> larcher_report(i64 lo, i64 hi);

// Fibonacci bound used by min_sum: the largest continuant with digit sum s is F_{s+1}.
i64 fibonacci(int n);
// Largest K(r_1..r_n) over r with all r_j >= 1 and sum s (exhaustive, small s).
i64 max_continuant_with_sum(int s);

// Resumable serial enumeration of find_numerators. The frontier holds the
// unexpanded subtrees in DFS order, each as a digit prefix with its
// continuant pair (k, km) and numerator pair (n, nm).
struct FrontierEntry {
    std::vector<u64> digits;
    i64 k = 1, km = 0, n = 0, nm = 1;
};

class FrontierSearch {
public:
    FrontierSearch(i64 q, i64 M);
    FrontierSearch(i64 q, i64 M, std::vector<FrontierEntry> frontier, std::vector<i64> found, i64 nodes);

    // Expands up to 'budget' nodes; returns the number expanded.
    i64 step(i64 budget);
    bool done() const noexcept { return stack_.empty(); }

    i64 q() const noexcept { return q_; }
    i64 M() const noexcept { return M_; }
    i64 nodes() const noexcept { return nodes_; }
    const std::vector<FrontierEntry>& frontier() const noexcept { return stack_; }
    const std::vector<i64>& found() const noexcept { return found_; }
    SearchResult result() const;  // only once done()

private:
    i64 q_, M_;
    std::vector<FrontierEntry> stack_;  // back() is expanded next
    std::vector<i64> found_;
    i64 nodes_ = 0;
};

}  // namespace zlab
