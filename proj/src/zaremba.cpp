#include "zlab/zaremba.hpp"

#include "zlab/cantor.hpp"
#include "zlab/cf.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>

namespace zlab {

namespace {

void check_args(i64 q, i64 M) {
    require_modulus(q, "zaremba");
    if (q < 2) throw domain_error("zaremba: q must be >= 2");
    if (M < 2) throw domain_error("zaremba: M must be >= 2");
}

// State along a digit string: k = q_l, km = q_{l-1}, n = p_l, nm = p_{l-1}.
struct Node {
    i64 k, km, n, nm;
};

constexpr Node kRoot{1, 0, 0, 1};

template <class Emit>
bool dfs(const Node& s, i64 q, i64 M, Emit& emit) {
    for (i64 c = 1; c <= M; ++c) {
        const i64 v = c * s.k + s.km;
        if (v > q) break;
        const i64 a = c * s.n + s.nm;
        if (v == q) {
            if (c >= 2 && gcd64(a, q) == 1 && emit(a)) return true;
            break;
        }
        if (dfs(Node{v, s.k, a, s.n}, q, M, emit)) return true;
    }
    return false;
}

Node child(const Node& s, i64 c) { return Node{c * s.k + s.km, s.k, c * s.n + s.nm, s.n}; }

// Search within the shard fixed by c_1.
template <class Emit>
bool dfs_shard(i64 c1, i64 q, i64 M, Emit& emit) {
    const Node s = child(kRoot, c1);
    if (s.k > q) return false;
    if (s.k == q) return c1 >= 2 && emit(s.n);
    return dfs(s, q, M, emit);
}

double scale(i64 q, i64 M) { return std::pow(static_cast<double>(q), 2.0 * hensley_w(M) - 1.0); }

}  // namespace

SearchResult find_numerators_serial(i64 q, i64 M) {
    check_args(q, M);
    SearchResult r{q, M, {}, 0, scale(q, M)};
    auto emit = [&](i64 a) {
        r.numerators.push_back(a);
        return false;
    };
    dfs(kRoot, q, M, emit);
    std::sort(r.numerators.begin(), r.numerators.end());
    r.count = static_cast<i64>(r.numerators.size());
    return r;
}

SearchResult find_numerators(i64 q, i64 M) {
    check_args(q, M);
    SearchResult r{q, M, {}, 0, scale(q, M)};
    const i64 shards = std::min(M, q);
    std::vector<std::vector<i64>> found(static_cast<std::size_t>(shards));
#pragma omp parallel for schedule(dynamic)
    for (i64 c1 = 1; c1 <= shards; ++c1) {
        auto& out = found[static_cast<std::size_t>(c1 - 1)];
        auto emit = [&](i64 a) {
            out.push_back(a);
            return false;
        };
        dfs_shard(c1, q, M, emit);
    }
    for (auto& f : found) r.numerators.insert(r.numerators.end(), f.begin(), f.end());
    std::sort(r.numerators.begin(), r.numerators.end());
    r.count = static_cast<i64>(r.numerators.size());
    return r;
}

SearchResult find_numerators_scan(i64 q, i64 M) {
    check_args(q, M);
    SearchResult r{q, M, {}, 0, scale(q, M)};
    for (i64 a = 1; a < q; ++a) {
        if (gcd64(a, q) != 1) continue;
        auto d = expand_digits(a, q);
        if (*std::max_element(d.begin(), d.end()) <= static_cast<u64>(M)) r.numerators.push_back(a);
    }
    r.count = static_cast<i64>(r.numerators.size());
    return r;
}

std::optional<i64> exists_zaremba_serial(i64 q, i64 M) {
    check_args(q, M);
    std::optional<i64> hit;
    auto emit = [&](i64 a) {
        hit = a;
        return true;
    };
    dfs(kRoot, q, M, emit);
    return hit;
}

// Shards are searched concurrently; a shard stops once a smaller shard has a
// witness, and the smallest shard with a witness wins.
std::optional<i64> exists_zaremba(i64 q, i64 M) {
    check_args(q, M);
    const i64 shards = std::min(M, q);
    std::vector<i64> found(static_cast<std::size_t>(shards), 0);
    std::atomic<i64> best_shard{shards + 1};
#pragma omp parallel for schedule(dynamic)
    for (i64 c1 = 1; c1 <= shards; ++c1) {
        if (c1 > best_shard.load(std::memory_order_relaxed)) continue;
        i64 hit = 0;
        auto emit = [&](i64 a) {
            hit = a;
            return true;
        };
        if (dfs_shard(c1, q, M, emit)) {
            found[static_cast<std::size_t>(c1 - 1)] = hit;
            i64 cur = best_shard.load();
            while (c1 < cur && !best_shard.compare_exchange_weak(cur, c1)) {
            }
        }
    }
    const i64 b = best_shard.load();
    if (b > shards) return std::nullopt;
    return found[static_cast<std::size_t>(b - 1)];
}

std::vector<std::optional<i64>> exists_zaremba_range_serial(i64 lo, i64 hi, i64 M) {
    std::vector<std::optional<i64>> out;
    for (i64 q = lo; q <= hi; ++q) out.push_back(exists_zaremba_serial(q, M));
    return out;
}

std::vector<std::optional<i64>> exists_zaremba_range(i64 lo, i64 hi, i64 M) {
    if (hi < lo) return {};
    std::vector<std::optional<i64>> out(static_cast<std::size_t>(hi - lo + 1));
#pragma omp parallel for schedule(dynamic, 64)
    for (i64 q = lo; q <= hi; ++q) out[static_cast<std::size_t>(q - lo)] = exists_zaremba_serial(q, M);
    return out;
}

CountResult count_numerators(i64 q, i64 M) {
    check_args(q, M);
    const i64 shards = std::min(M, q);
    i64 total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
    for (i64 c1 = 1; c1 <= shards; ++c1) {
        i64 n = 0;
        auto emit = [&](i64) {
            ++n;
            return false;
        };
        dfs_shard(c1, q, M, emit);
        total += n;
    }
    return {total, static_cast<double>(total) / scale(q, M)};
}

i64 fibonacci(int n) {
    static const std::array<i64, 92> F = [] {
        std::array<i64, 92> f{};
        f[1] = 1;
        for (int i = 2; i < 92; ++i) f[i] = f[i - 1] + f[i - 2];
        return f;
    }();
    if (n < 0 || n >= 92) throw capacity_error("fibonacci: index out of range");
    return F[static_cast<std::size_t>(n)];
}

i64 max_continuant_with_sum(int s) {
    i64 best = 0;
    std::vector<u64> d;
    std::function<void(int)> rec = [&](int left) {
        if (left == 0) {
            best = std::max(best, static_cast<i64>(continuant_u64(d)));
            return;
        }
        for (int c = 1; c <= left; ++c) {
            d.push_back(static_cast<u64>(c));
            rec(left - c);
            d.pop_back();
        }
    };
    rec(s);
    return best;
}

namespace {

i64 digit_sum(i64 a, i64 q) {
    i64 s = 0;
    while (a != 0) {
        s += q / a;
        i64 r = q % a;
        q = a;
        a = r;
    }
    return s;
}

class MinSumSearch {
public:
    explicit MinSumSearch(i64 q) : q_(q) {}

    MinSum run() {
        seed();
        improve(kRoot, 0);
        target_ = best_;
        found_ = false;
        first_in_value_order(kRoot, 0, 0);
        if (!found_) throw invariant_failure("min_sum: value-ordered pass missed the optimum");
        return {best_a_, best_};
    }

private:
    // Smallest remaining digit sum s >= 1 that can still reach q:
    // K(P,R) <= k F_{s+1} + km F_s.
    i64 completion(i64 k, i64 km) const {
        int s = 1;
        while (static_cast<__int128>(k) * fibonacci(s + 1) + static_cast<__int128>(km) * fibonacci(s) < q_) ++s;
        return s;
    }

    void seed() {
        best_ = q_;
        best_a_ = 1;
        const i64 c = std::llround(static_cast<double>(q_) / std::numbers::phi);
        for (i64 a = std::max<i64>(1, c - 64); a <= std::min<i64>(q_ - 1, c + 64); ++a) {
            if (gcd64(a, q_) != 1) continue;
            i64 s = digit_sum(a, q_);
            if (s < best_) {
                best_ = s;
                best_a_ = a;
            }
        }
    }

    // Looks for strictly smaller digit sums.
    void improve(const Node& s, i64 part) {
        for (i64 c = 1;; ++c) {
            const i64 v = c * s.k + s.km;
            if (v > q_) break;
            const i64 tot = part + c;
            if (tot >= best_) break;
            if (v == q_) {
                if (c >= 2) {
                    best_ = tot;
                    best_a_ = c * s.n + s.nm;
                }
                break;
            }
            if (tot + completion(v, s.k) >= best_) continue;
            improve(child(s, c), tot);
        }
    }

    // Visits digit strings in increasing order of a/q and stops at the first
    // one with digit sum target_. Odd positions reverse the order of digits.
    bool first_in_value_order(const Node& s, i64 part, int depth) {
        i64 cmax = (q_ - s.km) / s.k;
        cmax = std::min(cmax, target_ - part);
        if (cmax < 1) return false;
        auto sub = [&](i64 c) {
            const i64 v = c * s.k + s.km;
            if (v >= q_) return false;
            if (part + c + completion(v, s.k) > target_) return false;
            return first_in_value_order(child(s, c), part + c, depth + 1);
        };
        auto leaf = [&](i64 c) {
            if (c >= 2 && c * s.k + s.km == q_ && part + c == target_) {
                best_a_ = c * s.n + s.nm;
                found_ = true;
                return true;
            }
            return false;
        };
        if (depth % 2 == 0) {
            for (i64 c = cmax; c >= 1; --c)
                if (sub(c) || leaf(c)) return true;
        } else {
            for (i64 c = 1; c <= cmax; ++c)
                if (leaf(c) || sub(c)) return true;
        }
        return false;
    }

    i64 q_;
    i64 best_ = 0;
    i64 best_a_ = 0;
    i64 target_ = 0;
    bool found_ = false;
};

}  // namespace

MinSum min_sum(i64 q) {
    require_modulus(q, "min_sum");
    if (q < 2) throw domain_error("min_sum: q must be >= 2");
    return MinSumSearch(q).run();
}

MinSum min_sum_scan(i64 q) {
    require_modulus(q, "min_sum_scan");
    if (q < 2) throw domain_error("min_sum_scan: q must be >= 2");
    MinSum m{0, 0};
    for (i64 a = 1; a < q; ++a) {
        if (gcd64(a, q) != 1) continue;
        i64 s = digit_sum(a, q);
        if (m.a == 0 || s < m.S) m = {a, s};
    }
    return m;
}

std::vector<MinSum> min_sum_range_serial(i64 lo, i64 hi) {
    std::vector<MinSum> out;
    for (i64 q = lo; q <= hi; ++q) out.push_back(min_sum(q));
    return out;
}

std::vector<MinSum> min_sum_range(i64 lo, i64 hi) {
    if (hi < lo) return {};
    std::vector<MinSum> out(static_cast<std::size_t>(hi - lo + 1));
#pragma omp parallel for schedule(dynamic, 16)
    for (i64 q = lo; q <= hi; ++q) out[static_cast<std::size_t>(q - lo)] = min_sum(q);
    return out;
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

std::vector<LarcherRow> larcher_report(i64 lo, i64 hi) {
    if (lo < 2 || hi < lo) throw domain_error("larcher_report: need 2 <= lo <= hi");
    std::vector<MinSum> ms = min_sum_range(lo, hi);
    std::vector<LarcherRow> rows;
    for (i64 q = lo; q <= hi; ++q) {
        const MinSum& m = ms[static_cast<std::size_t>(q - lo)];
        LarcherRow r;
        r.q = q;
        r.a = m.a;
        r.min_S = m.S;
        const double L = std::log(static_cast<double>(q));
        r.per_log = static_cast<double>(m.S) / L;
        if (L > 1.0) {
            const double LL = std::log(L);
            r.per_log_sqrtloglog = static_cast<double>(m.S) / (L * std::sqrt(LL));
            r.phi_scaled = static_cast<double>(m.S) * static_cast<double>(euler_phi(q)) / (static_cast<double>(q) * L * LL);
        }
        rows.push_back(r);
    }
    return rows;
}

FrontierSearch::FrontierSearch(i64 q, i64 M) : q_(q), M_(M) {
    check_args(q, M);
    stack_.push_back(FrontierEntry{});
}

FrontierSearch::FrontierSearch(i64 q, i64 M, std::vector<FrontierEntry> frontier, std::vector<i64> found, i64 nodes)
    : q_(q), M_(M), stack_(std::move(frontier)), found_(std::move(found)), nodes_(nodes) {
    check_args(q, M);
    for (const auto& e : stack_) {
        // the pairs must be the continuants of the stored prefix
        i64 k = 1, km = 0, n = 0, nm = 1;
        for (u64 c : e.digits) {
            const i64 ci = static_cast<i64>(c);
            if (c < 1 || ci > M) throw validation_error("FrontierSearch: digit out of range in checkpoint");
            const i64 nk = ci * k + km, nn = ci * n + nm;
            km = k;
            k = nk;
            nm = n;
            n = nn;
            if (k > q) throw validation_error("FrontierSearch: prefix overshoots q in checkpoint");
        }
        if (k != e.k || km != e.km || n != e.n || nm != e.nm)
            throw validation_error("FrontierSearch: continuant pair does not match its prefix");
    }
}

i64 FrontierSearch::step(i64 budget) {
    i64 done_here = 0;
    while (!stack_.empty() && done_here < budget) {
        FrontierEntry e = std::move(stack_.back());
        stack_.pop_back();
        ++done_here;
        ++nodes_;
        // push children in reverse so that digit 1 is expanded first
        for (i64 c = M_; c >= 1; --c) {
            const i64 v = c * e.k + e.km;
            if (v > q_) continue;
            const i64 a = c * e.n + e.nm;
            if (v == q_) {
                if (c >= 2 && gcd64(a, q_) == 1) found_.push_back(a);
                continue;
            }
            FrontierEntry ch{e.digits, v, e.k, a, e.n};
            ch.digits.push_back(static_cast<u64>(c));
            stack_.push_back(std::move(ch));
        }
    }
    return done_here;
}

SearchResult FrontierSearch::result() const {
    if (!done()) throw validation_error("FrontierSearch: enumeration not finished");
    SearchResult r{q_, M_, found_, 0, scale(q_, M_)};
    std::sort(r.numerators.begin(), r.numerators.end());
    r.count = static_cast<i64>(r.numerators.size());
    return r;
}

}  // namespace zlab
