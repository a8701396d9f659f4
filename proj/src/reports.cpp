#include "zlab/reports.hpp"

#include "zlab/cantor.hpp"
#include "zlab/cf.hpp"
#include "zlab/criterion.hpp"
#include "zlab/discrepancy.hpp"
#include "zlab/independence.hpp"
#include "zlab/modular_stats.hpp"

#include <omp.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace zlab {

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& v, const char* what) {
    throw validation_error("--" + key + ": '" + v + "' is not " + what);
}

i64 parse_int(const std::string& key, const std::string& v) {
    i64 out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) bad_value(key, v, "an integer");
    return out;
}

double parse_real(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double d = 0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        bad_value(key, v, "a number");
    }
    if (pos != v.size() || !std::isfinite(d)) bad_value(key, v, "a number");
    return d;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string RunConfig::str(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

i64 RunConfig::int_value(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw validation_error(verb + ": missing --" + key);
    return parse_int(key, it->second);
}

i64 RunConfig::int_value(const std::string& key, i64 fallback) const {
    return has(key) ? int_value(key) : fallback;
}

double RunConfig::real(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw validation_error(verb + ": missing --" + key);
    return parse_real(key, it->second);
}

double RunConfig::real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

bool RunConfig::flag(const std::string& key) const {
    const std::string v = str(key, "false");
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad_value(key, v, "a boolean");
}

std::vector<i64> RunConfig::int_list(const std::string& key) const {
    std::vector<i64> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(key, trim(item)));
    if (out.empty()) throw validation_error(verb + ": --" + key + " is empty");
    return out;
}

std::map<std::string, std::string> parse_config_text(const std::string& text, const std::string& origin) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = line;
        bool quoted = false;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '"') quoted = !quoted;
            if (body[i] == '#' && !quoted) {
                body.resize(i);
                break;
            }
        }
        body = trim(body);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << origin << ":" << lineno << ": expected 'key = value'";
            throw validation_error(os.str());
        }
        std::string key = trim(body.substr(0, eq)), value = trim(body.substr(eq + 1));
        if (key.empty()) {
            std::ostringstream os;
            os << origin << ":" << lineno << ": empty key";
            throw validation_error(os.str());
        }
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        out[key] = value;
    }
    return out;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw validation_error("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path);
}

const std::vector<std::string>& verbs() {
    static const std::vector<std::string> v{"expand",    "search",    "exists",      "count",       "minsum",
                                            "decompose", "dimension", "discrepancy", "verify-lemma", "stats"};
    return v;
}

namespace {

Json digits_json(const std::vector<u64>& d) {
    Json a = Json::array();
    for (u64 c : d) a.push_back(c);
    return a;
}

Json big_json(const BigInt& v) {
    if (v <= BigInt(INT64_MAX) && v >= BigInt(INT64_MIN)) return v.convert_to<i64>();
    return v.str();
}

Json frac_json(const Frac64& f) { return Json{{"num", f.num}, {"den", f.den}, {"value", f.value()}}; }

// t from either --t or the exponent rule t = floor(q^theta)
double t_of(const RunConfig& c, i64 q) {
    if (c.has("t")) return c.real("t");
    const double theta = c.real("theta", 0.4);
    if (!(theta > 0 && theta <= 0.5)) throw validation_error("--theta must lie in (0, 0.5]");
    return std::floor(std::pow(static_cast<double>(q), theta));
}

Json stat_json(const StatReport& r) {
    Json j;
    j["op"] = r.op;
    j["q"] = r.q;
    Json p = Json::object();
    for (const auto& [k, v] : r.params) p[k] = v;
    j["params"] = p;
    j["observed"] = r.observed;
    j["predicted"] = r.predicted;
    j["abs_dev"] = r.abs_dev;
    j["rel_dev"] = r.rel_dev;
    j["seed"] = r.seed;
    Json e = Json::object();
    for (const auto& [k, v] : r.extra) e[k] = v;
    j["extra"] = e;
    return j;
}

struct Out {
    Json items = Json::array();
    Json summary = Json::object();
    bool failed = false;
};

Out do_expand(const RunConfig& c) {
    if (!c.has("a") || !c.has("q")) throw validation_error("expand: need --a and --q");
    auto big = [&](const std::string& key) {
        const std::string v = c.str(key);
        const bool ok = !v.empty() && v.find_first_not_of("0123456789", v[0] == '-' ? 1 : 0) == std::string::npos &&
                        v != "-";
        if (!ok) bad_value(key, v, "an integer");
        return BigInt(v);
    };
    const BigInt a = big("a"), q = big("q");
    const DigitSeq d = expand(a, q);
    Out o;
    o.summary["a"] = big_json(a);
    o.summary["q"] = big_json(q);
    o.summary["digits"] = digits_json(d.digits());
    o.summary["M"] = d.empty() ? 0 : max_quotient(d);
    o.summary["S"] = d.empty() ? 0 : sum_quotients(d);
    o.summary["reduced"] = Rational::make(a, q).reduced;
    const ConvergentTable t = convergents(d);
    for (std::size_t i = 0; i < t.p.size(); ++i)
        o.items.push_back(Json{{"nu", i}, {"p", big_json(t.p[i])}, {"q", big_json(t.q[i])}});
    return o;
}

Out do_search(const RunConfig& c) {
    const i64 q = c.int_value("q"), M = c.int_value("M");
    SearchResult r;
    Out o;
    if (c.has("checkpoint")) {
        const std::string path = c.str("checkpoint");
        const i64 every = c.int_value("checkpoint-every", 1000000);
        if (every < 1) throw validation_error("--checkpoint-every must be positive");
        FrontierSearch s = c.flag("resume") && std::filesystem::exists(path) ? [&] {
            std::ifstream f(path);
            return checkpoint_load(Json::parse(f));
        }()
                                                                               : FrontierSearch(q, M);
        if (s.q() != q || s.M() != M) throw validation_error("search: checkpoint was written for another (q, M)");
        while (!s.done()) {
            s.step(every);
            if (!s.done()) write_atomic(path, checkpoint_json(s).dump() + "\n");
        }
        std::filesystem::remove(path);
        r = s.result();
        o.summary["nodes"] = s.nodes();
    } else {
        r = find_numerators(q, M);
    }
    o.summary["q"] = q;
    o.summary["M"] = M;
    o.summary["count"] = r.count;
    o.summary["predicted_scale"] = r.predicted_scale;
    for (i64 a : r.numerators) o.items.push_back(Json{{"a", a}, {"digits", digits_json(expand_digits(a, q))}});
    return o;
}

Out do_exists(const RunConfig& c) {
    const i64 M = c.int_value("M", 5);
    Out o;
    if (c.has("q")) {
        const i64 q = c.int_value("q");
        auto a = exists_zaremba(q, M);
        o.summary["q"] = q;
        o.summary["M"] = M;
        o.summary["found"] = a.has_value();
        o.summary["a"] = a ? Json(*a) : Json(nullptr);
        if (a) o.summary["digits"] = digits_json(expand_digits(*a, q));
        return o;
    }
    const i64 lo = c.int_value("q-lo"), hi = c.int_value("q-hi");
    if (lo > hi || lo < 2) throw validation_error("exists: need 2 <= q-lo <= q-hi");
    auto res = exists_zaremba_range(lo, hi, M);
    i64 missing = 0;
    for (i64 q = lo; q <= hi; ++q) {
        const auto& a = res[static_cast<std::size_t>(q - lo)];
        if (!a) ++missing;
        o.items.push_back(Json{{"q", q}, {"found", a.has_value()}, {"a", a ? Json(*a) : Json(nullptr)}});
    }
    o.summary["M"] = M;
    o.summary["q_lo"] = lo;
    o.summary["q_hi"] = hi;
    o.summary["missing"] = missing;
    return o;
}

Out do_count(const RunConfig& c) {
    const i64 M = c.int_value("M");
    Out o;
    o.summary["M"] = M;
    if (c.has("q")) {
        const i64 q = c.int_value("q");
        const CountResult r = count_numerators(q, M);
        o.summary["q"] = q;
        o.summary["count"] = r.count;
        o.summary["ratio"] = r.ratio;
    }
    if (c.has("t")) {
        const double t = c.real("t");
        o.summary["t"] = t;
        o.summary["QM_count"] = count_QM(M, t);
    }
    if (!c.has("q") && !c.has("t")) throw validation_error("count: need --q or --t");
    return o;
}

Out do_minsum(const RunConfig& c) {
    i64 lo, hi;
    if (c.has("q")) {
        lo = hi = c.int_value("q");
    } else {
        lo = c.int_value("q-lo");
        hi = c.int_value("q-hi");
    }
    if (lo < 2 || lo > hi) throw validation_error("minsum: need 2 <= q-lo <= q-hi");
    const double lphi = std::log(std::numbers::phi);
    Out o;
    i64 over = 0;
    double worst = 0;
    for (const LarcherRow& r : larcher_report(lo, hi)) {
        const i64 env = 5 * (static_cast<i64>(std::ceil(std::log(static_cast<double>(r.q)) / lphi)) + 2);
        Json row{{"q", r.q},
                 {"a", r.a},
                 {"minS", r.min_S},
                 {"minS_per_logq", r.per_log},
                 {"minS_per_logq_sqrtloglogq", r.per_log_sqrtloglog ? Json(*r.per_log_sqrtloglog) : Json(nullptr)},
                 {"phi_scaled", r.phi_scaled ? Json(*r.phi_scaled) : Json(nullptr)},
                 {"envelope", env}};
        if (r.min_S > env) ++over;
        worst = std::max(worst, r.per_log);
        o.items.push_back(row);
    }
    o.summary["q_lo"] = lo;
    o.summary["q_hi"] = hi;
    o.summary["above_envelope"] = over;
    o.summary["max_minS_per_logq"] = worst;
    o.failed = over > 0;
    return o;
}

Out do_decompose(const RunConfig& c) {
    const i64 q = c.int_value("q"), M = c.int_value("M");
    const double t = t_of(c, q);
    Out o;
    for (const auto& node : boundary_QMbar(M, t)) {
        const RationalInterval J = interval_J(node, M);
        auto [first, last] = J.scaled(q);
        first = std::max<i64>(first, 1);
        last = std::min<i64>(last, q - 1);
        o.items.push_back(Json{{"digits", digits_json(node.digits)},
                               {"u", node.u},
                               {"v", node.v},
                               {"v_ext", node.v_ext},
                               {"first", first},
                               {"last", last},
                               {"length", std::max<i64>(0, last - first + 1)}});
    }
    const IntervalUnion U = decompose_ZM(q, M, t);
    const bool same = U.elements() == membership_union(q, M, t).elements();
    const double lo_len = std::floor(static_cast<double>(q) / (t * t));
    const double hi_len = 8.0 * static_cast<double>(M + 1) * static_cast<double>(q) / (t * t) + 1;
    o.summary["q"] = q;
    o.summary["M"] = M;
    o.summary["t"] = t;
    o.summary["size"] = U.size();
    o.summary["intervals"] = U.intervals().size();
    o.summary["min_length"] = U.min_length();
    o.summary["max_length"] = U.max_length();
    o.summary["length_floor"] = lo_len;
    o.summary["length_ceiling"] = hi_len;
    o.summary["matches_membership"] = same;
    o.failed = !same;
    return o;
}

Out do_dimension(const RunConfig& c) {
    const i64 M = c.int_value("M");
    std::vector<double> grid;
    if (c.has("t-grid")) {
        for (i64 t : c.int_list("t-grid")) grid.push_back(static_cast<double>(t));
    } else {
        const i64 e0 = c.int_value("t-exp-lo", 6), e1 = c.int_value("t-exp-hi", 10);
        for (i64 e = e0; e <= e1; ++e) grid.push_back(std::ldexp(1.0, static_cast<int>(e)));
    }
    const DimensionEstimate d = estimate_dimension(M, grid);
    Out o;
    for (const auto& [t, n] : d.samples) o.items.push_back(Json{{"t", t}, {"count", n}});
    o.summary["M"] = M;
    o.summary["slope"] = d.slope;
    o.summary["w_fit"] = d.w_fit;
    o.summary["w_hensley"] = d.w_hensley;
    return o;
}

PointSet2D read_points(const std::string& path, i64 den) {
    std::ifstream f(path);
    if (!f) throw validation_error("cannot read point file " + path);
    PointSet2D P;
    P.den = den;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line == "x,y") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw validation_error(path + ":" + std::to_string(lineno) + ": expected 'x,y'");
        P.points.emplace_back(parse_int("points", trim(line.substr(0, comma))),
                              parse_int("points", trim(line.substr(comma + 1))));
    }
    P.validate();
    return P;
}

Json discrepancy_json(const DiscrepancyReport& r) {
    Json j;
    j["dstar"] = frac_json(r.exact);
    j["witness"] = Json{{"x_num", r.witness.x_num}, {"y_num", r.witness.y_num}, {"den", r.witness.den},
                        {"closed", r.witness.closed}};
    j["zaremba_bound"] = r.zaremba_bound ? Json(*r.zaremba_bound) : Json(nullptr);
    j["larcher_bound"] = r.larcher_bound ? Json(*r.larcher_bound) : Json(nullptr);
    j["general_exact"] = r.general_exact ? frac_json(*r.general_exact) : Json(nullptr);
    j["general_envelope"] = r.general_envelope;
    return j;
}

Out do_discrepancy(const RunConfig& c) {
    Out o;
    PointSet2D P;
    if (c.has("points")) {
        P = read_points(c.str("points"), c.int_value("den"));
        o.summary = discrepancy_json(star_discrepancy_exact(P));
    } else if (c.has("g")) {
        const i64 q = c.int_value("q"), g = c.int_value("g");
        const LarcherSets s = larcher_sequences(g, q);
        const double S = static_cast<double>(sum_quotients(expand(g, q)));
        o.summary["q"] = q;
        o.summary["g"] = g;
        o.summary["bound"] = S / static_cast<double>(q);
        o.summary["one_d"] = frac_json(star_discrepancy_1d(s.one_d, q));
        o.summary["korobov"] = discrepancy_json(lattice_star_discrepancy(g, q));
        o.summary["exponential"] = discrepancy_json(star_discrepancy_exact(s.exponential));
        P = s.korobov;
    } else {
        const i64 q = c.int_value("q"), a = c.int_value("a");
        const DiscrepancyReport r = lattice_star_discrepancy(a, q);
        o.summary = discrepancy_json(r);
        o.summary["a"] = a;
        o.summary["q"] = q;
        o.summary["within_bound"] = r.exact.value() <= std::min(1.0, *r.zaremba_bound);
        P = lattice_points(a, q);
        if (c.flag("kh")) {
            Json kh = Json::array();
            for (const auto& f : kh_catalog()) {
                const KhReport k = koksma_hlawka_demo(f, P);
                kh.push_back(Json{{"f", f}, {"error", frac_json(k.error)}, {"variation", k.variation},
                                  {"holds", k.holds}});
                o.failed = o.failed || !k.holds;
            }
            o.summary["koksma_hlawka"] = kh;
        }
    }
    if (c.flag("emit-points"))
        for (const auto& [x, y] : P.points) o.items.push_back(Json{{"x", x}, {"y", y}, {"den", P.den}});
    return o;
}

std::vector<i64> random_residues(i64 q, i64 size, std::mt19937_64& rng) {
    if (size > q) throw validation_error("stats: set larger than the modulus");
    std::vector<i64> all(static_cast<std::size_t>(q));
    for (i64 i = 0; i < q; ++i) all[i] = i;
    for (i64 i = 0; i < size; ++i) {
        std::uniform_int_distribution<i64> d(i, q - 1);
        std::swap(all[i], all[d(rng)]);
    }
    all.resize(static_cast<std::size_t>(size));
    std::sort(all.begin(), all.end());
    return all;
}

Out do_stats(const RunConfig& c) {
    const std::string op = c.str("op", "intersect");
    const u64 seed = static_cast<u64>(c.int_value("seed", 1));
    const i64 q = c.int_value("q", 99991);
    Out o;
    if (op == "intersect" || op == "sigma" || op == "good") {
        const IntervalUnion A = random_interval_union(q, c.int_value("count", 100), c.int_value("len", 300), seed);
        if (op == "good") {
            const GoodPartition g = classify_good(A, c.int_value("N-star", 16), c.real("theta-good", 0.5));
            o.summary = Json{{"op", op}, {"q", q}, {"seed", seed}, {"good_intervals", g.good_intervals},
                             {"bad_intervals", g.bad_intervals}, {"bad_size", g.bad_size}, {"good_size", g.good.size()}};
            return o;
        }
        StatReport r = op == "intersect" ? intersect_inverse(A, A) : sigma_star(A);
        r.seed = seed;
        o.summary = stat_json(r);
        return o;
    }
    if (op == "t-action") {
        std::mt19937_64 rng(seed);
        const i64 n = c.int_value("size", 3000);
        const auto A = random_residues(q, n, rng);
        const auto B = random_residues(q, n, rng);
        StatReport r = count_T_action(A, B, c.int_value("N", 1000), q);
        r.seed = seed;
        o.summary = stat_json(r);
        return o;
    }
    if (op == "thicken") {
        const IntervalUnion A = random_interval_union(q, c.int_value("count", 100), c.int_value("len", 300), seed);
        std::vector<i64> C;
        for (i64 a : A.elements())
            if (in_inverse(a, A, InverseRule::geometric)) C.push_back(a % q);
        const i64 N2 = c.int_value("N2", 30);
        const ThickenResult t = thicken(C, N2, q);
        const double cap = static_cast<double>(A.size()) * (1.0 + 2.0 * static_cast<double>(N2) / static_cast<double>(A.min_length()));
        o.summary = Json{{"op", op}, {"q", q}, {"seed", seed}, {"C", C.size()}, {"thickened", t.size},
                         {"upper_bound", cap}, {"within", static_cast<double>(t.size) <= cap}};
        o.failed = static_cast<double>(t.size) > cap;
        return o;
    }
    if (op == "equidistributed") {
        const i64 N = c.int_value("N", 10000), k = c.int_value("k", 4);
        const IntervalUnion A = random_interval_union(N, c.int_value("count", 10), c.int_value("len", 50), seed);
        const EquidistributedInterval e = equidistributed_interval(A.elements(), N, k);
        o.summary = Json{{"op", op}, {"N", N}, {"k", k}, {"seed", seed}, {"lo", e.lo}, {"hi", e.hi},
                         {"steps", e.steps}, {"size_bound", e.size_bound}, {"equidistributed", e.equidistributed},
                         {"size_ok", e.size_ok}};
        o.failed = !e.equidistributed || !e.size_ok;
        return o;
    }
    throw validation_error("stats: unknown --op " + op + " (intersect, sigma, good, t-action, thicken, equidistributed)");
}

Out do_verify(const RunConfig& c) {
    Out o;
    if (c.flag("list") || !c.has("name")) {
        for (const auto& l : lemma_catalog())
            o.items.push_back(Json{{"name", l.name}, {"module", l.module}, {"asserted", l.asserted},
                                   {"default_q_max", l.default_q_max}, {"statement", l.statement}});
        return o;
    }
    std::optional<i64> qmax;
    if (c.has("q-max")) qmax = c.int_value("q-max");
    const auto results = verify_lemma(c.str("name"), qmax, static_cast<u64>(c.int_value("seed", 1)));
    i64 failed = 0;
    for (const auto& r : results) {
        o.items.push_back(Json{{"name", r.name},
                               {"q_max", r.q_max},
                               {"checks", r.checks},
                               {"failures", r.failures},
                               {"asserted", r.asserted},
                               {"status", r.failures == 0 ? "pass" : (r.asserted ? "fail" : "reported")},
                               {"first_failure", r.first_failure},
                               {"detail", r.detail}});
        if (r.asserted && r.failures > 0) ++failed;
    }
    o.summary["lemmas"] = results.size();
    o.summary["failed"] = failed;
    o.failed = failed > 0;
    return o;
}

}  // namespace

Json run(const RunConfig& cfg) {
    if (cfg.has("workers")) {
        const i64 w = cfg.int_value("workers");
        if (w < 1) throw validation_error("--workers must be positive");
        omp_set_num_threads(static_cast<int>(w));
    }
    Out o;
    const std::string& v = cfg.verb;
    if (v == "expand")
        o = do_expand(cfg);
    else if (v == "search")
        o = do_search(cfg);
    else if (v == "exists")
        o = do_exists(cfg);
    else if (v == "count")
        o = do_count(cfg);
    else if (v == "minsum")
        o = do_minsum(cfg);
    else if (v == "decompose")
        o = do_decompose(cfg);
    else if (v == "dimension")
        o = do_dimension(cfg);
    else if (v == "discrepancy")
        o = do_discrepancy(cfg);
    else if (v == "verify-lemma")
        o = do_verify(cfg);
    else if (v == "stats")
        o = do_stats(cfg);
    else
        throw validation_error("unknown verb '" + v + "'");

    Json rep;
    rep["schema"] = "zaremba-lab/report";
    rep["schema_version"] = 1;
    Json conf = Json::object();
    conf["verb"] = v;
    // output plumbing does not change the result
    for (const auto& [k, val] : cfg.values)
        if (k != "out" && k != "format" && k != "workers" && k != "config") conf[k] = val;
    rep["config"] = conf;
    o.summary["status"] = o.failed ? "fail" : "ok";
    rep["summary"] = o.summary;
    rep["items"] = o.items;
    return rep;
}

namespace {

std::string csv_cell(const Json& v) {
    std::string s;
    if (v.is_null()) return "";
    if (v.is_string()) {
        s = v.get<std::string>();
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ' ';
            s += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
        }
    } else {
        s = v.dump();
    }
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"') q += '"';
            q += ch;
        }
        return q + "\"";
    }
    return s;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else {
        out.emplace_back(prefix, j);
    }
}

}  // namespace

std::string render(const Json& report, const std::string& format) {
    if (format == "json") return report.dump(2) + "\n";
    if (format != "csv") throw validation_error("--format must be json or csv");
    std::ostringstream os;
    const Json& items = report.at("items");
    if (items.empty()) {
        std::vector<std::pair<std::string, Json>> flat;
        flatten(report.at("summary"), "", flat);
        os << "key,value\n";
        for (const auto& [k, v] : flat) os << csv_cell(k) << "," << csv_cell(v) << "\n";
        return os.str();
    }
    std::vector<std::string> cols;
    for (const auto& it : items) {
        std::vector<std::pair<std::string, Json>> flat;
        flatten(it, "", flat);
        for (const auto& [k, v] : flat)
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_cell(cols[i]);
    os << "\n";
    for (const auto& it : items) {
        std::vector<std::pair<std::string, Json>> flat;
        flatten(it, "", flat);
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) os << ",";
            for (const auto& [k, v] : flat)
                if (k == cols[i]) {
                    os << csv_cell(v);
                    break;
                }
        }
        os << "\n";
    }
    return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw std::runtime_error("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
}

Json checkpoint_json(const FrontierSearch& s) {
    Json j;
    j["kind"] = "search-frontier";
    j["q"] = s.q();
    j["M"] = s.M();
    j["nodes"] = s.nodes();
    j["found"] = s.found();
    Json f = Json::array();
    for (const auto& e : s.frontier())
        f.push_back(Json{{"digits", digits_json(e.digits)}, {"k", e.k}, {"km", e.km}, {"n", e.n}, {"nm", e.nm}});
    j["frontier"] = f;
    return j;
}

FrontierSearch checkpoint_load(const Json& j) {
    try {
        if (j.at("kind") != "search-frontier") throw validation_error("checkpoint: unknown kind");
        std::vector<FrontierEntry> frontier;
        for (const auto& e : j.at("frontier")) {
            FrontierEntry fe;
            fe.digits = e.at("digits").get<std::vector<u64>>();
            fe.k = e.at("k").get<i64>();
            fe.km = e.at("km").get<i64>();
            fe.n = e.at("n").get<i64>();
            fe.nm = e.at("nm").get<i64>();
            frontier.push_back(std::move(fe));
        }
        return FrontierSearch(j.at("q").get<i64>(), j.at("M").get<i64>(), std::move(frontier),
                              j.at("found").get<std::vector<i64>>(), j.at("nodes").get<i64>());
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("checkpoint: malformed (") + e.what() + ")");
    }
}

}  // namespace zlab
