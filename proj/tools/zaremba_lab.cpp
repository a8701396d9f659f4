#include "zlab/reports.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

struct VerbSpec {
    const char* name;
    const char* help;
    std::vector<std::string> options;
    std::vector<std::string> flags;
};

const std::vector<VerbSpec>& specs() {
    static const std::vector<VerbSpec> s{
        {"expand", "continued fraction of a/q with its convergents", {"a", "q"}, {}},
        {"search", "all a with digits of a/q bounded by M", {"q", "M", "checkpoint", "checkpoint-every"}, {"resume"}},
        {"exists", "first Zaremba numerator for q or each q in a range", {"q", "q-lo", "q-hi", "M"}, {}},
        {"count", "number of Zaremba numerators, or |Q_M(t)|", {"q", "M", "t"}, {}},
        {"minsum", "minimal digit sum per q with log-scale columns", {"q", "q-lo", "q-hi"}, {}},
        {"decompose", "interval decomposition of Z_M(t)", {"q", "M", "t", "theta"}, {}},
        {"dimension", "dimension fit from |Q_M(t)| growth", {"M", "t-grid", "t-exp-lo", "t-exp-hi"}, {}},
        {"discrepancy", "exact star discrepancy", {"a", "q", "g", "points", "den"}, {"kh", "emit-points"}},
        {"verify-lemma", "run catalogued invariant checks", {"name", "q-max"}, {"list"}},
        {"stats", "modular statistics on seeded random sets",
         {"op", "q", "count", "len", "size", "N", "N2", "N-star", "theta-good", "k"}, {}},
    };
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zaremba-lab: exact continued fraction experiments"};
    app.require_subcommand(1);
    std::string config, seed, workers, out, format = "json";
    bool timing = false;
    app.add_option("--config", config, "flat key = value file; flags override it");
    app.add_option("--seed", seed, "seed for randomized inputs")->group("Common");
    app.add_option("--workers", workers, "OpenMP thread count")->group("Common");
    app.add_option("--out", out, "write the report here instead of stdout")->group("Common");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->group("Common");
    app.add_flag("--timing", timing, "add wall-clock seconds to the summary")->group("Common");

    std::map<std::string, std::map<std::string, std::string>> opt_values;
    std::map<std::string, std::map<std::string, bool>> flag_values;
    for (const auto& v : specs()) {
        CLI::App* sub = app.add_subcommand(v.name, v.help);
        sub->fallthrough();
        for (const auto& o : v.options) sub->add_option("--" + o, opt_values[v.name][o]);
        for (const auto& f : v.flags) sub->add_flag("--" + f, flag_values[v.name][f]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    zlab::RunConfig cfg;
    cfg.verb = app.get_subcommands().front()->get_name();
    try {
        if (!config.empty()) cfg.values = zlab::load_config_file(config);
        CLI::App* sub = app.get_subcommands().front();
        for (auto& [k, v] : opt_values[cfg.verb])
            if (sub->count("--" + k)) cfg.values[k] = v;
        for (auto& [k, v] : flag_values[cfg.verb])
            if (v) cfg.values[k] = "true";
        if (!seed.empty()) cfg.values["seed"] = seed;
        if (!workers.empty()) cfg.values["workers"] = workers;
        if (cfg.values.count("format") && app.count("--format") == 0) format = cfg.values["format"];
        if (cfg.values.count("out") && out.empty()) out = cfg.values["out"];
        if (format != "json" && format != "csv") throw zlab::validation_error("--format must be json or csv");

        const auto t0 = std::chrono::steady_clock::now();
        zlab::Json report = zlab::run(cfg);
        if (timing)
            report["summary"]["wall_clock_s"] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string text = zlab::render(report, format);
        if (out.empty())
            std::cout << text;
        else
            zlab::write_atomic(out, text);
        return report["summary"]["status"] == "fail" ? 2 : 0;
    } catch (const zlab::invariant_failure& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
