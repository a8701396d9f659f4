#pragma once

#include "zlab/types.hpp"
#include "zlab/zaremba.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zlab {

using Json = nlohmann::ordered_json;

// Flat key/value settings. Keys are the long flag names without dashes.
struct RunConfig {
    std::string verb;
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    std::string str(const std::string& key, const std::string& fallback = "") const;
    i64 int_value(const std::string& key) const;
    i64 int_value(const std::string& key, i64 fallback) const;
    double real(const std::string& key) const;
    double real(const std::string& key, double fallback) const;
    bool flag(const std::string& key) const;
    std::vector<i64> int_list(const std::string& key) const;  // comma separated
};

// Lines 'key = value'; '#' starts a comment; values may be double quoted.
std::map<std::string, std::string> parse_config_text(const std::string& text, const std::string& origin = "<text>");
std::map<std::string, std::string> load_config_file(const std::string& path);

const std::vector<std::string>& verbs();

// Dispatches to the owning module. Throws the library error types.
Json run(const RunConfig& cfg);

// "json" gives indented JSON, "csv" flattens the items array.
std::string render(const Json& report, const std::string& format);
void write_atomic(const std::string& path, const std::string& content);

struct LemmaInfo {
    std::string name;
    std::string module;
    std::string statement;
    bool asserted = true;  // false: measured and reported only
    i64 default_q_max = 0;
};

struct LemmaResult {
    std::string name;
    i64 q_max = 0;
    i64 checks = 0;
    i64 failures = 0;
    bool asserted = true;
    std::string first_failure;
    Json detail = Json::object();
};

const std::vector<LemmaInfo>& lemma_catalog();
// Runs every catalogued check whose name equals 'name' or starts with 'name_'.
std::vector<LemmaResult> verify_lemma(const std::string& name, std::optional<i64> q_max, u64 seed);

Json checkpoint_json(const FrontierSearch& s);
FrontierSearch checkpoint_load(const Json& j);

}  // namespace zlab
