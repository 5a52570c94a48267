#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcmc/rational.hpp"

namespace rcmc {

// Bumped whenever a report field changes meaning; consumers key on it.
inline constexpr int kSchemaVersion = 1;

// exact rationals travel as "num/den" strings so nothing is rounded
std::string rational_str(const Rational& q);

// {"schema_version": 1, "check": ..., "graph": ...}
nlohmann::json base_record(const std::string& check, const std::string& graph);

// one sorted-key, newline-terminated line (JSON-lines framing)
void emit_jsonl(std::ostream& os, const nlohmann::json& j);

// numeric payloads carry their exactness mode; floats also carry the
// tolerance that was applied to comparisons involving them
nlohmann::json exact_value(const Rational& v);
nlohmann::json float_value(double v, double tolerance);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}
    void row(std::vector<std::string> cells);
    void write(std::ostream& os) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace rcmc
