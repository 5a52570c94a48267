#include "rcmc/report.hpp"

#include <sstream>
#include <stdexcept>

namespace rcmc {

std::string rational_str(const Rational& q)
{
    std::ostringstream os;
    os << numerator(q) << "/" << denominator(q);
    return os.str();
}

nlohmann::json base_record(const std::string& check, const std::string& graph)
{
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["check"] = check;
    j["graph"] = graph;
    return j;
}

void emit_jsonl(std::ostream& os, const nlohmann::json& j)
{
    os << j.dump() << "\n";
}

nlohmann::json exact_value(const Rational& v)
{
    nlohmann::json j;
    j["value"] = rational_str(v);
    j["mode"] = "rational";
    return j;
}

nlohmann::json float_value(double v, double tolerance)
{
    nlohmann::json j;
    j["value"] = v;
    j["mode"] = "float";
    j["tolerance"] = tolerance;
    return j;
}

void CsvWriter::row(std::vector<std::string> cells)
{
    if (cells.size() != header_.size()) {
        throw std::invalid_argument("csv row width does not match header");
    }
    rows_.push_back(std::move(cells));
}

namespace {

void put_cell(std::ostream& os, const std::string& cell)
{
    if (cell.find_first_of(",\"\n") == std::string::npos) {
        os << cell;
        return;
    }
    os << '"';
    for (char c : cell) {
        if (c == '"') {
            os << '"';
        }
        os << c;
    }
    os << '"';
}

void put_row(std::ostream& os, const std::vector<std::string>& cells)
{
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            os << ',';
        }
        put_cell(os, cells[i]);
    }
    os << '\n';
}

} // namespace

void CsvWriter::write(std::ostream& os) const
{
    put_row(os, header_);
    for (const auto& r : rows_) {
        put_row(os, r);
    }
}

} // namespace rcmc
