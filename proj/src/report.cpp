#include "hua/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hua/errors.hpp"

namespace hua {

void fill_derived(ReportRow& row)
{
    row.rel_diff_closed_vs_pekeris.reset();
    row.pekeris_error.reset();
    if (row.E_closed && row.E_numeric_pekeris) {
        row.rel_diff_closed_vs_pekeris = std::abs(*row.E_closed - *row.E_numeric_pekeris) / std::abs(*row.E_numeric_pekeris);
    }
    if (row.E_numeric_exact && row.E_numeric_pekeris) {
        row.pekeris_error = *row.E_numeric_exact - *row.E_numeric_pekeris;
    }
}

std::vector<std::string> const& report_columns()
{
    static std::vector<std::string> const cols{"D",
                                               "l",
                                               "n_r",
                                               "q",
                                               "E_closed",
                                               "E_numeric_pekeris",
                                               "E_numeric_exact",
                                               "rel_diff_closed_vs_pekeris",
                                               "pekeris_error",
                                               "validity",
                                               "note"};
    return cols;
}

namespace {

std::string real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string real(std::optional<double> const& v)
{
    return v ? real(*v) : std::string{};
}

std::string quote(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv(std::string const& line, int lineno)
{
    std::vector<std::string> out;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (in_quotes) {
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated quote");
    }
    out.push_back(std::move(cur));
    return out;
}

template <class T>
T parse_number(std::string const& s, int lineno)
{
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError("line " + std::to_string(lineno) + ": bad number '" + s + "'");
    }
    return v;
}

std::optional<double> parse_optional(std::string const& s, int lineno)
{
    if (s.empty()) {
        return std::nullopt;
    }
    return parse_number<double>(s, lineno);
}

bool parse_bool(std::string const& s, int lineno)
{
    if (s == "true" || s == "1") {
        return true;
    }
    if (s == "false" || s == "0") {
        return false;
    }
    throw ConfigError("line " + std::to_string(lineno) + ": bad boolean '" + s + "'");
}

} // namespace

void write_csv(std::vector<ReportRow> const& rows, std::ostream& out)
{
    auto const& cols = report_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
    for (auto const& r : rows) {
        out << r.D << ',' << r.l << ',' << r.n_r << ',' << real(r.q) << ',' << real(r.E_closed) << ','
            << real(r.E_numeric_pekeris) << ',' << real(r.E_numeric_exact) << ',' << real(r.rel_diff_closed_vs_pekeris)
            << ',' << real(r.pekeris_error) << ',' << (r.validity ? "true" : "false") << ',' << quote(r.note) << '\n';
    }
}

std::vector<ReportRow> read_csv(std::istream& in)
{
    std::vector<ReportRow> rows;
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) {
        throw ConfigError("empty CSV input");
    }
    ++lineno;
    if (split_csv(line, lineno) != report_columns()) {
        throw ConfigError("line 1: unexpected CSV header");
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        auto f = split_csv(line, lineno);
        if (f.size() != report_columns().size()) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected " +
                              std::to_string(report_columns().size()) + " fields");
        }
        ReportRow r;
        r.D                          = parse_number<int>(f[0], lineno);
        r.l                          = parse_number<int>(f[1], lineno);
        r.n_r                        = parse_number<int>(f[2], lineno);
        r.q                          = parse_number<double>(f[3], lineno);
        r.E_closed                   = parse_optional(f[4], lineno);
        r.E_numeric_pekeris          = parse_optional(f[5], lineno);
        r.E_numeric_exact            = parse_optional(f[6], lineno);
        r.rel_diff_closed_vs_pekeris = parse_optional(f[7], lineno);
        r.pekeris_error              = parse_optional(f[8], lineno);
        r.validity                   = parse_bool(f[9], lineno);
        r.note                       = f[10];
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

nlohmann::json opt(std::optional<double> const& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> opt(nlohmann::json const& j)
{
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<double>();
}

} // namespace

void write_json(std::vector<ReportRow> const& rows, std::ostream& out)
{
    auto arr = nlohmann::json::array();
    for (auto const& r : rows) {
        arr.push_back({{"D", r.D},
                       {"l", r.l},
                       {"n_r", r.n_r},
                       {"q", r.q},
                       {"E_closed", opt(r.E_closed)},
                       {"E_numeric_pekeris", opt(r.E_numeric_pekeris)},
                       {"E_numeric_exact", opt(r.E_numeric_exact)},
                       {"rel_diff_closed_vs_pekeris", opt(r.rel_diff_closed_vs_pekeris)},
                       {"pekeris_error", opt(r.pekeris_error)},
                       {"validity", r.validity},
                       {"note", r.note}});
    }
    out << arr.dump(2) << '\n';
}

std::vector<ReportRow> read_json(std::istream& in)
{
    nlohmann::json arr;
    try {
        in >> arr;
    } catch (nlohmann::json::exception const& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!arr.is_array()) {
        throw ConfigError("JSON report must be an array");
    }
    std::vector<ReportRow> rows;
    for (auto const& j : arr) {
        ReportRow r;
        r.D                          = j.at("D").get<int>();
        r.l                          = j.at("l").get<int>();
        r.n_r                        = j.at("n_r").get<int>();
        r.q                          = j.at("q").get<double>();
        r.E_closed                   = opt(j.at("E_closed"));
        r.E_numeric_pekeris          = opt(j.at("E_numeric_pekeris"));
        r.E_numeric_exact            = opt(j.at("E_numeric_exact"));
        r.rel_diff_closed_vs_pekeris = opt(j.at("rel_diff_closed_vs_pekeris"));
        r.pekeris_error              = opt(j.at("pekeris_error"));
        r.validity                   = j.at("validity").get<bool>();
        r.note                       = j.value("note", "");
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_file_atomic(std::string const& path, std::string const& contents)
{
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw ConfigError("cannot open " + tmp + " for writing");
        }
        f << contents;
        if (!f.flush()) {
            throw ConfigError("write to " + tmp + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ConfigError("cannot rename " + tmp + " to " + path + ": " + ec.message());
    }
}

} // namespace hua
