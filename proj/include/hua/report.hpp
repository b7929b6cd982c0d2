#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hua {

/// One (l, n_r) line of a spectrum table. Absent modes are nullopt.
struct ReportRow
{
    int D{3};
    int l{0};
    int n_r{0};
    double q{0};
    std::optional<double> E_closed;
    std::optional<double> E_numeric_pekeris;
    std::optional<double> E_numeric_exact;
    std::optional<double> rel_diff_closed_vs_pekeris;
    /// E_numeric_exact - E_numeric_pekeris.
    std::optional<double> pekeris_error;
    bool validity{true};
    /// Empty unless a level could not be produced (unbound, degenerate ladder, ...).
    std::string note;

    bool operator==(ReportRow const&) const = default;
};

/// Fills the derived columns from the energies present.
void fill_derived(ReportRow& row);

/// Header names, in column order.
std::vector<std::string> const& report_columns();

/// CSV with a header row; reals with 17 significant digits, nulls as empty fields.
void write_csv(std::vector<ReportRow> const& rows, std::ostream& out);
std::vector<ReportRow> read_csv(std::istream& in);

/// JSON array of row objects, nulls as JSON null.
void write_json(std::vector<ReportRow> const& rows, std::ostream& out);
std::vector<ReportRow> read_json(std::istream& in);

/// Writes to path.tmp and renames over path.
void write_file_atomic(std::string const& path, std::string const& contents);

} // namespace hua
