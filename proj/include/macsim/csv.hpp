#pragma once

#include <string>
#include <vector>

#include "macsim/types.hpp"

namespace macsim {

struct csv_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Locale-independent number formatting: 6 significant digits, '.' decimal
/// point, "nan" for unset fields.
std::string format_number(double v);

/// Minimal CSV reader for the tool's own outputs: exact header match,
/// comma-separated, no quoting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index lookup; throws csv_error naming the column when absent.
    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

double parse_double(const std::string& field);

}  // namespace macsim
