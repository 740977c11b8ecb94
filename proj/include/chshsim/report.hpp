#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace chshsim {

enum class OutputFormat { csv, json };

/// One output cell. monostate is an empty CSV cell / JSON null.
using Field = std::variant<std::monostate, std::string, std::int64_t, std::uint64_t, double>;

/// Ordered (column, value) pairs; every record in one table shares the columns.
using Record = std::vector<std::pair<std::string, Field>>;

/// Shortest decimal that parses back to exactly the same double.
std::string format_real(double value);

/// Header row then one row per record. Cells containing ',' '"' or newlines are quoted.
void write_csv(std::ostream& out, const std::vector<Record>& records);

/// A JSON array of objects, one per line.
void write_json(std::ostream& out, const std::vector<Record>& records);

void write_records(std::ostream& out, const std::vector<Record>& records, OutputFormat format);

}  // namespace chshsim
