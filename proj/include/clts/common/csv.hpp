#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace clts::csv {

/// RFC 4180 field quoting: fields containing a comma, quote or newline are
/// wrapped in double quotes with inner quotes doubled.
std::string escape(const std::string& field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Reads one logical record; returns false at end of input. Quoted fields may
/// span lines. `line` is advanced by the number of physical lines consumed.
bool read_row(std::istream& in, std::vector<std::string>& fields, std::size_t& line);

/// Fixed-precision decimal rendering used by every report file.
std::string format_number(double value, int precision = 6);

}  // namespace clts::csv
