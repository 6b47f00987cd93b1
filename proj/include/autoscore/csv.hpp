#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace autoscore::csv {

using Record = std::vector<std::string>;

// RFC-4180-ish: comma separated, optional double quotes with "" escapes,
// CRLF tolerated. The first record is the header.
struct Document {
  Record header;
  std::vector<Record> rows;
};

Document read_file(const std::string& path);
Document parse(std::string_view text);

std::string escape(std::string_view field);
void write_record(std::ostream& out, const Record& fields);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

}  // namespace autoscore::csv
