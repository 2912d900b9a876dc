#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace shadowlab {

/// RFC 4180 quoting: fields with commas, quotes or line breaks are quoted.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
  os << '\n';
}

}  // namespace shadowlab
