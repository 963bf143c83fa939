#include "botscope/csvio.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "botscope/util.hpp"

namespace botscope::csv {

std::string escape(const std::string& field) {
  bool needs_quote = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quote) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += escape(fields[i]);
  }
  return out;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c == '\r') {
      // tolerate CRLF
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

Table read_file(const std::string& path, bool expect_header, bool allow_comments) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  Table t;
  std::string line;
  bool header_done = !expect_header;
  while (std::getline(in, line)) {
    if (line.empty() || (allow_comments && line[0] == '#')) continue;
    auto fields = split_row(line);
    if (!header_done) {
      t.header = std::move(fields);
      header_done = true;
    } else {
      t.rows.push_back(std::move(fields));
    }
  }
  return t;
}

std::string to_string(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  if (!header.empty()) out += join_row(header) + "\n";
  for (const auto& r : rows) out += join_row(r) + "\n";
  return out;
}

void write_file(const std::string& path, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  write_file_bytes(path, to_string(header, rows));
}

}  // namespace botscope::csv
