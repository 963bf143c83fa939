#pragma once

#include <string>
#include <vector>

namespace botscope::csv {

// Minimal RFC-4180-style CSV. Fields containing commas, quotes or newlines
// are quoted on write; the reader is line-based (embedded newlines inside
// quoted fields are not supported — no pipeline output needs them).

std::string escape(const std::string& field);
std::string join_row(const std::vector<std::string>& fields);
std::vector<std::string> split_row(const std::string& line);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Reads a whole file. When `expect_header` the first non-comment line becomes
// the header. Lines starting with '#' are skipped when `allow_comments`.
Table read_file(const std::string& path, bool expect_header, bool allow_comments = false);

void write_file(const std::string& path, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows);
std::string to_string(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

}  // namespace botscope::csv
