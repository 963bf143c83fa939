#include "botscope/util.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace botscope {

uint64_t fnv1a64(std::span<const unsigned char> bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

uint64_t fnv1a64(const std::string& s) {
  return fnv1a64(std::span<const unsigned char>(
      reinterpret_cast<const unsigned char*>(s.data()), s.size()));
}

std::string to_hex(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_bytes(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

uint64_t digest_file(const std::string& path) {
  auto content = read_file(path);
  if (!content) throw std::runtime_error("cannot read file: " + path);
  return fnv1a64(*content);
}

size_t utf8_length(const std::string& s) {
  size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;  // count non-continuation bytes
  return n;
}

std::string lower_ascii(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

bool contains_icase(const std::string& haystack, const std::string& needle_lower) {
  if (needle_lower.empty()) return true;
  return lower_ascii(haystack).find(needle_lower) != std::string::npos;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

namespace {

bool parse_int_field(const char* p, int len, int& out) {
  out = 0;
  for (int i = 0; i < len; ++i) {
    if (p[i] < '0' || p[i] > '9') return false;
    out = out * 10 + (p[i] - '0');
  }
  return true;
}

int64_t days_from_civil(int y, int m, int d) {
  // Howard Hinnant's algorithm; proleptic Gregorian, days since 1970-01-01.
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 + static_cast<unsigned>(d) - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<int64_t>(era) * 146097 + static_cast<int64_t>(doe) - 719468;
}

std::optional<int64_t> make_epoch(int y, int mo, int d, int h, int mi, int s) {
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) return std::nullopt;
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                         "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

// "Sat Feb 04 15:04:05 +0000 2023"
std::optional<int64_t> parse_twitter_v1(const std::string& s) {
  if (s.size() < 30) return std::nullopt;
  int mo = 0;
  for (int i = 0; i < 12; ++i)
    if (s.compare(4, 3, kMonths[i]) == 0) mo = i + 1;
  if (mo == 0) return std::nullopt;
  int d, h, mi, sec, y;
  if (!parse_int_field(s.data() + 8, 2, d) || !parse_int_field(s.data() + 11, 2, h) ||
      !parse_int_field(s.data() + 14, 2, mi) || !parse_int_field(s.data() + 17, 2, sec) ||
      !parse_int_field(s.data() + 26, 4, y))
    return std::nullopt;
  if (s.compare(20, 5, "+0000") != 0) return std::nullopt;  // stream API emits UTC
  return make_epoch(y, mo, d, h, mi, sec);
}

}  // namespace

std::optional<int64_t> parse_timestamp(const std::string& s) {
  if (s.size() >= 19 && s[4] == '-' && s[7] == '-' && (s[10] == 'T' || s[10] == ' ')) {
    int y, mo, d, h, mi, sec;
    if (!parse_int_field(s.data(), 4, y) || !parse_int_field(s.data() + 5, 2, mo) ||
        !parse_int_field(s.data() + 8, 2, d) || !parse_int_field(s.data() + 11, 2, h) ||
        !parse_int_field(s.data() + 14, 2, mi) || !parse_int_field(s.data() + 17, 2, sec))
      return std::nullopt;
    size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {  // fractional seconds ignored
      ++pos;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    }
    std::string tail = s.substr(pos);
    if (!(tail.empty() || tail == "Z" || tail == "+00:00" || tail == "+0000")) return std::nullopt;
    return make_epoch(y, mo, d, h, mi, sec);
  }
  return parse_twitter_v1(s);
}

std::string format_timestamp(int64_t t) {
  int64_t days = t / 86400;
  int64_t rem = t % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  // civil_from_days (Hinnant)
  days += 719468;
  const int64_t era = (days >= 0 ? days : days - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t y = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  const int64_t year = y + (m <= 2);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<long long>(year), m, d, static_cast<long long>(rem / 3600),
                static_cast<long long>((rem / 60) % 60), static_cast<long long>(rem % 60));
  return std::string(buf);
}

}  // namespace botscope
