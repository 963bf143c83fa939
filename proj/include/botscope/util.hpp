#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace botscope {

// 64-bit FNV-1a, used for config/input digests in run manifests. Not
// cryptographic.
uint64_t fnv1a64(std::span<const unsigned char> bytes);
uint64_t fnv1a64(const std::string& s);
std::string to_hex(uint64_t v);

std::optional<std::string> read_file(const std::string& path);
void write_file_bytes(const std::string& path, const std::string& content);
uint64_t digest_file(const std::string& path);  // throws on unreadable file

/// Deterministic uniform draws on top of the mt19937_64 stream. The engine's
/// output sequence is fixed by the standard; std::uniform_int_distribution is
/// not, so raw outputs are mapped here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  int64_t range(int64_t lo, int64_t hi) {  // inclusive bounds
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

size_t utf8_length(const std::string& s);
std::string lower_ascii(std::string s);
bool contains_icase(const std::string& haystack, const std::string& needle_lower);

// Locale-independent double formatting (round-trippable, shortest form).
std::string format_double(double v);

// ISO-8601 UTC ("2023-02-04T15:04:05Z", optional fraction / "+00:00" offset)
// or the Twitter V1 form ("Sat Feb 04 15:04:05 +0000 2023") -> epoch seconds.
std::optional<int64_t> parse_timestamp(const std::string& s);
std::string format_timestamp(int64_t epoch_seconds);

}  // namespace botscope
