// util.hpp : shared error types, string helpers, file I/O, deterministic RNG
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace semnet {

inline constexpr const char* kVersion = "0.1.0";

// Raised for malformed input files; line is 1-based, 0 when not line-specific.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& message);
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

class TermNotFoundError : public std::runtime_error {
 public:
  explicit TermNotFoundError(const std::string& term);
  const std::string& term() const { return term_; }

 private:
  std::string term_;
};

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, char sep);
std::string to_lower_ascii(std::string s);

// Number of '_'-separated parts ("internal_driving_unit" -> 3).
int ngram_parts(std::string_view term);

bool valid_utf8(std::string_view s);

// Reads a whole file; throws ParseError when missing or not valid UTF-8.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

// splitmix64: tiny deterministic generator, identical output on every platform.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace semnet
