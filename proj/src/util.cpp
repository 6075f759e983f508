#include "semnet/util.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace semnet {

namespace {

std::string parse_error_text(const std::string& file, std::size_t line,
                             const std::string& message) {
  std::ostringstream os;
  os << file;
  if (line > 0) os << ":" << line;
  os << ": " << message;
  return os.str();
}

}  // namespace

ParseError::ParseError(std::string file, std::size_t line, const std::string& message)
    : std::runtime_error(parse_error_text(file, line, message)),
      file_(std::move(file)),
      line_(line) {}

TermNotFoundError::TermNotFoundError(const std::string& term)
    : std::runtime_error("term not in lexicon: " + term), term_(term) {}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

std::string to_lower_ascii(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

int ngram_parts(std::string_view term) {
  if (term.empty()) return 0;
  int parts = 1;
  for (char c : term) {
    if (c == '_') ++parts;
  }
  return parts;
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len;
    if (c < 0x80) {
      len = 1;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      if (c < 0xc2) return false;  // overlong
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      if (c > 0xf4) return false;  // beyond U+10FFFF
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xc0) != 0x80) return false;
    }
    i += len;
  }
  return true;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string content = buf.str();
  if (!valid_utf8(content)) throw ParseError(path.string(), 0, "file is not valid UTF-8");
  return content;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path.string(), 0, "cannot open file for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ParseError(path.string(), 0, "write failed");
}

}  // namespace semnet
