#include "nvcache/textio.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nvcache/errors.hpp"

namespace nvcache::textio {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string_view strip_comment(std::string_view line) {
  auto pos = line.find('#');
  if (pos != std::string_view::npos) line = line.substr(0, pos);
  return trim(line);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto end = line.find(',', start);
    if (end == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

double parse_double(std::string_view token, const std::string& context) {
  std::string buf(trim(token));
  if (buf.empty()) throw Error(ErrorKind::Parse, "NonNumeric", context + ": empty value");
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || errno == ERANGE || std::isnan(v))
    throw Error(ErrorKind::Parse, "NonNumeric", context + ": '" + buf + "'");
  return v;
}

long long parse_count(std::string_view token, const std::string& context) {
  double v = parse_double(token, context);
  if (v < 0) throw Error(ErrorKind::Parse, "NegativeCount", context + ": " + std::string(trim(token)));
  double r = std::nearbyint(v);
  if (r != v || r > 9.007199254740992e15)
    throw Error(ErrorKind::Parse, "NonNumeric", context + ": not an integer count");
  return static_cast<long long>(r);
}

void check_version_marker(std::string_view line) {
  auto body = trim(line);
  if (body.empty() || body[0] != '#') return;
  body = trim(body.substr(1));
  if (body.rfind("nvcache-dse", 0) == 0 && body != kFormatVersion)
    throw Error(ErrorKind::Parse, "SchemaMismatch",
                "unsupported format version '" + std::string(body) + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "FileError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void atomic_write_file(const std::string& path, std::string_view content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Parse, "FileError", "cannot write " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::Parse, "FileError", "short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(ErrorKind::Parse, "FileError", "rename failed for " + path);
}

}  // namespace nvcache::textio
