#include "micropush/core/keyvalue.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "micropush/core/error.hpp"

namespace micropush {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const KeyValue& kv, const char* what) {
  throw ConfigError("line " + std::to_string(kv.line) + ": " + kv.key + " expects " + what +
                    ", got '" + kv.value + "'");
}

}  // namespace

std::vector<KeyValue> parse_key_values(const std::string& text) {
  std::vector<KeyValue> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    KeyValue kv{trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
    if (kv.key.empty())
      throw ConfigError("line " + std::to_string(line) + ": empty key");
    out.push_back(std::move(kv));
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

double parse_double(const KeyValue& kv) {
  const char* begin = kv.value.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    bad_value(kv, "a finite number");
  return v;
}

int parse_int(const KeyValue& kv) {
  const char* begin = kv.value.c_str();
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE || v < -2147483647L || v > 2147483647L)
    bad_value(kv, "an integer");
  return static_cast<int>(v);
}

bool parse_bool(const KeyValue& kv) {
  const std::string& v = kv.value;
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  bad_value(kv, "true/false");
}

}  // namespace micropush
