#pragma once

#include <string>
#include <vector>

namespace micropush {

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

/// Splits `key = value` lines. Blank lines and `#` comments are skipped;
/// anything else without '=' raises ConfigError naming the line.
std::vector<KeyValue> parse_key_values(const std::string& text);

std::string read_text_file(const std::string& path);

double parse_double(const KeyValue& kv);
int parse_int(const KeyValue& kv);
bool parse_bool(const KeyValue& kv);

}  // namespace micropush
