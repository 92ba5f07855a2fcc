#include "cobweb/report/config.hpp"

#include <fstream>

#include "cobweb/errors.hpp"

namespace cobweb::report {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::map<std::string, std::string> read_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    const auto where = [&] { return "config line " + std::to_string(line) + ": "; };
    std::string text = raw;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '"') quoted = !quoted;
      if (text[i] == '#' && !quoted) {
        text.resize(i);
        break;
      }
    }
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(where() + "expected key = value");
    const std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError(where() + "missing key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    } else if (value.find('"') != std::string::npos) {
      throw ConfigError(where() + "unbalanced quotes");
    }
    if (!out.emplace(key, value).second) {
      throw ConfigError(where() + "repeated key '" + key + "'");
    }
  }
  return out;
}

std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return read_config(in);
}

}  // namespace cobweb::report
