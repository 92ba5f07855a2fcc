#pragma once

#include <istream>
#include <map>
#include <string>

namespace cobweb::report {

/// Flat `key = value` settings. Blank lines and text after '#' are ignored;
/// values may be wrapped in double quotes. Throws ConfigError naming the
/// offending line for anything else, including repeated keys.
std::map<std::string, std::string> read_config(std::istream& in);
std::map<std::string, std::string> load_config(const std::string& path);

}  // namespace cobweb::report
