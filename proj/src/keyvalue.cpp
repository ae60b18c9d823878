#include "panoproj/keyvalue.hpp"

#include <fstream>
#include <stdexcept>

namespace panoproj {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  std::map<std::string, std::string> kv;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    if (key.empty())
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": empty key");
    kv[key] = trim(stripped.substr(eq + 1));
  }
  return kv;
}

void write_key_value_file(const std::string& path,
                          const std::map<std::string, std::string>& kv) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  for (const auto& [key, value] : kv) out << key << " = " << value << "\n";
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace panoproj
