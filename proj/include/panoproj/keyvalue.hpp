#pragma once

#include <map>
#include <string>

namespace panoproj {

/// Plain-text "key = value" files; '#' starts a comment. Keys are written
/// sorted so emitted files are reproducible.
std::map<std::string, std::string> read_key_value_file(const std::string& path);
void write_key_value_file(const std::string& path, const std::map<std::string, std::string>& kv);

}  // namespace panoproj
