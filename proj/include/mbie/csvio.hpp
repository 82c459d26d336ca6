#pragma once

#include <string>

namespace mbie {

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace mbie
