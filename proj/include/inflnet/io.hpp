#pragma once

#include <string>
#include <vector>

namespace inflnet {

// Writes to `<path>.tmp` and renames over `path`; creates parent directories.
void write_text_atomic(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

// Shortest round-trippable decimal representation.
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

}  // namespace inflnet
