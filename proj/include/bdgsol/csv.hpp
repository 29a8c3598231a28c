// CSV I/O with shortest round-trip decimal formatting of binary64, so that
// written values re-parse bit-exactly.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bdgsol {

std::string format_double(double value);
double parse_double(std::string_view text);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace bdgsol
