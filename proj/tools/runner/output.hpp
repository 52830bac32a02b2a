#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qrabi::cli {

// Header names carry their unit in brackets, e.g. "g1 [omega]".
struct Table {
    std::string name;   // appended to the output stem
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    void add(std::vector<double> row);
};

std::string format_csv(const Table& t);

// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace qrabi::cli
