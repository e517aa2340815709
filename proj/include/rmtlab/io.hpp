#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace rmtlab {

// Comma-separated output with a fixed header; numbers at full precision.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_;
};

// Writes `summary` plus the git revision to <dir>/<name>.json.
void write_summary(const std::filesystem::path& dir, const std::string& name, nlohmann::json summary);

// Gnuplot script that plots column `ycols` against column 1 of the CSV.
void write_gnuplot(const std::filesystem::path& dir, const std::string& name, const std::string& csv_file,
                   const std::string& xlabel, const std::vector<std::pair<int, std::string>>& ycols);

}  // namespace rmtlab
