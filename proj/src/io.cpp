#include "rmtlab/io.hpp"

#include <iomanip>
#include <limits>

#include "rmtlab/common.hpp"

#ifndef RMTLAB_GIT_DESCRIBE
#define RMTLAB_GIT_DESCRIBE "unknown"
#endif

namespace rmtlab {

const char* git_describe() { return RMTLAB_GIT_DESCRIBE; }

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path), columns_(header.size()) {
    if (!out_) throw ConfigError("cannot open " + path.string() + " for writing");
    out_ << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw ConfigError("CSV row width does not match header of " + path_.string());
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
    out_ << '\n';
}

void write_summary(const std::filesystem::path& dir, const std::string& name, nlohmann::json summary) {
    summary["git_describe"] = git_describe();
    std::ofstream out(dir / (name + ".json"));
    if (!out) throw ConfigError("cannot write summary to " + dir.string());
    out << summary.dump(2) << '\n';
}

void write_gnuplot(const std::filesystem::path& dir, const std::string& name, const std::string& csv_file,
                   const std::string& xlabel, const std::vector<std::pair<int, std::string>>& ycols) {
    std::ofstream out(dir / (name + ".gp"));
    if (!out) throw ConfigError("cannot write gnuplot script to " + dir.string());
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set xlabel '" << xlabel << "'\n"
        << "set terminal pngcairo size 900,600\n"
        << "set output '" << name << ".png'\n"
        << "plot ";
    for (std::size_t i = 0; i < ycols.size(); ++i) {
        out << (i ? ", \\\n     " : "") << "'" << csv_file << "' using 1:" << ycols[i].first << " with linespoints title '"
            << ycols[i].second << "'";
    }
    out << '\n';
}

}  // namespace rmtlab
