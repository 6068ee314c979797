#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace roughflux {

// Shortest round-trip decimal formatting used by every serializer (17
// significant digits).
std::string g17(double v);

// Minimal CSV emitter for numeric tables: plain comma separation, no quoting
// (cells never contain commas here). Tracks the data row count for run
// manifests.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& file,
              const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    std::size_t rows() const { return rows_; }
    void close();

private:
    std::ofstream out_;
    std::size_t width_ = 0;
    std::size_t rows_ = 0;
};

} // namespace roughflux
