#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace subfpt {

// Fixed 17-significant-digit formatting: round-trips every double.
std::string format_g17(double x);

// Accumulates a CSV document in memory ('#' metadata lines, one schema line,
// header, rows; LF endings) and writes it in a single pass, so a failed run
// never leaves a partial file behind.
class CsvBuilder {
  public:
    CsvBuilder(const std::string& tool_version, const std::string& schema_name,
               int schema_version, std::uint64_t seed, std::uint64_t config_digest);

    void set_columns(const std::vector<std::string>& names);
    void add_row(const std::vector<double>& values);
    void add_comment(const std::string& text);  // extra '#' metadata line

    std::string str() const;

    // Writes to the path, or to stdout when the path is empty.
    void write(const std::string& path) const;

  private:
    std::string head_;
    std::string header_;
    std::string body_;
    std::size_t n_columns_ = 0;
};

}  // namespace subfpt
