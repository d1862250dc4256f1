#include "subfpt/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace subfpt {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

CsvBuilder::CsvBuilder(const std::string& tool_version,
                       const std::string& schema_name, int schema_version,
                       std::uint64_t seed, std::uint64_t config_digest) {
    char digest[24];
    std::snprintf(digest, sizeof(digest), "%016llx",
                  static_cast<unsigned long long>(config_digest));
    head_ = "# tool_version=" + tool_version + "\n";
    head_ += "# seed=" + std::to_string(seed) + "\n";
    head_ += "# config_digest=" + std::string(digest) + "\n";
    head_ += "# schema=" + schema_name + " v" + std::to_string(schema_version) + "\n";
}

void CsvBuilder::set_columns(const std::vector<std::string>& names) {
    if (names.empty()) throw std::logic_error("CsvBuilder: empty column list");
    header_.clear();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) header_ += ',';
        header_ += names[i];
    }
    header_ += '\n';
    n_columns_ = names.size();
}

void CsvBuilder::add_row(const std::vector<double>& values) {
    if (values.size() != n_columns_)
        throw std::logic_error("CsvBuilder: row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ',';
        body_ += format_g17(values[i]);
    }
    body_ += '\n';
}

void CsvBuilder::add_comment(const std::string& text) {
    head_ += "# " + text + "\n";
}

std::string CsvBuilder::str() const { return head_ + header_ + body_; }

void CsvBuilder::write(const std::string& path) const {
    const std::string doc = str();
    if (path.empty()) {
        std::fwrite(doc.data(), 1, doc.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << doc;
    if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace subfpt
