#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace fraclab {

/// CSV emitter with the versioned schema header line.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);

    template <typename... Ts>
    void row(const Ts&... fields) {
        bool first = true;
        ((write_field(fields, first), first = false), ...);
        out_ << '\n';
    }

private:
    void write_field(double v, bool first);
    void write_field(const std::string& v, bool first);
    void write_field(const char* v, bool first);
    void write_field(std::uint64_t v, bool first);
    void write_field(int v, bool first);
    std::ofstream out_;
};

/// FNV-1a digest of a file's bytes, for manifest output fingerprints.
std::uint64_t fnv1a_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace fraclab
