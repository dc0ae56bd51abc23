#include "fraclab/io.hpp"

#include <sstream>
#include <stdexcept>

namespace fraclab {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : out_(path) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
    out_ << "# schema=1\n";
    out_.precision(17);
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::write_field(double v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
}
void CsvWriter::write_field(const std::string& v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
}
void CsvWriter::write_field(const char* v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
}
void CsvWriter::write_field(std::uint64_t v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
}
void CsvWriter::write_field(int v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("fnv1a_file: cannot open " + path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
    }
    return hash;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_text_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_text_file: cannot open " + path);
    out << text;
}

} // namespace fraclab
