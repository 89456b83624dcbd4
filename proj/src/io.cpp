#include "riscfo/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace riscfo {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os)
        throw IoError(path, "cannot open for writing");
    return os;
}

void write_row(std::ostream& os, Index a, Index b, Complex v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g\n", static_cast<long long>(a),
                  static_cast<long long>(b), v.real(), v.imag());
    os << buf;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
    os.flush();
    if (!os)
        throw IoError(path, "write failed");
}

}  // namespace

void write_channel_csv(const ChannelSet& channel, const std::filesystem::path& path) {
    auto os = open_out(path);
    os << "m,l,re,im\n";
    const ComplexMat& g = channel.cir();
    for (Index m = 0; m < g.cols(); ++m)
        for (Index l = 0; l < g.rows(); ++l)
            write_row(os, m, l, g(l, m));
    finish(os, path);
}

void write_pattern_csv(const ReflectionPattern& pattern, const std::filesystem::path& path) {
    auto os = open_out(path);
    os << "m,k,re,im\n";
    const ComplexMat& phi = pattern.matrix();
    for (Index m = 0; m < phi.rows(); ++m)
        for (Index k = 0; k < phi.cols(); ++k)
            write_row(os, m, k, phi(m, k));
    finish(os, path);
}

ReflectionPattern read_pattern_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError(path, "cannot open for reading");
    std::string line;
    if (!std::getline(is, line) || line != "m,k,re,im")
        throw IoError(path, "expected header 'm,k,re,im'");

    std::map<std::pair<Index, Index>, Complex> entries;
    Index size = 0;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty())
            continue;
        long long m = 0, k = 0;
        double re = 0, im = 0;
        if (std::sscanf(line.c_str(), "%lld,%lld,%lf,%lf", &m, &k, &re, &im) != 4 || m < 0 || k < 0)
            throw IoError(path, "malformed row at line " + std::to_string(line_no));
        if (!entries.emplace(std::pair<Index, Index>{m, k}, Complex{re, im}).second)
            throw IoError(path, "duplicate entry at line " + std::to_string(line_no));
        size = std::max<Index>(size, std::max<Index>(m, k) + 1);
    }
    if (size == 0 || static_cast<Index>(entries.size()) != size * size)
        throw IoError(path, "pattern is not a complete square matrix");
    ComplexMat phi(size, size);
    for (const auto& [key, value] : entries)
        phi(key.first, key.second) = value;
    return ReflectionPattern(std::move(phi));
}

void write_frame_csv(const PilotFrame& frame, const std::filesystem::path& path) {
    auto os = open_out(path);
    os << "k,u,re,im\n";
    for (Index k = 0; k < frame.blocks(); ++k) {
        const ComplexVec& x = frame.block(k).samples;
        const Index n = x.size();
        for (Index u = -frame.cp_length(); u < n; ++u)
            write_row(os, k, u, x(u < 0 ? u + n : u));
    }
    finish(os, path);
}

}  // namespace riscfo
