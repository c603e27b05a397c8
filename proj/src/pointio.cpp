#include "qmc/pointio.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qmc {

namespace {
constexpr char kMagic[8] = {'Q', 'M', 'C', 'P', 'T', 'S', '1', '\0'};
}

void write_points_csv(const PointBatch& batch, const std::string& path,
                      const std::vector<std::string>& metadata) {
    std::ofstream out(path);
    if (!out) fail(errc::io_error, "cannot write " + path);
    for (const auto& line : metadata) out << "# " << line << '\n';
    out << std::setprecision(17);
    for (std::size_t i = 0; i < batch.n; ++i) {
        for (int j = 0; j < batch.s; ++j) {
            if (j) out << ',';
            out << batch.at(i, j);
        }
        out << '\n';
    }
    if (!out) fail(errc::io_error, "write failed for " + path);
}

PointBatch read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io_error, "cannot open " + path);
    PointBatch batch;
    batch.family = "file";
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::vector<double> values;
        std::string cell;
        while (std::getline(row, cell, ',')) {
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                fail(errc::parse_error, path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (values.empty()) continue;
        if (batch.s == 0) batch.s = static_cast<int>(values.size());
        if (static_cast<int>(values.size()) != batch.s)
            fail(errc::parse_error,
                 path + ":" + std::to_string(lineno) + ": expected " + std::to_string(batch.s) + " columns");
        batch.pts.insert(batch.pts.end(), values.begin(), values.end());
        batch.n += 1;
    }
    if (batch.n == 0) fail(errc::parse_error, path + ": no points");
    return batch;
}

void write_points_bin(const PointBatch& batch, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot write " + path);
    out.write(kMagic, sizeof kMagic);
    const std::uint32_t n = static_cast<std::uint32_t>(batch.n);
    const std::uint32_t s = static_cast<std::uint32_t>(batch.s);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&s), 4);
    out.write(reinterpret_cast<const char*>(batch.pts.data()),
              static_cast<std::streamsize>(batch.pts.size() * sizeof(double)));
    if (!out) fail(errc::io_error, "write failed for " + path);
}

PointBatch read_points_bin(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::io_error, "cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        fail(errc::parse_error, path + ": not a qmc binary point file");
    std::uint32_t n = 0, s = 0;
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&s), 4);
    if (!in || s == 0) fail(errc::parse_error, path + ": corrupt header");
    PointBatch batch;
    batch.family = "file";
    batch.n = n;
    batch.s = static_cast<int>(s);
    batch.pts.resize(std::size_t(n) * s);
    in.read(reinterpret_cast<char*>(batch.pts.data()),
            static_cast<std::streamsize>(batch.pts.size() * sizeof(double)));
    if (!in) fail(errc::parse_error, path + ": truncated point data");
    return batch;
}

} // namespace qmc
