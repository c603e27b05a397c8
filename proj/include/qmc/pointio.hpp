#pragma once

#include <string>
#include <vector>

#include "qmc/engine.hpp"

namespace qmc {

/// CSV points: '#' metadata lines first, then one point per row with full
/// decimal precision.
void write_points_csv(const PointBatch& batch, const std::string& path,
                      const std::vector<std::string>& metadata);
PointBatch read_points_csv(const std::string& path);

/// Raw binary points: 16-byte header (8-byte magic "QMCPTS1\0", u32 n,
/// u32 s, little endian) followed by n*s little-endian doubles.
void write_points_bin(const PointBatch& batch, const std::string& path);
PointBatch read_points_bin(const std::string& path);

} // namespace qmc
