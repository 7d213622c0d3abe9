#pragma once

#include <filesystem>

#include "obsbench/grid.hpp"

namespace obsbench {

/// Binary volume format: 8-byte magic "OBSVOL01", then little-endian
/// 3 x u32 dims, 3 x f64 pitch (cm), and nx*ny*nz f32 values x-fastest.
void save_volume(const Volume3D& v, const std::filesystem::path& path);
Volume3D load_volume(const std::filesystem::path& path);

}  // namespace obsbench
