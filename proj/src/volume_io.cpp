#include "obsbench/volume_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "obsbench/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "volume format is little-endian; add byte swapping for this platform");

namespace obsbench {

namespace {

constexpr char kMagic[8] = {'O', 'B', 'S', 'V', 'O', 'L', '0', '1'};

}  // namespace

void save_volume(const Volume3D& v, const std::filesystem::path& path) {
    if (v.data.size() != v.dims.count())
        throw FormatError("save_volume: data size does not match dims");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("save_volume: cannot open " + path.string());

    out.write(kMagic, sizeof(kMagic));
    const std::uint32_t dims[3] = {std::uint32_t(v.dims.nx), std::uint32_t(v.dims.ny),
                                   std::uint32_t(v.dims.nz)};
    const double pitch[3] = {v.pitch.dx, v.pitch.dy, v.pitch.dz};
    out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    out.write(reinterpret_cast<const char*>(pitch), sizeof(pitch));

    std::vector<float> buf(v.data.size());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = float(v.data[i]);
    out.write(reinterpret_cast<const char*>(buf.data()),
              std::streamsize(buf.size() * sizeof(float)));
    if (!out) throw FormatError("save_volume: write failed for " + path.string());
}

Volume3D load_volume(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load_volume: cannot open " + path.string());

    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw FormatError("load_volume: bad magic in " + path.string());

    std::uint32_t dims[3];
    double pitch[3];
    in.read(reinterpret_cast<char*>(dims), sizeof(dims));
    in.read(reinterpret_cast<char*>(pitch), sizeof(pitch));
    if (!in) throw FormatError("load_volume: truncated header in " + path.string());
    if (dims[0] == 0 || dims[1] == 0 || dims[2] == 0)
        throw FormatError("load_volume: zero dims in " + path.string());

    Volume3D v(Dims{int(dims[0]), int(dims[1]), int(dims[2])},
               Pitch{pitch[0], pitch[1], pitch[2]});
    std::vector<float> buf(v.dims.count());
    in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size() * sizeof(float)));
    if (!in || std::size_t(in.gcount()) != buf.size() * sizeof(float))
        throw FormatError("load_volume: truncated data in " + path.string());
    for (std::size_t i = 0; i < buf.size(); ++i) v.data[i] = double(buf[i]);
    return v;
}

}  // namespace obsbench
