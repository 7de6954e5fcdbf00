#include "oam/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace oam {

namespace {

static_assert(std::endian::native == std::endian::little,
              "field dump I/O assumes a little-endian host");

constexpr char kMagic[4] = {'O', 'A', 'M', 'F'};

void write_bytes(std::ofstream& os, const void* p, size_t len)
{
    os.write(static_cast<const char*>(p), static_cast<std::streamsize>(len));
}

void read_bytes(std::ifstream& is, void* p, size_t len)
{
    is.read(static_cast<char*>(p), static_cast<std::streamsize>(len));
    if (!is)
        throw Error("field dump: truncated file");
}

} // namespace

void write_field(const SampledField& field, const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error("field dump: cannot open " + path.string() + " for writing");

    write_bytes(os, kMagic, 4);
    const std::uint32_t version = kFieldDumpVersion;
    const std::uint32_t n = static_cast<std::uint32_t>(field.n());
    write_bytes(os, &version, 4);
    write_bytes(os, &n, 4);
    const double dx = field.dx();
    const double z = field.z();
    const double wl = field.wavelength();
    write_bytes(os, &dx, 8);
    write_bytes(os, &z, 8);
    write_bytes(os, &wl, 8);
    // std::complex<double> is layout-compatible with double[2] = (re, im)
    write_bytes(os, field.values().data(), field.values().size() * sizeof(Complex));
    if (!os)
        throw Error("field dump: write failed for " + path.string());
}

SampledField read_field(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw Error("field dump: cannot open " + path.string());

    char magic[4];
    read_bytes(is, magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw Error("field dump: bad magic in " + path.string());
    std::uint32_t version = 0;
    std::uint32_t n = 0;
    read_bytes(is, &version, 4);
    if (version != kFieldDumpVersion)
        throw Error("field dump: unsupported version " + std::to_string(version));
    read_bytes(is, &n, 4);
    double dx = 0.0, z = 0.0, wl = 0.0;
    read_bytes(is, &dx, 8);
    read_bytes(is, &z, 8);
    read_bytes(is, &wl, 8);

    std::vector<Complex> vals(static_cast<size_t>(n) * n);
    read_bytes(is, vals.data(), vals.size() * sizeof(Complex));
    return SampledField(static_cast<int>(n), dx, z, wl, std::move(vals));
}

void write_intensity_csv(const SampledField& field, const std::filesystem::path& path)
{
    std::ofstream os(path);
    if (!os)
        throw Error("intensity csv: cannot open " + path.string() + " for writing");
    os << "x,y,I\n";
    char buf[128];
    const int n = field.n();
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g\n", field.x(ix), field.x(iy),
                          std::norm(field.at(ix, iy)));
            os << buf;
        }
    }
}

} // namespace oam
