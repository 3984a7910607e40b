#include "sqgrasp/sdf/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "sqgrasp/common/error.hpp"
#include "sqgrasp/common/parallel.hpp"

namespace sqgrasp {

namespace {
constexpr int kMarginVoxels = 3;
constexpr char kMagic[6] = {'S', 'Q', 'S', 'D', 'F', '1'};
static_assert(std::endian::native == std::endian::little);
}  // namespace

SdfGrid build_sdf(const TriangleMesh& mesh, int target_resolution, double truncation_factor,
                  unsigned threads) {
    if (mesh.empty()) throw EmptyInputError("cannot voxelize an empty mesh");
    if (target_resolution < 16 || target_resolution > 512)
        throw ConfigError("target_resolution must be in [16, 512], got " +
                          std::to_string(target_resolution));
    if (truncation_factor <= 0) throw ConfigError("truncation_factor must be positive");

    const Aabb bounds = mesh.bounds();
    const double longest = bounds.extent().maxCoeff();
    SdfGrid grid;
    grid.spacing = longest / target_resolution;
    grid.truncation = truncation_factor * grid.spacing;
    grid.origin = bounds.min - kMarginVoxels * grid.spacing * Eigen::Vector3d::Ones();
    for (int a = 0; a < 3; ++a) {
        grid.dims[a] = static_cast<std::int32_t>(
                           std::ceil(bounds.extent()[a] / grid.spacing)) +
                       2 * kMarginVoxels + 1;
    }
    grid.values.resize(grid.cell_count());

    const MeshBvh bvh(mesh);
    const double cap = grid.truncation * 1.0000001;
    parallel_for(
        grid.cell_count(),
        [&](std::size_t flat) {
            const double d = bvh.signed_distance(grid.center(flat), cap);
            grid.values[flat] = std::clamp(d, -grid.truncation, grid.truncation);
        },
        threads, 2048);
    return grid;
}

double query_trilinear(const SdfGrid& grid, const Eigen::Vector3d& p) {
    const Aabb domain = grid.domain();
    const Eigen::Vector3d local = (p - grid.origin) / grid.spacing;

    auto interpolate = [&grid](const Eigen::Vector3d& q) {
        std::int32_t cell[3];
        double frac[3];
        for (int a = 0; a < 3; ++a) {
            const double f = std::floor(q[a]);
            cell[a] = std::clamp(static_cast<std::int32_t>(f), 0, grid.dims[a] - 2);
            frac[a] = std::clamp(q[a] - cell[a], 0.0, 1.0);
        }
        double value = 0;
        for (int corner = 0; corner < 8; ++corner) {
            double weight = 1;
            std::int32_t idx[3];
            for (int a = 0; a < 3; ++a) {
                const int bit = (corner >> a) & 1;
                weight *= bit ? frac[a] : 1.0 - frac[a];
                idx[a] = cell[a] + bit;
            }
            value += weight * grid.values[grid.index(idx[0], idx[1], idx[2])];
        }
        return value;
    };

    if (!domain.contains(p)) {
        const Eigen::Vector3d clamped = p.cwiseMax(domain.min).cwiseMin(domain.max);
        const double boundary = interpolate((clamped - grid.origin) / grid.spacing);
        throw OutOfDomainError("trilinear query outside grid domain", boundary);
    }
    return interpolate(local);
}

void save_sdf(const SdfGrid& grid, std::ostream& out) {
    out.write(kMagic, sizeof(kMagic));
    out.write(reinterpret_cast<const char*>(grid.dims.data()), 3 * sizeof(std::int32_t));
    const double header[5] = {grid.origin.x(), grid.origin.y(), grid.origin.z(), grid.spacing,
                              grid.truncation};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    std::vector<float> packed(grid.values.size());
    for (std::size_t i = 0; i < grid.values.size(); ++i)
        packed[i] = static_cast<float>(grid.values[i]);
    out.write(reinterpret_cast<const char*>(packed.data()),
              static_cast<std::streamsize>(packed.size() * sizeof(float)));
    if (!out) throw FormatError("failed writing SDF stream");
}

SdfGrid load_sdf(std::istream& in) {
    char magic[6];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw FormatError("bad SDF magic (offset 0)");
    SdfGrid grid;
    in.read(reinterpret_cast<char*>(grid.dims.data()), 3 * sizeof(std::int32_t));
    double header[5];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!in) throw FormatError("truncated SDF header");
    grid.origin = {header[0], header[1], header[2]};
    grid.spacing = header[3];
    grid.truncation = header[4];
    if (grid.spacing <= 0 || grid.dims[0] < 2 || grid.dims[1] < 2 || grid.dims[2] < 2)
        throw FormatError("invalid SDF header fields");
    std::vector<float> packed(grid.cell_count());
    in.read(reinterpret_cast<char*>(packed.data()),
            static_cast<std::streamsize>(packed.size() * sizeof(float)));
    if (!in) throw FormatError("truncated SDF values");
    grid.values.resize(packed.size());
    for (std::size_t i = 0; i < packed.size(); ++i) {
        grid.values[i] = std::clamp(static_cast<double>(packed[i]), -grid.truncation,
                                    grid.truncation);
    }
    return grid;
}

void save_sdf_file(const SdfGrid& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    save_sdf(grid, out);
}

SdfGrid load_sdf_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open SDF file: " + path);
    return load_sdf(in);
}

}  // namespace sqgrasp
