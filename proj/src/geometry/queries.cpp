#include "sqgrasp/geometry/queries.hpp"

#include <algorithm>
#include <cmath>

#include "sqgrasp/common/error.hpp"
#include "sqgrasp/common/rng.hpp"

namespace sqgrasp {

std::vector<SurfaceSample> sample_surface(const TriangleMesh& mesh, std::size_t n,
                                          std::uint64_t seed) {
    if (mesh.empty()) throw EmptyInputError("cannot sample an empty mesh");
    std::vector<double> cumulative(mesh.triangles.size());
    double total = 0;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        total += mesh.triangle_area(t);
        cumulative[t] = total;
    }
    Rng rng(seed);
    std::vector<SurfaceSample> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform() * total;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        const auto t = static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                     static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
        const Eigen::Vector3d a = mesh.triangle_vertex(t, 0);
        const Eigen::Vector3d b = mesh.triangle_vertex(t, 1);
        const Eigen::Vector3d c = mesh.triangle_vertex(t, 2);
        // sqrt trick for uniform barycentric coordinates
        const double r1 = std::sqrt(rng.uniform());
        const double r2 = rng.uniform();
        const Eigen::Vector3d p = (1.0 - r1) * a + r1 * (1.0 - r2) * b + r1 * r2 * c;
        samples.push_back({p, mesh.triangle_normal(t)});
    }
    return samples;
}

}  // namespace sqgrasp
