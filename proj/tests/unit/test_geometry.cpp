#include <doctest.h>

#include <map>
#include <sstream>

#include "sqgrasp/common/error.hpp"
#include "sqgrasp/common/rng.hpp"
#include "sqgrasp/geometry/bvh.hpp"
#include "sqgrasp/geometry/mesh_io.hpp"
#include "sqgrasp/geometry/primitives.hpp"
#include "sqgrasp/geometry/queries.hpp"

using namespace sqgrasp;
using Eigen::Vector3d;

namespace {

const char* kCubeObj = R"(# unit cube
v -0.5 -0.5 -0.5
v  0.5 -0.5 -0.5
v -0.5  0.5 -0.5
v  0.5  0.5 -0.5
v -0.5 -0.5  0.5
v  0.5 -0.5  0.5
v -0.5  0.5  0.5
v  0.5  0.5  0.5
f 1 3 2
f 2 3 4
f 5 6 7
f 6 8 7
f 1 2 5
f 2 6 5
f 3 7 4
f 4 7 8
f 1 5 3
f 3 5 7
f 2 4 6
f 4 8 6
)";

// Independent closest-point-on-triangle oracle (Ericson, "Real-Time
// Collision Detection", region-by-region form).
Vector3d closest_point_on_triangle(const Vector3d& p, const Vector3d& a, const Vector3d& b,
                                   const Vector3d& c) {
    const Vector3d ab = b - a, ac = c - a, ap = p - a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0 && d2 <= 0) return a;
    const Vector3d bp = p - b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0 && d4 <= d3) return b;
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + (d1 / (d1 - d3)) * ab;
    const Vector3d cp = p - c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0 && d5 <= d6) return c;
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + (d2 / (d2 - d6)) * ac;
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0)
        return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
    const double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

double brute_force_distance(const TriangleMesh& mesh, const Vector3d& p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const Vector3d q = closest_point_on_triangle(p, mesh.triangle_vertex(t, 0),
                                                     mesh.triangle_vertex(t, 1),
                                                     mesh.triangle_vertex(t, 2));
        best = std::min(best, (p - q).norm());
    }
    return best;
}

TriangleMesh cube_from_obj() {
    std::istringstream in(kCubeObj);
    return load_mesh(in, MeshFormat::obj);
}

}  // namespace

TEST_CASE("unit cube OBJ loads watertight with 8 vertices and 12 triangles") {
    const TriangleMesh mesh = cube_from_obj();
    CHECK(mesh.vertices.size() == 8);
    CHECK(mesh.triangles.size() == 12);
    CHECK(mesh.watertight);
    CHECK(mesh.boundary_edge_count == 0);
}

TEST_CASE("malformed face line raises a format error naming the line") {
    std::istringstream in("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 nope\n");
    try {
        load_mesh(in, MeshFormat::obj);
        FAIL("expected FormatError");
    } catch (const FormatError& err) {
        CHECK(std::string(err.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("cube with one face removed is not watertight") {
    std::string obj(kCubeObj);
    // drop the last two face lines (one quad face of the cube)
    obj = obj.substr(0, obj.find("f 2 4 6"));
    std::istringstream in(obj);
    const TriangleMesh mesh = load_mesh(in, MeshFormat::obj);
    CHECK(mesh.triangles.size() == 10);
    CHECK_FALSE(mesh.watertight);
    CHECK(mesh.boundary_edge_count == 4);
}

TEST_CASE("empty stream raises empty-input") {
    std::istringstream in("# nothing here\n");
    CHECK_THROWS_AS(load_mesh(in, MeshFormat::obj), EmptyInputError);
}

TEST_CASE("loader merges duplicate vertices and drops degenerate triangles") {
    std::istringstream in(
        "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 0\nv 1 0 0\n"
        "f 1 2 3\nf 4 5 3\nf 1 2 2\n");
    const TriangleMesh mesh = load_mesh(in, MeshFormat::obj);
    CHECK(mesh.vertices.size() == 3);
    CHECK(mesh.triangles.size() == 2);
}

TEST_CASE("uniform scale flag rescales vertices") {
    std::istringstream in(kCubeObj);
    const TriangleMesh mesh = load_mesh(in, MeshFormat::obj, 2.0);
    CHECK(mesh.bounds().extent().x() == doctest::Approx(2.0));
}

TEST_CASE("obj writer round-trips") {
    const TriangleMesh mesh = make_uv_sphere({0.1, -0.2, 0.3}, 0.4, 12, 6);
    std::ostringstream out;
    save_obj(mesh, out);
    std::istringstream in(out.str());
    const TriangleMesh back = load_mesh(in, MeshFormat::obj);
    REQUIRE(back.vertices.size() == mesh.vertices.size());
    REQUIRE(back.triangles.size() == mesh.triangles.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        CHECK((back.vertices[i] - mesh.vertices[i]).norm() < 1e-15);
}

TEST_CASE("binary STL and ascii PLY loaders") {
    const TriangleMesh cube = make_unit_cube();

    SUBCASE("binary stl") {
        std::ostringstream out(std::ios::binary);
        char header[80] = {0};
        out.write(header, 80);
        const auto count = static_cast<std::uint32_t>(cube.triangles.size());
        out.write(reinterpret_cast<const char*>(&count), 4);
        for (std::size_t t = 0; t < cube.triangles.size(); ++t) {
            float rec[12] = {0};
            const Vector3d n = cube.triangle_normal(t);
            rec[0] = float(n.x()), rec[1] = float(n.y()), rec[2] = float(n.z());
            for (int v = 0; v < 3; ++v) {
                const Vector3d vert = cube.triangle_vertex(t, v);
                rec[3 + 3 * v] = float(vert.x());
                rec[4 + 3 * v] = float(vert.y());
                rec[5 + 3 * v] = float(vert.z());
            }
            out.write(reinterpret_cast<const char*>(rec), sizeof(rec));
            const std::uint16_t attr = 0;
            out.write(reinterpret_cast<const char*>(&attr), 2);
        }
        std::istringstream in(out.str(), std::ios::binary);
        const TriangleMesh mesh = load_mesh(in, MeshFormat::stl);
        CHECK(mesh.vertices.size() == 8);  // soup re-welded
        CHECK(mesh.triangles.size() == 12);
        CHECK(mesh.watertight);
    }

    SUBCASE("ascii ply") {
        std::ostringstream out;
        out << "ply\nformat ascii 1.0\nelement vertex " << cube.vertices.size()
            << "\nproperty float x\nproperty float y\nproperty float z\nelement face "
            << cube.triangles.size()
            << "\nproperty list uchar int vertex_indices\nend_header\n";
        for (const auto& v : cube.vertices) out << v.x() << " " << v.y() << " " << v.z() << "\n";
        for (const auto& t : cube.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
        std::istringstream in(out.str());
        const TriangleMesh mesh = load_mesh(in, MeshFormat::ply);
        CHECK(mesh.vertices.size() == 8);
        CHECK(mesh.triangles.size() == 12);
        CHECK(mesh.watertight);
    }

    SUBCASE("big endian ply rejected") {
        std::istringstream in("ply\nformat binary_big_endian 1.0\nend_header\n");
        CHECK_THROWS_AS(load_mesh(in, MeshFormat::ply), FormatError);
    }
}

TEST_CASE("signed distance on the unit cube") {
    const TriangleMesh mesh = cube_from_obj();
    const MeshBvh bvh(mesh);
    CHECK(bvh.signed_distance({0, 0, 0}) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(bvh.signed_distance({1.5, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bvh.signed_distance({0.4, 0.4, 0.4}) == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("bvh distance matches the exhaustive oracle") {
    Rng rng(101);
    const TriangleMesh sphere = make_uv_sphere({0, 0, 0}, 0.5, 12, 8);  // 168 tris < 200
    REQUIRE(sphere.triangles.size() <= 200);
    const MeshBvh bvh(sphere);
    for (int i = 0; i < 500; ++i) {
        const Vector3d p(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        const double expected = brute_force_distance(sphere, p);
        CHECK(std::abs(bvh.distance(p)) - expected == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(std::abs(bvh.signed_distance(p)) ==
              doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("sign flips across the surface for watertight meshes") {
    const TriangleMesh mesh = make_uv_sphere({0.05, -0.1, 0.2}, 0.4, 24, 12);
    const MeshBvh bvh(mesh);
    const double delta = 1e-4;
    const auto samples = sample_surface(mesh, 200, 5);
    for (const auto& s : samples) {
        CHECK(bvh.signed_distance(s.point + delta * s.normal) > 0);
        CHECK(bvh.signed_distance(s.point - delta * s.normal) < 0);
    }
}

TEST_CASE("winding sign works on an open cube") {
    std::string obj(kCubeObj);
    obj = obj.substr(0, obj.find("f 2 4 6"));  // remove +x face
    std::istringstream in(obj);
    const TriangleMesh mesh = load_mesh(in, MeshFormat::obj);
    const MeshBvh bvh(mesh);
    CHECK(bvh.inside({0, 0, 0}));
    CHECK_FALSE(bvh.inside({1.5, 0, 0}));
    CHECK_FALSE(bvh.inside({0, 1.5, 0}));
}

TEST_CASE("surface samples are area weighted and deterministic") {
    const TriangleMesh cube = cube_from_obj();

    SUBCASE("per-face counts for 600 cube samples") {
        const auto samples = sample_surface(cube, 600, 7);
        std::map<int, int> face_counts;  // keyed by dominant normal axis*sign
        for (const auto& s : samples) {
            int axis = 0;
            s.normal.cwiseAbs().maxCoeff(&axis);
            face_counts[(axis + 1) * (s.normal[axis] > 0 ? 1 : -1)]++;
        }
        REQUIRE(face_counts.size() == 6);
        for (const auto& [face, count] : face_counts) {
            CHECK(count >= 60);
            CHECK(count <= 140);
        }
    }

    SUBCASE("single sample lies on a triangle") {
        const auto samples = sample_surface(cube, 1, 3);
        REQUIRE(samples.size() == 1);
        CHECK(brute_force_distance(cube, samples[0].point) < 1e-9);
    }

    SUBCASE("same seed twice gives identical output") {
        const auto a = sample_surface(cube, 64, 99);
        const auto b = sample_surface(cube, 64, 99);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].point == b[i].point);
            CHECK(a[i].normal == b[i].normal);
        }
    }

    SUBCASE("samples sit on the surface") {
        const MeshBvh bvh(cube);
        for (const auto& s : sample_surface(cube, 300, 11))
            CHECK(std::abs(bvh.signed_distance(s.point)) < 1e-9);
    }
}

TEST_CASE("fixture meshes are sane") {
    for (const TriangleMesh& mesh :
         {make_unit_cube(), make_uv_sphere({0, 0, 0}, 0.25), make_twin_spheres(),
          make_dumbbell(), make_chair_like()}) {
        REQUIRE(!mesh.empty());
        for (const auto& t : mesh.triangles)
            for (int c = 0; c < 3; ++c)
                CHECK(t[c] < static_cast<std::int32_t>(mesh.vertices.size()));
    }
    // closed primitives are watertight after welding
    CHECK(make_unit_cube().watertight);
    CHECK(make_uv_sphere({0, 0, 0}, 0.25).watertight);
    CHECK(make_twin_spheres().watertight);  // two disjoint closed components
    // spheres have outward normals: winding at center is 1
    const TriangleMesh sphere = make_uv_sphere({0, 0, 0}, 1.0);
    const MeshBvh bvh(sphere);
    CHECK(bvh.winding_number({0, 0, 0}) == doctest::Approx(1.0).epsilon(2e-2));
    CHECK(bvh.winding_number({2, 0, 0}) == doctest::Approx(0.0).epsilon(2e-2));
}
