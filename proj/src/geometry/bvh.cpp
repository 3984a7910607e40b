#include "sqgrasp/geometry/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sqgrasp {

namespace {

constexpr std::uint32_t kLeafSize = 8;
constexpr double kWindingBeta = 2.8;  // far-field threshold multiplier

double solid_angle(const Eigen::Vector3d& p, const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                   const Eigen::Vector3d& c) {
    const Eigen::Vector3d va = a - p;
    const Eigen::Vector3d vb = b - p;
    const Eigen::Vector3d vc = c - p;
    const double la = va.norm(), lb = vb.norm(), lc = vc.norm();
    const double numerator = va.dot(vb.cross(vc));
    const double denominator =
        la * lb * lc + va.dot(vb) * lc + vb.dot(vc) * la + vc.dot(va) * lb;
    return 2.0 * std::atan2(numerator, denominator);
}

}  // namespace

MeshBvh::MeshBvh(const TriangleMesh& mesh) {
    const auto n = static_cast<std::uint32_t>(mesh.triangles.size());
    std::vector<Aabb> boxes(n);
    std::vector<Eigen::Vector3d> centroids(n);
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t t = 0; t < n; ++t) {
        order[t] = t;
        const Eigen::Vector3d a = mesh.triangle_vertex(t, 0);
        const Eigen::Vector3d b = mesh.triangle_vertex(t, 1);
        const Eigen::Vector3d c = mesh.triangle_vertex(t, 2);
        boxes[t].expand(a);
        boxes[t].expand(b);
        boxes[t].expand(c);
        centroids[t] = (a + b + c) / 3.0;
    }
    nodes_.reserve(n == 0 ? 1 : 2 * n);
    if (n > 0) build(order, 0, n, centroids, boxes);

    tris_.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        const Eigen::Vector3d a = mesh.triangle_vertex(order[i], 0);
        const Eigen::Vector3d b = mesh.triangle_vertex(order[i], 1);
        const Eigen::Vector3d c = mesh.triangle_vertex(order[i], 2);
        tris_.push_back(a.data(), b.data(), c.data());
    }
    if (!nodes_.empty()) fill_winding_data(0);
}

std::int32_t MeshBvh::build(std::vector<std::uint32_t>& order, std::uint32_t begin,
                            std::uint32_t end, const std::vector<Eigen::Vector3d>& centroids,
                            const std::vector<Aabb>& boxes) {
    const auto index = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    Aabb box;
    Aabb centroid_box;
    for (std::uint32_t i = begin; i < end; ++i) {
        box.expand(boxes[order[i]]);
        centroid_box.expand(centroids[order[i]]);
    }
    nodes_[index].box = box;

    const std::uint32_t count = end - begin;
    if (count <= kLeafSize) {
        nodes_[index].begin = begin;
        nodes_[index].count = count;
        return index;
    }

    int axis = 0;
    centroid_box.extent().maxCoeff(&axis);
    const double split = centroid_box.center()[axis];
    const auto mid = std::partition(order.begin() + begin, order.begin() + end,
                                    [&](std::uint32_t t) { return centroids[t][axis] < split; });
    auto mid_index = static_cast<std::uint32_t>(mid - order.begin());
    if (mid_index == begin || mid_index == end) {
        // degenerate spread: median split keeps the tree balanced
        mid_index = begin + count / 2;
        std::nth_element(order.begin() + begin, order.begin() + mid_index, order.begin() + end,
                         [&](std::uint32_t lhs, std::uint32_t rhs) {
                             return centroids[lhs][axis] < centroids[rhs][axis];
                         });
    }
    const std::int32_t left = build(order, begin, mid_index, centroids, boxes);
    const std::int32_t right = build(order, mid_index, end, centroids, boxes);
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
}

void MeshBvh::fill_winding_data(std::int32_t node_index) {
    Node& node = nodes_[node_index];
    if (node.is_leaf()) {
        double area_sum = 0;
        Eigen::Vector3d weighted_center = Eigen::Vector3d::Zero();
        Eigen::Vector3d normal_sum = Eigen::Vector3d::Zero();
        for (std::uint32_t i = node.begin; i < node.begin + node.count; ++i) {
            const Eigen::Vector3d a(tris_.ax[i], tris_.ay[i], tris_.az[i]);
            const Eigen::Vector3d b(tris_.bx[i], tris_.by[i], tris_.bz[i]);
            const Eigen::Vector3d c(tris_.cx[i], tris_.cy[i], tris_.cz[i]);
            const Eigen::Vector3d cross = (b - a).cross(c - a);
            const double area = 0.5 * cross.norm();
            normal_sum += 0.5 * cross;
            weighted_center += area * (a + b + c) / 3.0;
            area_sum += area;
        }
        node.dipole_normal = normal_sum;
        node.dipole_center = area_sum > 0 ? (weighted_center / area_sum).eval() : node.box.center();
    } else {
        fill_winding_data(node.left);
        fill_winding_data(node.right);
        const Node& l = nodes_[node.left];
        const Node& r = nodes_[node.right];
        const double wl = l.dipole_normal.norm() + 1e-300;
        const double wr = r.dipole_normal.norm() + 1e-300;
        node.dipole_normal = l.dipole_normal + r.dipole_normal;
        node.dipole_center = (wl * l.dipole_center + wr * r.dipole_center) / (wl + wr);
    }
    // radius: farthest corner of the node box from the dipole center
    double r2 = 0;
    const Node& node_ref = nodes_[node_index];
    for (int corner = 0; corner < 8; ++corner) {
        Eigen::Vector3d v;
        for (int a = 0; a < 3; ++a)
            v[a] = (corner >> a) & 1 ? node_ref.box.max[a] : node_ref.box.min[a];
        r2 = std::max(r2, (v - node_ref.dipole_center).squaredNorm());
    }
    nodes_[node_index].dipole_radius_sq = r2;
}

double MeshBvh::distance(const Eigen::Vector3d& p, double cap) const {
    if (nodes_.empty()) return cap;
    double best_sq = cap < std::numeric_limits<double>::infinity() ? cap * cap : cap;
    struct Entry {
        std::int32_t node;
        double dist_sq;
    };
    Entry stack[128];
    int top = 0;
    stack[top++] = {0, nodes_[0].box.distance_sq(p)};
    const double pv[3] = {p.x(), p.y(), p.z()};
    while (top > 0) {
        const Entry entry = stack[--top];
        if (entry.dist_sq >= best_sq) continue;
        const Node& node = nodes_[entry.node];
        if (node.is_leaf()) {
            const double d =
                kernels::min_dist_sq(tris_, node.begin, node.begin + node.count, pv);
            best_sq = std::min(best_sq, d);
            continue;
        }
        const double dl = nodes_[node.left].box.distance_sq(p);
        const double dr = nodes_[node.right].box.distance_sq(p);
        // push the farther child first so the nearer one is processed next
        if (dl < dr) {
            if (dr < best_sq) stack[top++] = {node.right, dr};
            if (dl < best_sq) stack[top++] = {node.left, dl};
        } else {
            if (dl < best_sq) stack[top++] = {node.left, dl};
            if (dr < best_sq) stack[top++] = {node.right, dr};
        }
    }
    return std::sqrt(best_sq);
}

double MeshBvh::winding_recurse(std::int32_t node_index, const Eigen::Vector3d& p) const {
    const Node& node = nodes_[node_index];
    const double dist_sq = (p - node.dipole_center).squaredNorm();
    if (dist_sq > kWindingBeta * kWindingBeta * node.dipole_radius_sq && dist_sq > 0) {
        const Eigen::Vector3d r = node.dipole_center - p;
        const double len = std::sqrt(dist_sq);
        return node.dipole_normal.dot(r) / (4.0 * std::numbers::pi * len * len * len);
    }
    if (node.is_leaf()) {
        double angle_sum = 0;
        for (std::uint32_t i = node.begin; i < node.begin + node.count; ++i) {
            angle_sum += solid_angle(p, {tris_.ax[i], tris_.ay[i], tris_.az[i]},
                                     {tris_.bx[i], tris_.by[i], tris_.bz[i]},
                                     {tris_.cx[i], tris_.cy[i], tris_.cz[i]});
        }
        return angle_sum / (4.0 * std::numbers::pi);
    }
    return winding_recurse(node.left, p) + winding_recurse(node.right, p);
}

double MeshBvh::winding_number(const Eigen::Vector3d& p) const {
    if (nodes_.empty()) return 0.0;
    return winding_recurse(0, p);
}

double MeshBvh::signed_distance(const Eigen::Vector3d& p, double cap) const {
    const double d = distance(p, cap);
    return inside(p) ? -d : d;
}

}  // namespace sqgrasp
