#pragma once

#include <iosfwd>
#include <string>

#include "sqgrasp/geometry/mesh.hpp"

namespace sqgrasp {

enum class MeshFormat { obj, ply, stl };

/// Parses, optionally scales, cleans (duplicate merge 1e-9 m, degenerate drop
/// below 1e-12 m^2) and topology-checks a mesh. Throws FormatError with the
/// offending line/offset, EmptyInputError when nothing survives cleaning.
TriangleMesh load_mesh(std::istream& in, MeshFormat format, double scale = 1.0);

/// Infers the format from the file extension.
TriangleMesh load_mesh_file(const std::string& path, double scale = 1.0);

MeshFormat format_from_path(const std::string& path);

void save_obj(const TriangleMesh& mesh, std::ostream& out);
void save_obj_file(const TriangleMesh& mesh, const std::string& path);

}  // namespace sqgrasp
