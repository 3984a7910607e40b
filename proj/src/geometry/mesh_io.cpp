#include "sqgrasp/geometry/mesh_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sqgrasp/common/error.hpp"

namespace sqgrasp {

namespace {

[[noreturn]] void fail_line(const char* what, std::size_t line) {
    throw FormatError(std::string(what) + " at line " + std::to_string(line));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& tok, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) fail_line("malformed number", line);
        return v;
    } catch (const FormatError&) {
        throw;
    } catch (...) {
        fail_line("malformed number", line);
    }
}

long parse_long(const std::string& tok, std::size_t line) {
    try {
        std::size_t used = 0;
        const long v = std::stol(tok, &used);
        if (used != tok.size()) fail_line("malformed index", line);
        return v;
    } catch (const FormatError&) {
        throw;
    } catch (...) {
        fail_line("malformed index", line);
    }
}

struct RawMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<std::int32_t, 3>> triangles;
};

RawMesh parse_obj(std::istream& in) {
    RawMesh raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks[0] == "v") {
            if (toks.size() < 4) fail_line("vertex needs 3 coordinates", line_no);
            raw.vertices.emplace_back(parse_double(toks[1], line_no),
                                      parse_double(toks[2], line_no),
                                      parse_double(toks[3], line_no));
        } else if (toks[0] == "f") {
            if (toks.size() < 4) fail_line("face needs at least 3 vertices", line_no);
            std::vector<std::int32_t> corners;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                const std::string& ref = toks[i];
                const std::size_t slash = ref.find('/');
                const std::string head = slash == std::string::npos ? ref : ref.substr(0, slash);
                if (head.empty()) fail_line("malformed face corner", line_no);
                long idx = parse_long(head, line_no);
                if (idx < 0) idx = static_cast<long>(raw.vertices.size()) + idx + 1;
                if (idx < 1 || idx > static_cast<long>(raw.vertices.size()))
                    fail_line("face index out of range", line_no);
                corners.push_back(static_cast<std::int32_t>(idx - 1));
            }
            for (std::size_t i = 1; i + 1 < corners.size(); ++i)
                raw.triangles.push_back({corners[0], corners[i], corners[i + 1]});
        }
        // vn / vt / o / g / usemtl etc. are ignored
    }
    return raw;
}

// --- PLY ---

struct PlyProperty {
    std::string name;
    std::string type;
    bool is_list = false;
    std::string count_type;
};

struct PlyElement {
    std::string name;
    std::size_t count = 0;
    std::vector<PlyProperty> properties;
};

double read_binary_scalar(std::istream& in, const std::string& type) {
    // little-endian host assumed (checked at compile time below)
    static_assert(std::endian::native == std::endian::little);
    auto read_as = [&in](auto value) -> double {
        in.read(reinterpret_cast<char*>(&value), sizeof(value));
        return static_cast<double>(value);
    };
    if (type == "char" || type == "int8") return read_as(std::int8_t{});
    if (type == "uchar" || type == "uint8") return read_as(std::uint8_t{});
    if (type == "short" || type == "int16") return read_as(std::int16_t{});
    if (type == "ushort" || type == "uint16") return read_as(std::uint16_t{});
    if (type == "int" || type == "int32") return read_as(std::int32_t{});
    if (type == "uint" || type == "uint32") return read_as(std::uint32_t{});
    if (type == "float" || type == "float32") return read_as(float{});
    return read_as(double{});
}

RawMesh parse_ply(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() {
        if (!std::getline(in, line)) fail_line("unexpected end of PLY header", line_no);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
    };

    next_line();
    if (line != "ply") fail_line("missing ply magic", line_no);
    bool binary = false;
    std::vector<PlyElement> elements;
    for (;;) {
        next_line();
        const auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "comment") continue;
        if (toks[0] == "format") {
            if (toks.size() < 2) fail_line("malformed format", line_no);
            if (toks[1] == "ascii")
                binary = false;
            else if (toks[1] == "binary_little_endian")
                binary = true;
            else
                fail_line("unsupported PLY format (big-endian?)", line_no);
        } else if (toks[0] == "element") {
            if (toks.size() < 3) fail_line("malformed element", line_no);
            PlyElement el;
            el.name = toks[1];
            el.count = static_cast<std::size_t>(parse_long(toks[2], line_no));
            elements.push_back(el);
        } else if (toks[0] == "property") {
            if (elements.empty() || toks.size() < 3) fail_line("property outside element", line_no);
            PlyProperty prop;
            if (toks[1] == "list") {
                if (toks.size() < 5) fail_line("malformed list property", line_no);
                prop.is_list = true;
                prop.count_type = toks[2];
                prop.type = toks[3];
                prop.name = toks[4];
            } else {
                prop.type = toks[1];
                prop.name = toks[2];
            }
            elements.back().properties.push_back(prop);
        } else if (toks[0] == "end_header") {
            break;
        } else {
            fail_line("unknown PLY header directive", line_no);
        }
    }

    RawMesh raw;
    for (const PlyElement& el : elements) {
        const bool is_vertex = el.name == "vertex";
        const bool is_face = el.name == "face";
        for (std::size_t i = 0; i < el.count; ++i) {
            double x = 0, y = 0, z = 0;
            std::vector<long> face;
            if (binary) {
                for (const PlyProperty& prop : el.properties) {
                    if (prop.is_list) {
                        const auto n = static_cast<std::size_t>(
                            read_binary_scalar(in, prop.count_type));
                        for (std::size_t j = 0; j < n; ++j) {
                            const double v = read_binary_scalar(in, prop.type);
                            if (is_face && prop.name.find("vertex_ind") != std::string::npos)
                                face.push_back(static_cast<long>(v));
                        }
                    } else {
                        const double v = read_binary_scalar(in, prop.type);
                        if (prop.name == "x") x = v;
                        if (prop.name == "y") y = v;
                        if (prop.name == "z") z = v;
                    }
                }
                if (!in) throw FormatError("truncated binary PLY at element " + el.name +
                                           " index " + std::to_string(i));
            } else {
                next_line();
                const auto toks = split_ws(line);
                std::size_t cursor = 0;
                auto take = [&]() -> double {
                    if (cursor >= toks.size()) fail_line("too few values", line_no);
                    return parse_double(toks[cursor++], line_no);
                };
                for (const PlyProperty& prop : el.properties) {
                    if (prop.is_list) {
                        const auto n = static_cast<std::size_t>(take());
                        for (std::size_t j = 0; j < n; ++j) {
                            const double v = take();
                            if (is_face && prop.name.find("vertex_ind") != std::string::npos)
                                face.push_back(static_cast<long>(v));
                        }
                    } else {
                        const double v = take();
                        if (prop.name == "x") x = v;
                        if (prop.name == "y") y = v;
                        if (prop.name == "z") z = v;
                    }
                }
            }
            if (is_vertex) raw.vertices.emplace_back(x, y, z);
            if (is_face) {
                for (std::size_t j = 1; j + 1 < face.size(); ++j)
                    raw.triangles.push_back({static_cast<std::int32_t>(face[0]),
                                             static_cast<std::int32_t>(face[j]),
                                             static_cast<std::int32_t>(face[j + 1])});
            }
        }
    }
    return raw;
}

// --- STL ---

RawMesh parse_stl_ascii(std::istream& in) {
    RawMesh raw;
    std::string line;
    std::size_t line_no = 0;
    std::vector<Eigen::Vector3d> pending;
    while (std::getline(in, line)) {
        ++line_no;
        const auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "vertex") {
            if (toks.size() < 4) fail_line("vertex needs 3 coordinates", line_no);
            pending.emplace_back(parse_double(toks[1], line_no), parse_double(toks[2], line_no),
                                 parse_double(toks[3], line_no));
        } else if (toks[0] == "endfacet") {
            if (pending.size() != 3) fail_line("facet without exactly 3 vertices", line_no);
            const auto base = static_cast<std::int32_t>(raw.vertices.size());
            for (const auto& v : pending) raw.vertices.push_back(v);
            raw.triangles.push_back({base, base + 1, base + 2});
            pending.clear();
        }
    }
    return raw;
}

RawMesh parse_stl_binary(std::istream& in) {
    char header[80];
    in.read(header, sizeof(header));
    std::uint32_t count = 0;
    in.read(reinterpret_cast<char*>(&count), sizeof(count));
    if (!in) throw FormatError("truncated binary STL header");
    RawMesh raw;
    raw.vertices.reserve(static_cast<std::size_t>(count) * 3);
    for (std::uint32_t t = 0; t < count; ++t) {
        float record[12];
        in.read(reinterpret_cast<char*>(record), sizeof(record));
        std::uint16_t attr = 0;
        in.read(reinterpret_cast<char*>(&attr), sizeof(attr));
        if (!in)
            throw FormatError("truncated binary STL at facet " + std::to_string(t) + " of " +
                              std::to_string(count));
        const auto base = static_cast<std::int32_t>(raw.vertices.size());
        for (int v = 0; v < 3; ++v)
            raw.vertices.emplace_back(record[3 + 3 * v], record[4 + 3 * v], record[5 + 3 * v]);
        raw.triangles.push_back({base, base + 1, base + 2});
    }
    return raw;
}

RawMesh parse_stl(std::istream& in) {
    // buffer the stream so we can sniff ascii vs binary
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string head = buffer.str().substr(0, 512);
    const bool ascii =
        head.rfind("solid", 0) == 0 && head.find("facet") != std::string::npos;
    buffer.seekg(0);
    return ascii ? parse_stl_ascii(buffer) : parse_stl_binary(buffer);
}

}  // namespace

TriangleMesh load_mesh(std::istream& in, MeshFormat format, double scale) {
    if (scale <= 0.0) throw ConfigError("mesh scale must be positive");
    RawMesh raw;
    switch (format) {
        case MeshFormat::obj: raw = parse_obj(in); break;
        case MeshFormat::ply: raw = parse_ply(in); break;
        case MeshFormat::stl: raw = parse_stl(in); break;
    }
    if (scale != 1.0)
        for (auto& v : raw.vertices) v *= scale;
    TriangleMesh mesh = TriangleMesh::cleaned(std::move(raw.vertices), std::move(raw.triangles));
    if (mesh.empty()) throw EmptyInputError("mesh contains no triangles after cleaning");
    return mesh;
}

MeshFormat format_from_path(const std::string& path) {
    const auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == "obj") return MeshFormat::obj;
    if (ext == "ply") return MeshFormat::ply;
    if (ext == "stl") return MeshFormat::stl;
    throw ConfigError("cannot infer mesh format from path: " + path);
}

TriangleMesh load_mesh_file(const std::string& path, double scale) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open mesh file: " + path);
    return load_mesh(in, format_from_path(path), scale);
}

void save_obj(const TriangleMesh& mesh, std::ostream& out) {
    out.precision(17);
    for (const auto& v : mesh.vertices) out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
    for (const auto& t : mesh.triangles)
        out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
}

void save_obj_file(const TriangleMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    save_obj(mesh, out);
}

}  // namespace sqgrasp
