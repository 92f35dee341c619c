#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "isofill/core/disc.hpp"
#include "isofill/core/flag_complex.hpp"

namespace isofill {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool next_line(std::istream& in, std::istringstream& words) {
    std::string line;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::istringstream probe(line);
        std::string w;
        if (probe >> w) {
            words = std::istringstream(line);
            return true;
        }
    }
    return false;
}

inline std::int64_t want_int(std::istringstream& in, const char* what) {
    std::int64_t v;
    if (!(in >> v)) throw ParseError(std::string("expected ") + what);
    return v;
}

}  // namespace detail

inline FiniteFlagComplex read_flag_complex(std::istream& in) {
    std::istringstream words;
    if (!detail::next_line(in, words)) throw ParseError("empty complex file");
    std::string kw, ver;
    words >> kw >> ver;
    if (kw != "flag-complex" || ver != "v1") throw ParseError("expected header 'flag-complex v1'");

    FiniteFlagComplex k;
    while (detail::next_line(in, words)) {
        words >> kw;
        if (kw == "vertex") {
            k.add_vertex({detail::want_int(words, "vertex id")});
        } else if (kw == "edge") {
            VertexId u{detail::want_int(words, "edge endpoint")};
            VertexId v{detail::want_int(words, "edge endpoint")};
            if (!k.has_vertex(u)) k.add_vertex(u);
            if (!k.has_vertex(v)) k.add_vertex(v);
            k.add_edge(u, v);
        } else {
            throw ParseError("unknown directive '" + kw + "' in complex file");
        }
    }
    return k;
}

inline void write_flag_complex(std::ostream& out, const FiniteFlagComplex& k) {
    out << "flag-complex v1\n";
    const auto verts = k.vertices();
    for (VertexId v : *verts) out << "vertex " << v.id << "\n";
    for (auto [u, v] : k.edges()) out << "edge " << u.id << " " << v.id << "\n";
}

inline CombLoop read_loop(std::istream& in) {
    std::istringstream words;
    if (!detail::next_line(in, words)) throw ParseError("empty loop file");
    std::string kw;
    words >> kw;
    if (kw != "loop") throw ParseError("expected 'loop' line");
    CombLoop c;
    std::int64_t v;
    while (words >> v) c.vertices.push_back({v});
    if (c.vertices.empty()) throw ParseError("loop has no vertices");
    if (detail::next_line(in, words)) throw ParseError("trailing content after loop line");
    return c;
}

inline void write_loop(std::ostream& out, const CombLoop& c) {
    out << "loop";
    for (VertexId v : c.vertices) out << " " << v.id;
    out << "\n";
}

inline std::pair<TriangulatedDisc, SimplicialFillingMap> read_filling(std::istream& in) {
    TriangulatedDisc p;
    SimplicialFillingMap f;
    bool saw_boundary = false;
    std::istringstream words;
    while (detail::next_line(in, words)) {
        std::string kw;
        words >> kw;
        if (kw == "triangle") {
            int a = static_cast<int>(detail::want_int(words, "triangle vertex"));
            int b = static_cast<int>(detail::want_int(words, "triangle vertex"));
            int c = static_cast<int>(detail::want_int(words, "triangle vertex"));
            p.triangles.push_back({a, b, c});
        } else if (kw == "map") {
            int local = static_cast<int>(detail::want_int(words, "local vertex"));
            std::int64_t global = detail::want_int(words, "global vertex");
            if (!f.assignment.emplace(local, VertexId{global}).second)
                throw ParseError("duplicate map entry for local vertex " + std::to_string(local));
        } else if (kw == "boundary") {
            if (saw_boundary) throw ParseError("duplicate boundary line");
            saw_boundary = true;
            std::int64_t v;
            while (words >> v) p.boundary.push_back(static_cast<int>(v));
        } else {
            throw ParseError("unknown directive '" + kw + "' in filling file");
        }
    }
    if (p.triangles.empty()) throw ParseError("filling has no triangles");
    if (!saw_boundary) throw ParseError("filling has no boundary line");
    return {std::move(p), std::move(f)};
}

inline void write_filling(std::ostream& out, const TriangulatedDisc& p, const SimplicialFillingMap& f) {
    for (const auto& t : p.triangles) out << "triangle " << t[0] << " " << t[1] << " " << t[2] << "\n";
    for (auto [local, global] : f.assignment) out << "map " << local << " " << global.id << "\n";
    out << "boundary";
    for (int v : p.boundary) out << " " << v;
    out << "\n";
}

}  // namespace isofill
