#pragma once

/*
 * JSON and DOT views of the model, for the command line tool.
 */

#include <nlohmann/json.hpp>
#include <string>

#include "ag.hpp"
#include "algebra.hpp"
#include "morphisms.hpp"
#include "ribbon.hpp"

namespace gentle {

inline nlohmann::json presentation_json(const Presentation& p) {
    nlohmann::json j;
    j["vertices"] = p.vertices;
    j["arrows"] = nlohmann::json::array();
    for (const Arrow& a : p.arrows)
        j["arrows"].push_back({{"name", a.name}, {"src", p.vertices[a.src]}, {"tgt", p.vertices[a.tgt]}});
    j["relations"] = nlohmann::json::array();
    for (auto& [x, y] : p.relations) j["relations"].push_back({p.arrows[x].name, p.arrows[y].name});
    return j;
}

// round trips through parse_presentation
inline std::string presentation_text(const Presentation& p) {
    std::string out;
    for (const std::string& v : p.vertices) out += "vertex " + v + "\n";
    for (const Arrow& a : p.arrows)
        out += "arrow " + a.name + " " + p.vertices[a.src] + " " + p.vertices[a.tgt] + "\n";
    for (auto& [x, y] : p.relations) out += "rel " + p.arrows[x].name + " " + p.arrows[y].name + "\n";
    return out;
}

inline nlohmann::json surface_json(const Presentation& p, const SurfaceModel& m) {
    nlohmann::json j;
    j["genus"] = m.genus;
    j["chi"] = m.chi;
    j["ribbon_vertices"] = m.ribbon_vertices;
    j["ribbon_edges"] = m.ribbon_edges;
    j["marked_points"] = nlohmann::json::array();
    j["punctures"] = nlohmann::json::array();
    for (const MaximalPath& mp : m.maximal)
        (mp.cyclic ? j["punctures"] : j["marked_points"]).push_back(p.path_name(mp.path));
    j["degenerate_point"] = m.degenerate_point;
    j["faces"] = nlohmann::json::array();
    for (const Face& f : m.faces) {
        nlohmann::json fj;
        fj["marked"] = f.marked;
        fj["laminate_ends"] = f.laminate_ends;
        if (f.unmarked_cycle_len) fj["unmarked_cycle_len"] = *f.unmarked_cycle_len;
        nlohmann::json cyc = nlohmann::json::array();
        for (const BoundaryItem& it : f.items) {
            switch (it.kind) {
            case BoundaryItem::Kind::marked_corner:
                cyc.push_back("M(" + p.path_name(m.maximal[it.mp].path) + ")");
                break;
            case BoundaryItem::Kind::unmarked_corner:
                cyc.push_back("corner(" + p.path_name(m.maximal[it.mp].path) + ")");
                break;
            case BoundaryItem::Kind::laminate_end:
                cyc.push_back("L(" + p.vertices[it.vertex] + ")");
                break;
            }
        }
        fj["cycle"] = cyc;
        j["faces"].push_back(fj);
    }
    return j;
}

// ribbon graph in graphviz form: nodes are marked points, edges are the
// chords of the dual lamination labelled by their quiver vertex
inline std::string surface_dot(const Presentation& p, const SurfaceModel& m) {
    std::string out = "graph ribbon {\n";
    for (const MaximalPath& mp : m.maximal) out += "  \"M(" + p.path_name(mp.path) + ")\";\n";
    for (size_t v = 0; v < p.vertices.size(); ++v) {
        const auto& pass = m.vertex_passages[v];
        out += "  \"M(" + p.path_name(m.maximal[pass[0].mp].path) + ")\" -- \"M(" +
               p.path_name(m.maximal[pass[1].mp].path) + ")\" [label=\"" + p.vertices[v] + "\"];\n";
    }
    out += "}\n";
    return out;
}

inline nlohmann::json ag_json(const std::vector<std::pair<int, int>>& pairs) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& [k, l] : pairs) j.push_back({k, l});
    return j;
}

inline nlohmann::json morphism_json(const Presentation& p, const Object& from, const Object& to,
                                    const MorphismDesc& d) {
    nlohmann::json j;
    switch (d.kind) {
    case MorphismDesc::Kind::graph: j["kind"] = "graph"; break;
    case MorphismDesc::Kind::quasi: j["kind"] = "quasi"; break;
    case MorphismDesc::Kind::single: j["kind"] = "single"; break;
    case MorphismDesc::Kind::double_entry: j["kind"] = "double"; break;
    }
    j["from"] = object_text(p, from);
    j["to"] = object_text(p, to);
    j["full_cyclic"] = d.full_cyclic;
    nlohmann::json sup = nlohmann::json::array();
    for (auto& [i, jj, path] : d.support) {
        nlohmann::json e;
        e["i"] = i;
        e["j"] = jj;
        e["path"] = path.trivial() ? "e@" + p.vertices[path.src] : p.path_name(path);
        sup.push_back(e);
    }
    j["support"] = sup;
    return j;
}

inline nlohmann::json summands_json(const Presentation& p, const std::vector<Object>& objs) {
    nlohmann::json j = nlohmann::json::array();
    for (const Object& o : objs) j.push_back(object_text(p, o));
    return j;
}

inline std::string quiver_dot(const Presentation& p) {
    std::string out = "digraph quiver {\n";
    for (const std::string& v : p.vertices) out += "  \"" + v + "\";\n";
    for (const Arrow& a : p.arrows)
        out += "  \"" + p.vertices[a.src] + "\" -> \"" + p.vertices[a.tgt] + "\" [label=\"" + a.name + "\"];\n";
    out += "}\n";
    return out;
}

} // namespace gentle
