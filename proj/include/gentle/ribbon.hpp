#pragma once

/*
 * Surface model of a gentle presentation.
 *
 * Ribbon graph: one ribbon vertex per maximal path, one edge per quiver
 * vertex (every quiver vertex is passed exactly twice by the maximal
 * paths). Faces are walked with the fan rotation, emitting an item cycle
 * per boundary component: corners between consecutive fan positions
 * (marked exactly at the wrap-around corner of each ribbon vertex) and
 * one laminate end per traversed edge.
 *
 * Per face with b marked corners and l laminate ends the invariant pair
 * is (b, l - b); unmarked faces carry full relation cycles.
 */

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "algebra.hpp"

namespace gentle {

struct HalfEdge {
    int mp = -1; // index into maximal_paths
    int k = -1;  // passage index within that maximal path

    friend bool operator==(const HalfEdge& a, const HalfEdge& b) { return a.mp == b.mp && a.k == b.k; }
    friend bool operator<(const HalfEdge& a, const HalfEdge& b) {
        return a.mp != b.mp ? a.mp < b.mp : a.k < b.k;
    }
};

struct BoundaryItem {
    enum class Kind { marked_corner, unmarked_corner, laminate_end };
    Kind kind = Kind::unmarked_corner;
    int mp = -1;     // corner: ribbon vertex; laminate end: ribbon vertex crossed through
    int k = -1;      // laminate end: passage index of the crossed half-edge
    int vertex = -1; // laminate end: quiver vertex of the laminate

    friend bool operator==(const BoundaryItem& a, const BoundaryItem& b) {
        return a.kind == b.kind && a.mp == b.mp && a.k == b.k && a.vertex == b.vertex;
    }
    friend bool operator<(const BoundaryItem& a, const BoundaryItem& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        if (a.mp != b.mp) return a.mp < b.mp;
        if (a.k != b.k) return a.k < b.k;
        return a.vertex < b.vertex;
    }
};

struct Face {
    std::vector<BoundaryItem> items;
    int marked = 0;        // b
    int laminate_ends = 0; // l
    std::optional<int> unmarked_cycle_len;
};

struct ItemRef {
    int face = -1;
    int pos = -1;
};

struct SurfaceModel {
    Presentation presentation;
    std::vector<MaximalPath> maximal;
    std::vector<Face> faces;
    int genus = 0;
    int chi = 0;
    int ribbon_vertices = 0;
    int ribbon_edges = 0;
    int punctures = 0; // cyclic ribbon vertices, present only for locally gentle input
    bool degenerate_point = false;

    std::vector<ItemRef> marked_location;                 // per maximal path
    std::vector<std::vector<ItemRef>> laminate_locations; // per quiver vertex, its chord ends
    std::vector<std::vector<HalfEdge>> vertex_passages;   // per quiver vertex, both passages

    const BoundaryItem& item(const ItemRef& r) const { return faces[r.face].items[r.pos]; }
    int face_size(int f) const { return static_cast<int>(faces[f].items.size()); }
    ItemRef next(const ItemRef& r) const { return ItemRef{r.face, (r.pos + 1) % face_size(r.face)}; }
    ItemRef prev(const ItemRef& r) const {
        return ItemRef{r.face, (r.pos + face_size(r.face) - 1) % face_size(r.face)};
    }
};

namespace detail {

inline std::vector<std::vector<HalfEdge>> collect_passages(const Presentation& p,
                                                           const std::vector<MaximalPath>& mps) {
    std::vector<std::vector<HalfEdge>> per_vertex(p.vertices.size());
    for (size_t i = 0; i < mps.size(); ++i)
        for (size_t k = 0; k < mps[i].vertex_passages.size(); ++k)
            per_vertex[mps[i].vertex_passages[k]].push_back(HalfEdge{static_cast<int>(i), static_cast<int>(k)});
    return per_vertex;
}

} // namespace detail

inline SurfaceModel surface_model(const Presentation& p) {
    ValidationResult vr = validate_gentle(p, false);
    if (!vr.ok) throw std::invalid_argument("surface_model: presentation is not gentle: " +
                                            (vr.errors.empty() ? std::string("?") : vr.errors.front()));
    SurfaceModel m;
    m.presentation = p;
    m.maximal = maximal_paths(p);
    m.vertex_passages = detail::collect_passages(p, m.maximal);

    if (vr.degenerate_point) {
        m.degenerate_point = true;
        Face f;
        f.items.push_back(BoundaryItem{BoundaryItem::Kind::marked_corner, 0, -1, -1});
        f.items.push_back(BoundaryItem{BoundaryItem::Kind::laminate_end, 0, 0, 0});
        f.marked = 1;
        f.laminate_ends = 1;
        m.faces.push_back(f);
        m.genus = 0;
        m.chi = 2 - 2 * m.genus;
        m.ribbon_vertices = 1;
        m.ribbon_edges = 1;
        m.marked_location = {ItemRef{0, 0}};
        m.laminate_locations = {{ItemRef{0, 1}}};
        return m;
    }

    for (size_t v = 0; v < p.vertices.size(); ++v)
        if (m.vertex_passages[v].size() != 2)
            throw std::logic_error("vertex '" + p.vertices[v] + "' is not passed exactly twice by maximal paths");

    auto degree = [&](int mp) { return static_cast<int>(m.maximal[mp].vertex_passages.size()); };
    auto rho = [&](HalfEdge h) { return HalfEdge{h.mp, (h.k + 1) % degree(h.mp)}; };
    auto iota = [&](HalfEdge h) {
        int v = m.maximal[h.mp].vertex_passages[h.k];
        const auto& pair = m.vertex_passages[v];
        return pair[0] == h ? pair[1] : pair[0];
    };

    m.marked_location.assign(m.maximal.size(), ItemRef{});
    m.laminate_locations.assign(p.vertices.size(), {});

    std::map<HalfEdge, bool> arrived;
    for (size_t i = 0; i < m.maximal.size(); ++i)
        for (int k = 0; k < degree(static_cast<int>(i)); ++k)
            arrived[HalfEdge{static_cast<int>(i), k}] = false;

    for (auto& [start, was] : arrived) {
        if (was) continue;
        Face f;
        HalfEdge h = start;
        do {
            arrived[h] = true;
            // a cyclic fan has no wrap corner and carries no marked point
            bool last = !m.maximal[h.mp].cyclic && h.k == degree(h.mp) - 1;
            f.items.push_back(BoundaryItem{last ? BoundaryItem::Kind::marked_corner
                                                : BoundaryItem::Kind::unmarked_corner,
                                           h.mp, -1, -1});
            HalfEdge out = rho(h);
            int v = m.maximal[out.mp].vertex_passages[out.k];
            f.items.push_back(BoundaryItem{BoundaryItem::Kind::laminate_end, out.mp, out.k, v});
            h = iota(out);
        } while (!(h == start));

        // canonical rotation of the cycle
        size_t best = 0;
        for (size_t i = 1; i < f.items.size(); ++i)
            if (f.items[i] < f.items[best]) best = i;
        std::rotate(f.items.begin(), f.items.begin() + static_cast<long>(best), f.items.end());

        for (const BoundaryItem& it : f.items) {
            if (it.kind == BoundaryItem::Kind::marked_corner) ++f.marked;
            if (it.kind == BoundaryItem::Kind::laminate_end) ++f.laminate_ends;
        }
        if (f.marked == 0) f.unmarked_cycle_len = f.laminate_ends;
        m.faces.push_back(std::move(f));
    }

    for (size_t fi = 0; fi < m.faces.size(); ++fi)
        for (size_t pos = 0; pos < m.faces[fi].items.size(); ++pos) {
            const BoundaryItem& it = m.faces[fi].items[pos];
            ItemRef ref{static_cast<int>(fi), static_cast<int>(pos)};
            if (it.kind == BoundaryItem::Kind::marked_corner) m.marked_location[it.mp] = ref;
            if (it.kind == BoundaryItem::Kind::laminate_end) m.laminate_locations[it.vertex].push_back(ref);
        }

    m.ribbon_vertices = static_cast<int>(m.maximal.size());
    m.ribbon_edges = static_cast<int>(p.vertices.size());
    for (const MaximalPath& mp : m.maximal)
        if (mp.cyclic) ++m.punctures;
    int F = static_cast<int>(m.faces.size());
    int euler = m.ribbon_vertices - m.ribbon_edges + F;
    if ((2 - euler) % 2 != 0) throw std::logic_error("odd genus numerator");
    m.genus = (2 - euler) / 2;
    m.chi = euler;

    // quiver first betti number must match the surface count; punctures
    // count as boundary components alongside the traced faces
    int b1 = static_cast<int>(p.arrows.size()) - static_cast<int>(p.vertices.size()) + 1;
    if (b1 != 2 * m.genus + (F + m.punctures) - 1) throw std::logic_error("betti/genus mismatch in surface model");
    return m;
}

// Invariant pairs read off the faces: (marked corners, laminate ends - marked corners).
inline std::vector<std::pair<int, int>> surface_ag_pairs(const SurfaceModel& m) {
    std::vector<std::pair<int, int>> out;
    for (const Face& f : m.faces) out.emplace_back(f.marked, f.laminate_ends - f.marked);
    std::sort(out.begin(), out.end());
    return out;
}

// Rebuild a presentation from the ribbon data: arrows are consecutive fan
// positions of a ribbon vertex, relations are in/out pairs meeting at an
// edge through different passages.
inline Presentation recover_algebra(const SurfaceModel& m) {
    std::string text;
    for (const std::string& v : m.presentation.vertices) text += "vertex " + v + "\n";
    struct Slot {
        int in_arrow = -1, out_arrow = -1;
    };
    // per half-edge: which recovered arrow enters / leaves that passage
    std::map<std::pair<int, int>, Slot> slot;
    int counter = 0;
    std::vector<std::tuple<std::string, int, int>> arrows;
    for (size_t i = 0; i < m.maximal.size(); ++i) {
        const auto& vp = m.maximal[i].vertex_passages;
        size_t pairs = m.maximal[i].cyclic ? vp.size() : vp.size() - 1;
        for (size_t k = 0; k < pairs; ++k) {
            size_t k2 = (k + 1) % vp.size();
            std::string name = "x" + std::to_string(counter++);
            arrows.emplace_back(name, vp[k], vp[k2]);
            slot[{static_cast<int>(i), static_cast<int>(k)}].out_arrow = static_cast<int>(arrows.size()) - 1;
            slot[{static_cast<int>(i), static_cast<int>(k2)}].in_arrow = static_cast<int>(arrows.size()) - 1;
        }
    }
    for (auto& [name, s, t] : arrows)
        text += "arrow " + name + " " + m.presentation.vertices[s] + " " + m.presentation.vertices[t] + "\n";
    for (size_t v = 0; v < m.vertex_passages.size(); ++v) {
        const auto& pair = m.vertex_passages[v];
        if (pair.size() != 2) continue;
        for (int side = 0; side < 2; ++side) {
            const HalfEdge& hin = pair[side];
            const HalfEdge& hout = pair[1 - side];
            int a = slot[{hin.mp, hin.k}].in_arrow;
            int b = slot[{hout.mp, hout.k}].out_arrow;
            if (a >= 0 && b >= 0)
                text += "rel " + std::get<0>(arrows[a]) + " " + std::get<0>(arrows[b]) + "\n";
        }
    }
    return parse_presentation(text);
}

inline bool presentations_isomorphic(const Presentation& a, const Presentation& b) {
    if (a.vertices.size() != b.vertices.size()) return false;
    if (a.arrows.size() != b.arrows.size()) return false;
    if (a.relations.size() != b.relations.size()) return false;
    size_t nv = a.vertices.size(), na = a.arrows.size();

    std::vector<int> vmap(nv, -1), used(nv, 0);
    // backtrack over vertex bijections, then match arrows greedily with backtracking
    std::vector<int> amap(na, -1), aused(na, 0);

    std::function<bool(size_t)> match_arrows = [&](size_t i) -> bool {
        if (i == na) {
            for (auto& [x, y] : a.relations) {
                if (!b.is_relation(amap[x], amap[y])) return false;
            }
            return true;
        }
        for (size_t j = 0; j < na; ++j) {
            if (aused[j]) continue;
            if (b.arrows[j].src != vmap[a.arrows[i].src]) continue;
            if (b.arrows[j].tgt != vmap[a.arrows[i].tgt]) continue;
            amap[i] = static_cast<int>(j);
            aused[j] = 1;
            if (match_arrows(i + 1)) return true;
            aused[j] = 0;
        }
        return false;
    };
    std::function<bool(size_t)> assign = [&](size_t v) -> bool {
        if (v == nv) return match_arrows(0);
        for (size_t w = 0; w < nv; ++w) {
            if (used[w]) continue;
            if (a.arrows_in(static_cast<int>(v)).size() != b.arrows_in(static_cast<int>(w)).size()) continue;
            if (a.arrows_out(static_cast<int>(v)).size() != b.arrows_out(static_cast<int>(w)).size()) continue;
            vmap[v] = static_cast<int>(w);
            used[w] = 1;
            if (assign(v + 1)) return true;
            used[w] = 0;
        }
        return false;
    };
    return assign(0);
}

// Quadratic dual: reversed arrows, with a dual relation for every
// composable pair lying outside the ideal.
inline Presentation koszul_dual(const Presentation& p) {
    std::string text;
    for (const std::string& v : p.vertices) text += "vertex " + v + "\n";
    auto dual_name = [&](int a) { return p.arrows[a].name + "s"; };
    for (size_t a = 0; a < p.arrows.size(); ++a)
        text += "arrow " + dual_name(static_cast<int>(a)) + " " + p.vertices[p.arrows[a].tgt] + " " +
                p.vertices[p.arrows[a].src] + "\n";
    for (size_t x = 0; x < p.arrows.size(); ++x)
        for (size_t y = 0; y < p.arrows.size(); ++y)
            if (p.arrows[x].tgt == p.arrows[y].src && !p.is_relation(static_cast<int>(x), static_cast<int>(y)))
                text += "rel " + dual_name(static_cast<int>(y)) + " " + dual_name(static_cast<int>(x)) + "\n";
    return parse_presentation(text);
}

} // namespace gentle
