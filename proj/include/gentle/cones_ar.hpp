#pragma once

/*
 * Mapping cones by word surgery and the inverse translate by boundary
 * rotation.
 *
 * Cone surgery works on a word graph: one node per projective slot
 * carrying a vertex and a grade, one edge per differential entry
 * carrying a path and a scalar. The cone of f puts Y and X shifted by
 * one into a graph together with the entries of f, then eliminates
 * every invertible edge the way Gaussian elimination does; composite
 * entries that land in the ideal vanish, which is what disconnects the
 * glued word. Rewiring passes clean up branch nodes where one entry is
 * a multiple of a parallel one. What remains decomposes into open and
 * closed walks and is read back as graded strings and bands; the band
 * scalar is the orientation signed product of edge coefficients.
 *
 * Rotation sweeps one endpoint of an arc along its boundary face to the
 * next marked point. Every laminate end passed on the way either pops
 * the outermost crossing (same chord) or pushes a new crossing over
 * that chord. Retained crossings keep their grades; pushed ones get
 * grades from the step rule of the reconstructed letters. When nothing
 * is retained, the new crossing nearest the fixed end inherits the old
 * grade nearest the fixed end. The inverse translate rotates both ends
 * of an arc and fixes every band.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arcs.hpp"
#include "morphisms.hpp"
#include "ribbon.hpp"

namespace gentle {

// --- word graph ------------------------------------------------------------

struct WordGraph {
    struct Node {
        int vertex = 0;
        int grade = 0;
        bool alive = true;
    };
    struct Edge {
        int from = 0, to = 0;
        Path path;
        Rational coeff = Rational(1);
        bool alive = true;
    };
    std::vector<Node> nodes;
    std::vector<Edge> edges;

    int add_node(int vertex, int grade) {
        nodes.push_back({vertex, grade, true});
        return static_cast<int>(nodes.size()) - 1;
    }
    void add_edge(int from, int to, const Path& p, const Rational& c) {
        if (c == Rational(0)) return;
        for (Edge& e : edges)
            if (e.alive && e.from == from && e.to == to && e.path == p) {
                e.coeff += c;
                if (e.coeff == Rational(0)) e.alive = false;
                return;
            }
        edges.push_back({from, to, p, c, true});
    }
};

namespace detail {

// nodes and letter edges of an object, shifted; returns node per position
inline std::vector<int> append_object_graph(WordGraph& g, const Presentation& pres, const Object& o,
                                            int shift, const Rational& letter_sign) {
    std::vector<int> ids;
    if (std::holds_alternative<GradedString>(o)) {
        const auto& s = std::get<GradedString>(o);
        for (int i = 0; i <= static_cast<int>(s.size()); ++i)
            ids.push_back(g.add_node(s.walk_vertices[i], s.mu[i] - shift));
        for (size_t l = 0; l < s.size(); ++l) {
            const Letter& let = s.letters[l];
            int a = ids[l], b = ids[l + 1];
            if (let.inverse) g.add_edge(b, a, let.path, letter_sign);
            else g.add_edge(a, b, let.path, letter_sign);
        }
    } else {
        const auto& b = std::get<GradedBand>(o);
        if (b.m != 1) throw std::invalid_argument("word surgery needs band multiplicity one");
        int r = static_cast<int>(b.size());
        for (int i = 0; i < r; ++i) ids.push_back(g.add_node(b.walk_vertices[i], b.mu[i] - shift));
        for (int l = 0; l < r; ++l) {
            const Letter& let = b.letters[l];
            Rational c = letter_sign;
            if (l == r - 1) c = c * b.lambda; // scalar rides on the last letter
            int a = ids[l], bb = ids[(l + 1) % r];
            if (let.inverse) g.add_edge(bb, a, let.path, c);
            else g.add_edge(a, bb, let.path, c);
        }
    }
    return ids;
}

inline void eliminate_units(const Presentation& pres, WordGraph& g) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t ei = 0; ei < g.edges.size(); ++ei) {
            WordGraph::Edge e = g.edges[ei];
            if (!e.alive || !e.path.trivial()) continue;
            g.edges[ei].alive = false;
            std::vector<WordGraph::Edge> into_b, out_a;
            for (auto& f : g.edges) {
                if (!f.alive) continue;
                if (f.to == e.to) into_b.push_back(f);
                if (f.from == e.from) out_a.push_back(f);
            }
            for (auto& fi : into_b)
                for (auto& fo : out_a) {
                    auto comp = pres.compose(fi.path, fo.path);
                    if (!comp) continue;
                    g.add_edge(fi.from, fo.to, *comp, Rational(0) - fi.coeff * fo.coeff / e.coeff);
                }
            g.nodes[e.from].alive = false;
            g.nodes[e.to].alive = false;
            for (auto& f : g.edges)
                if (f.alive && (f.from == e.from || f.to == e.to || f.from == e.to || f.to == e.from))
                    f.alive = false;
            changed = true;
            break;
        }
    }
}

// clear branch nodes: when two parallel entries divide one another,
// a row or column operation removes the longer one
inline bool rewire_once(const Presentation& pres, WordGraph& g) {
    for (size_t i = 0; i < g.edges.size(); ++i) {
        if (!g.edges[i].alive) continue;
        for (size_t j = 0; j < g.edges.size(); ++j) {
            if (i == j || !g.edges[j].alive) continue;
            const auto& ei = g.edges[i];
            const auto& ej = g.edges[j];
            // same target, ei.path = w . ej.path with w nontrivial
            if (ei.to == ej.to && ei.path.arrows.size() > ej.path.arrows.size() &&
                std::equal(ej.path.arrows.rbegin(), ej.path.arrows.rend(), ei.path.arrows.rbegin())) {
                std::vector<int> w(ei.path.arrows.begin(),
                                   ei.path.arrows.end() - static_cast<long>(ej.path.arrows.size()));
                Path wp = pres.path_of(w);
                Rational f = ei.coeff / ej.coeff;
                int ei_from = ei.from, ej_from = ej.from;
                size_t before = g.edges.size();
                g.edges[i].alive = false;
                for (size_t k2 = 0; k2 < before; ++k2) {
                    // add_edge may reallocate, so re-index and copy fields
                    WordGraph::Edge ek = g.edges[k2];
                    if (!ek.alive || k2 == j || ek.from != ej_from) continue;
                    auto comp = pres.compose(wp, ek.path);
                    if (!comp) continue;
                    g.add_edge(ei_from, ek.to, *comp, Rational(0) - f * ek.coeff);
                }
                return true;
            }
            // same source, ei.path = ej.path . w with w nontrivial
            if (ei.from == ej.from && ei.path.arrows.size() > ej.path.arrows.size() &&
                std::equal(ej.path.arrows.begin(), ej.path.arrows.end(), ei.path.arrows.begin())) {
                std::vector<int> w(ei.path.arrows.begin() + static_cast<long>(ej.path.arrows.size()),
                                   ei.path.arrows.end());
                Path wp = pres.path_of(w);
                Rational f = ei.coeff / ej.coeff;
                int ei_to = ei.to, ej_to = ej.to;
                size_t before = g.edges.size();
                g.edges[i].alive = false;
                for (size_t k2 = 0; k2 < before; ++k2) {
                    WordGraph::Edge ek = g.edges[k2];
                    if (!ek.alive || k2 == j || ek.to != ej_to) continue;
                    auto comp = pres.compose(ek.path, wp);
                    if (!comp) continue;
                    g.add_edge(ek.from, ei_to, *comp, Rational(0) - f * ek.coeff);
                }
                return true;
            }
        }
    }
    return false;
}

} // namespace detail

struct ReadbackResult {
    std::vector<Object> summands;
    bool ok = true;
    std::string reason;
};

// decompose a word graph into graded strings and bands
inline ReadbackResult read_objects(const Presentation& pres, WordGraph g) {
    ReadbackResult res;
    detail::eliminate_units(pres, g);
    for (int pass = 0; pass < 200; ++pass) {
        std::map<int, int> degree;
        for (auto& e : g.edges)
            if (e.alive) {
                ++degree[e.from];
                ++degree[e.to];
            }
        bool branchy = false;
        for (auto& [n, d] : degree)
            if (d > 2) branchy = true;
        if (!branchy) break;
        if (!detail::rewire_once(pres, g)) {
            res.ok = false;
            res.reason = "branch node resists rewiring";
            return res;
        }
        detail::eliminate_units(pres, g);
    }
    std::map<int, std::vector<int>> incident; // node -> edge ids
    for (size_t i = 0; i < g.edges.size(); ++i)
        if (g.edges[i].alive) {
            incident[g.edges[i].from].push_back(static_cast<int>(i));
            incident[g.edges[i].to].push_back(static_cast<int>(i));
        }
    for (auto& [n, ids] : incident)
        if (ids.size() > 2) {
            res.ok = false;
            res.reason = "branch node survived rewiring";
            return res;
        }
    std::set<int> used_nodes;
    std::set<int> used_edges;
    auto walk_from = [&](int start) {
        // follow the component; returns ordered (node, edge) chain
        std::vector<int> node_seq{start};
        std::vector<int> edge_seq;
        int cur = start;
        int prev_edge = -1;
        while (true) {
            int next_edge = -1;
            for (int eid : incident[cur])
                if (eid != prev_edge && !used_edges.count(eid)) next_edge = eid;
            if (next_edge < 0) break;
            used_edges.insert(next_edge);
            const auto& e = g.edges[next_edge];
            cur = e.from == cur ? e.to : e.from;
            edge_seq.push_back(next_edge);
            if (cur == start) break; // closed walk
            node_seq.push_back(cur);
            prev_edge = next_edge;
        }
        return std::make_pair(node_seq, edge_seq);
    };
    // open components first: start at nodes of incident degree <= 1
    for (int round = 0; round < 2; ++round)
        for (size_t n = 0; n < g.nodes.size(); ++n) {
            if (!g.nodes[n].alive || used_nodes.count(static_cast<int>(n))) continue;
            size_t deg = incident.count(static_cast<int>(n)) ? incident[static_cast<int>(n)].size() : 0;
            if (round == 0 && deg > 1) continue;
            auto [node_seq, edge_seq] = walk_from(static_cast<int>(n));
            bool closed = !edge_seq.empty() && node_seq.size() == edge_seq.size();
            for (int id : node_seq) used_nodes.insert(id);
            std::vector<Letter> letters;
            Rational lam(1);
            for (size_t k = 0; k < edge_seq.size(); ++k) {
                const auto& e = g.edges[edge_seq[k]];
                int from_node = node_seq[k];
                Letter let;
                let.path = e.path;
                if (e.from == from_node) {
                    let.inverse = false;
                    lam = lam * e.coeff;
                } else {
                    let.inverse = true;
                    lam = lam / e.coeff;
                }
                letters.push_back(let);
            }
            try {
                if (!closed) {
                    GradedString s;
                    if (letters.empty()) {
                        s = make_trivial_string(pres, g.nodes[n].vertex, g.nodes[n].grade);
                    } else {
                        s = make_string(pres, letters, g.nodes[node_seq.front()].grade);
                        if (s.walk_vertices.front() != g.nodes[node_seq.front()].vertex)
                            throw std::logic_error("readback walk mismatch");
                    }
                    res.summands.push_back(canonical_string(pres, s));
                } else {
                    Rational stored = letters.back().inverse ? Rational(1) / lam : lam;
                    GradedBand b = make_band(pres, letters, g.nodes[node_seq.front()].grade, stored, 1);
                    res.summands.push_back(canonical_band(pres, b));
                }
            } catch (const std::exception& ex) {
                res.ok = false;
                res.reason = std::string("component is not a valid word: ") + ex.what();
                return res;
            }
        }
    return res;
}

// --- cone prediction --------------------------------------------------------

struct PredictedCone {
    std::vector<Object> summands;
    bool ok = true;
    bool by_fallback = false; // the map itself came from the oracle completion
    std::string reason;
};

inline PredictedCone predict_cone(const Presentation& pres, const Object& X, const Object& Y,
                                  const RealizedMorphism<Rational>& f) {
    PredictedCone pc;
    pc.by_fallback = f.by_fallback;
    WordGraph g;
    Complex<Rational> cx = object_complex<Rational>(pres, X);
    Complex<Rational> cy = object_complex<Rational>(pres, Y);
    auto yid = detail::append_object_graph(g, pres, Y, 0, Rational(1));
    auto xid = detail::append_object_graph(g, pres, X, 1, Rational(-1));
    // entries of f, addressed through the complex labels (slot -> position)
    auto xslots = detail::position_slots(cx);
    auto yslots = detail::position_slots(cy);
    std::map<std::pair<int, int>, int> xnode, ynode; // (deg, slot) -> node
    for (auto& [pos, ds] : xslots) xnode[ds] = xid[pos];
    for (auto& [pos, ds] : yslots) ynode[ds] = yid[pos];
    for (int deg = cx.lo; deg <= cx.hi(); ++deg) {
        const AlgMat<Rational>* comp = f.map.at(deg);
        if (!comp) continue;
        for (int a = 0; a < comp->rows; ++a)
            for (int b = 0; b < comp->cols; ++b)
                for (auto& [path, c] : comp->at(a, b).terms) {
                    if (c == Rational(0)) continue;
                    g.add_edge(xnode.at({deg, a}), ynode.at({deg, b}), path, c);
                }
    }
    ReadbackResult rb = read_objects(pres, g);
    pc.ok = rb.ok;
    pc.reason = rb.reason;
    pc.summands = rb.summands;
    return pc;
}

// read the summands of an already minimal complex (fallback path)
inline ReadbackResult read_minimal_complex(const Presentation& pres, const Complex<Rational>& c) {
    WordGraph g;
    std::map<std::pair<int, int>, int> node;
    for (int deg = c.lo; deg <= c.hi(); ++deg) {
        const auto* obj = c.objects_at(deg);
        if (!obj) continue;
        for (size_t k = 0; k < obj->size(); ++k)
            node[{deg, static_cast<int>(k)}] = g.add_node((*obj)[k], deg);
    }
    for (int deg = c.lo; deg < c.hi(); ++deg) {
        int i = deg - c.lo;
        if (i >= static_cast<int>(c.d.size())) continue;
        const AlgMat<Rational>& m = c.d[i];
        for (int a = 0; a < m.rows; ++a)
            for (int b = 0; b < m.cols; ++b)
                for (auto& [path, coeff] : m.at(a, b).terms) {
                    if (coeff == Rational(0)) continue;
                    if (path.trivial()) throw std::logic_error("complex is not minimal");
                    g.add_edge(node.at({deg, a}), node.at({deg + 1, b}), path, coeff);
                }
    }
    return read_objects(pres, g);
}

template <typename K>
inline Complex<K> direct_sum_objects(const Presentation& pres, const std::vector<Object>& os) {
    Complex<K> c;
    bool first = true;
    for (const Object& o : os) {
        Complex<K> oc = object_complex<K>(pres, o);
        c = first ? oc : direct_sum(pres, c, oc);
        first = false;
    }
    return c;
}

// surgery prediction checked against the exact cone
struct ConeCheck {
    PredictedCone predicted;
    bool matches = false;
    bool homology_matches = false;
};

inline ConeCheck checked_cone(const Presentation& pres, const Object& X, const Object& Y,
                              const RealizedMorphism<Rational>& f) {
    ConeCheck cc;
    cc.predicted = predict_cone(pres, X, Y, f);
    Complex<Rational> cx = object_complex<Rational>(pres, X);
    Complex<Rational> cy = object_complex<Rational>(pres, Y);
    Complex<Rational> raw = mapping_cone_oracle(pres, cx, cy, f.map);
    if (!cc.predicted.ok) return cc;
    Complex<Rational> built = direct_sum_objects<Rational>(pres, cc.predicted.summands);
    cc.matches = is_isomorphic(pres, built, raw);
    cc.homology_matches = homology_dims(pres, built) == homology_dims(pres, raw);
    return cc;
}

// --- chain map composition (needed by the factorization tests) --------------

template <typename K>
inline ChainMap<K> compose_chain_maps(const Presentation& pres, const Complex<K>& x, const Complex<K>& y,
                                      const Complex<K>& z, const ChainMap<K>& f, const ChainMap<K>& g) {
    ChainMap<K> h;
    h.lo = x.lo;
    for (int deg = x.lo; deg <= x.hi(); ++deg) {
        AlgMat<K> m(x.size_at(deg), z.size_at(deg));
        const AlgMat<K>* a = f.at(deg);
        const AlgMat<K>* b = g.at(deg);
        if (a && b && a->cols == b->rows && a->cols == y.size_at(deg)) m = alg_mat_mul(pres, *a, *b);
        h.comps.push_back(std::move(m));
    }
    return h;
}

// --- boundary rotation -------------------------------------------------------

enum class ArcEnd { start, finish };

struct RotationStep {
    std::optional<GradedString> result; // nullopt: the rotated arc vanishes
    std::vector<int> swept_vertices;
    int pops = 0, pushes = 0;
};

namespace detail {

// the boundary location of the marked point anchoring one arc end
inline ItemRef end_location(const SurfaceModel& m, const GradedArc& arc, ArcEnd which) {
    HalfEdge h = which == ArcEnd::start ? arc.crossings.front().approach : arc.crossings.back().depart;
    return m.marked_location.at(h.mp);
}

} // namespace detail

struct ArcRotation {
    std::optional<GradedArc> arc; // nullopt: the rotated arc vanishes
    std::vector<int> swept_vertices;
    int pops = 0, pushes = 0;
};

// rotate one endpoint of an arc to the next marked point on its boundary
inline ArcRotation rotate_arc(const SurfaceModel& m, const GradedArc& arc, ArcEnd which) {
    ArcRotation step;
    ItemRef at = detail::end_location(m, arc, which);
    // collect laminate ends up to the next marked corner
    std::vector<std::pair<int, HalfEdge>> swept; // (vertex, half edge of the chord end)
    ItemRef cur = m.next(at);
    for (int guard = 0; guard < 4 * static_cast<int>(m.face_size(at.face)) + 4; ++guard) {
        const BoundaryItem& it = m.item(cur);
        if (it.kind == BoundaryItem::Kind::marked_corner) break;
        if (it.kind == BoundaryItem::Kind::laminate_end)
            swept.push_back({it.vertex, HalfEdge{it.mp, it.k}});
        cur = m.next(cur);
    }
    std::vector<ArcCrossing> cr = arc.crossings;
    std::set<int> swept_seen;
    std::set<size_t> pushed_idx;
    for (auto& [v, he] : swept) {
        step.swept_vertices.push_back(v);
        if (!swept_seen.insert(v).second)
            throw std::runtime_error("rotation unsupported: boundary face passes the same chord twice");
        bool outermost_matches = false;
        if (!cr.empty()) {
            const ArcCrossing& outer = which == ArcEnd::start ? cr.front() : cr.back();
            outermost_matches = outer.vertex == v;
        }
        if (outermost_matches) {
            if (which == ArcEnd::start) cr.erase(cr.begin());
            else cr.pop_back();
            ++step.pops;
            std::set<size_t> shifted;
            for (size_t idx : pushed_idx) {
                if (which == ArcEnd::start) {
                    if (idx > 0) shifted.insert(idx - 1);
                } else if (idx < cr.size()) {
                    shifted.insert(idx);
                }
            }
            pushed_idx = shifted;
        } else {
            ArcCrossing nc;
            nc.vertex = v;
            HalfEdge other = m.vertex_passages.at(v)[0] == he ? m.vertex_passages.at(v)[1]
                                                              : m.vertex_passages.at(v)[0];
            if (which == ArcEnd::start) {
                nc.approach = other; // side facing the new endpoint
                nc.depart = he;
                cr.insert(cr.begin(), nc);
                std::set<size_t> shifted;
                for (size_t idx : pushed_idx) shifted.insert(idx + 1);
                pushed_idx = shifted;
                pushed_idx.insert(0);
            } else {
                nc.approach = he;
                nc.depart = other;
                cr.push_back(nc);
                pushed_idx.insert(cr.size() - 1);
            }
            ++step.pushes;
        }
    }
    if (cr.empty()) return step; // the arc slides off the surface
    // grading transport: keep retained grades, then walk letters outward
    GradedArc na;
    na.crossings = cr;
    // find a retained crossing to anchor grades
    int anchor = -1;
    for (size_t i = 0; i < cr.size(); ++i)
        if (!pushed_idx.count(i)) {
            anchor = static_cast<int>(i);
            break;
        }
    if (anchor < 0) {
        // nothing retained: the crossing nearest the fixed end inherits
        // the old grade nearest the fixed end
        anchor = which == ArcEnd::start ? static_cast<int>(cr.size()) - 1 : 0;
        int old_grade = which == ArcEnd::start ? arc.crossings.back().grading
                                               : arc.crossings.front().grading;
        na.crossings[anchor].grading = old_grade;
    }
    // rebuild letters between consecutive crossings, then propagate
    std::vector<Letter> letters;
    for (size_t i = 0; i + 1 < cr.size(); ++i)
        letters.push_back(letter_between(m, cr[i].depart, cr[i + 1].approach));
    for (int i = anchor + 1; i < static_cast<int>(cr.size()); ++i)
        na.crossings[i].grading = na.crossings[i - 1].grading + letters[i - 1].grading_step();
    for (int i = anchor - 1; i >= 0; --i)
        na.crossings[i].grading = na.crossings[i + 1].grading - letters[i].grading_step();
    step.arc = na;
    return step;
}

// rotate one endpoint of a string to the next marked point on its boundary
inline RotationStep rotate_string(const Presentation& pres, const SurfaceModel& m, const GradedString& s,
                                  ArcEnd which) {
    (void)pres;
    RotationStep step;
    ArcRotation r = rotate_arc(m, arc_from_string(m, s), which);
    step.swept_vertices = r.swept_vertices;
    step.pops = r.pops;
    step.pushes = r.pushes;
    if (r.arc) step.result = string_from_arc(m, *r.arc);
    return step;
}

// inverse translate: rotate both endpoints; bands are fixed. Working at arc
// level keeps the endpoints apart; a string round trip would lose the
// orientation when the intermediate word is trivial. One order can pass
// through a vanishing arc while the other stays visible, so the second
// order is tried before giving up.
inline std::optional<Object> inverse_translate(const Presentation& pres, const SurfaceModel& m,
                                               const Object& o) {
    if (std::holds_alternative<GradedBand>(o)) return o;
    const GradedString& s = std::get<GradedString>(o);
    GradedArc arc = arc_from_string(m, s);
    for (auto [e1, e2] : {std::pair(ArcEnd::start, ArcEnd::finish), std::pair(ArcEnd::finish, ArcEnd::start)}) {
        ArcRotation first = rotate_arc(m, arc, e1);
        if (!first.arc) continue;
        ArcRotation second = rotate_arc(m, *first.arc, e2);
        if (!second.arc) continue;
        return Object(canonical_string(pres, string_from_arc(m, *second.arc)));
    }
    return std::nullopt;
}

// middle term of the almost split triangle out of a string
inline std::vector<Object> ar_middle(const Presentation& pres, const SurfaceModel& m,
                                     const GradedString& s) {
    std::vector<Object> es;
    for (ArcEnd e : {ArcEnd::start, ArcEnd::finish}) {
        RotationStep st = rotate_string(pres, m, s, e);
        if (st.result) es.push_back(canonical_string(pres, *st.result));
    }
    return es;
}

// --- global dimension --------------------------------------------------------

// projective dimension of each simple follows the forbidden thread out
// of its vertex; a relation cycle makes it infinite
inline std::optional<int> global_dimension(const Presentation& p) {
    if (!forbidden_threads(p).cycles.empty()) return std::nullopt;
    int best = 0;
    for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v) {
        int longest = 0;
        for (int a = 0; a < static_cast<int>(p.arrows.size()); ++a) {
            if (p.arrows[a].src != v) continue;
            int len = 1;
            int cur = a;
            while (auto nxt = p.rel_succ(cur)) {
                ++len;
                cur = *nxt;
            }
            longest = std::max(longest, len);
        }
        best = std::max(best, longest);
    }
    return best;
}

} // namespace gentle
