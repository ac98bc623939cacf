#pragma once

/*
 * Gentle presentations: parsing, validation, maximal paths, forbidden
 * threads, path bases.
 *
 * Composition is written left to right throughout: ab means a then b,
 * and a relation pair (a, b) means the length-two path ab lies in the
 * ideal. Stored orderings are deterministic: vertices and arrows sort
 * by name at parse time, path lists sort by their vertex/arrow names.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gentle {

struct Arrow {
    std::string name;
    int src = -1;
    int tgt = -1;
};

// arrows empty means the trivial path at src (== tgt).
struct Path {
    int src = -1;
    int tgt = -1;
    std::vector<int> arrows;

    bool trivial() const { return arrows.empty(); }
    size_t length() const { return arrows.size(); }

    friend bool operator==(const Path& a, const Path& b) {
        return a.src == b.src && a.tgt == b.tgt && a.arrows == b.arrows;
    }
    friend bool operator<(const Path& a, const Path& b) {
        if (a.src != b.src) return a.src < b.src;
        if (a.arrows != b.arrows) return a.arrows < b.arrows;
        return a.tgt < b.tgt;
    }
};

struct Presentation {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<std::pair<int, int>> relations; // (a, b): ab in the ideal

    int vertex_index(const std::string& name) const {
        for (size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == name) return static_cast<int>(i);
        return -1;
    }
    int arrow_index(const std::string& name) const {
        for (size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].name == name) return static_cast<int>(i);
        return -1;
    }

    bool is_relation(int a, int b) const {
        return std::find(relations.begin(), relations.end(), std::make_pair(a, b)) != relations.end();
    }

    // Unique continuation of a with composition outside the ideal.
    std::optional<int> comp_succ(int a) const {
        for (size_t b = 0; b < arrows.size(); ++b)
            if (arrows[a].tgt == arrows[b].src && !is_relation(a, static_cast<int>(b)))
                return static_cast<int>(b);
        return std::nullopt;
    }
    std::optional<int> comp_pred(int b) const {
        for (size_t a = 0; a < arrows.size(); ++a)
            if (arrows[a].tgt == arrows[b].src && !is_relation(static_cast<int>(a), b))
                return static_cast<int>(a);
        return std::nullopt;
    }
    // Unique continuation of a with composition inside the ideal.
    std::optional<int> rel_succ(int a) const {
        for (size_t b = 0; b < arrows.size(); ++b)
            if (is_relation(a, static_cast<int>(b))) return static_cast<int>(b);
        return std::nullopt;
    }
    std::optional<int> rel_pred(int b) const {
        for (size_t a = 0; a < arrows.size(); ++a)
            if (is_relation(static_cast<int>(a), b)) return static_cast<int>(a);
        return std::nullopt;
    }

    std::vector<int> arrows_out(int v) const {
        std::vector<int> r;
        for (size_t a = 0; a < arrows.size(); ++a)
            if (arrows[a].src == v) r.push_back(static_cast<int>(a));
        return r;
    }
    std::vector<int> arrows_in(int v) const {
        std::vector<int> r;
        for (size_t a = 0; a < arrows.size(); ++a)
            if (arrows[a].tgt == v) r.push_back(static_cast<int>(a));
        return r;
    }

    Path trivial_path(int v) const { return Path{v, v, {}}; }

    Path path_of(const std::vector<int>& arrow_seq) const {
        if (arrow_seq.empty()) throw std::invalid_argument("path_of needs arrows; use trivial_path");
        Path p;
        p.src = arrows[arrow_seq.front()].src;
        p.tgt = arrows[arrow_seq.back()].tgt;
        p.arrows = arrow_seq;
        return p;
    }

    // Composite pq, or nullopt when it is zero in the algebra.
    std::optional<Path> compose(const Path& p, const Path& q) const {
        if (p.tgt != q.src) return std::nullopt;
        if (p.trivial()) return q;
        if (q.trivial()) return p;
        if (is_relation(p.arrows.back(), q.arrows.front())) return std::nullopt;
        Path r;
        r.src = p.src;
        r.tgt = q.tgt;
        r.arrows = p.arrows;
        r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
        return r;
    }

    std::string path_name(const Path& p) const {
        if (p.trivial()) return "e_" + vertices[p.src];
        std::string s;
        for (size_t i = 0; i < p.arrows.size(); ++i) {
            if (i) s += ".";
            s += arrows[p.arrows[i]].name;
        }
        return s;
    }

    // Vertex passages of a path: s(a1), t(a1), ..., t(an); [v] for trivial.
    std::vector<int> passages(const Path& p) const {
        std::vector<int> vs;
        vs.push_back(p.src);
        for (int a : p.arrows) vs.push_back(arrows[a].tgt);
        return vs;
    }
};

struct ValidationResult {
    bool ok = true;
    bool finite_dimensional = true;
    bool degenerate_point = false; // one vertex, no arrows
    std::vector<std::string> errors;

    void fail(const std::string& msg) {
        ok = false;
        errors.push_back(msg);
    }
};

inline Presentation parse_presentation(const std::string& text) {
    struct RawArrow {
        std::string name, src, tgt;
    };
    std::vector<std::string> verts;
    std::vector<RawArrow> raws;
    std::vector<std::pair<std::string, std::string>> rels;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        auto need = [&](std::string& slot) {
            if (!(ls >> slot))
                throw std::runtime_error("line " + std::to_string(lineno) + ": missing token after '" + kw + "'");
        };
        if (kw == "vertex") {
            std::string v;
            need(v);
            verts.push_back(v);
        } else if (kw == "arrow") {
            RawArrow r;
            need(r.name);
            need(r.src);
            need(r.tgt);
            raws.push_back(r);
        } else if (kw == "rel") {
            std::string a, b;
            need(a);
            need(b);
            rels.emplace_back(a, b);
        } else {
            throw std::runtime_error("line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
        }
        std::string extra;
        if (ls >> extra)
            throw std::runtime_error("line " + std::to_string(lineno) + ": unexpected token '" + extra + "'");
    }

    Presentation p;
    std::sort(verts.begin(), verts.end());
    p.vertices = verts;
    std::sort(raws.begin(), raws.end(), [](const RawArrow& x, const RawArrow& y) { return x.name < y.name; });
    for (const RawArrow& r : raws) {
        Arrow a;
        a.name = r.name;
        a.src = p.vertex_index(r.src);
        a.tgt = p.vertex_index(r.tgt);
        if (a.src < 0 || a.tgt < 0)
            throw std::runtime_error("arrow '" + r.name + "' references unknown vertex");
        p.arrows.push_back(a);
    }
    for (auto& [an, bn] : rels) {
        int a = p.arrow_index(an), b = p.arrow_index(bn);
        if (a < 0 || b < 0) throw std::runtime_error("relation references unknown arrow '" + an + " " + bn + "'");
        p.relations.emplace_back(a, b);
    }
    std::sort(p.relations.begin(), p.relations.end());
    p.relations.erase(std::unique(p.relations.begin(), p.relations.end()), p.relations.end());
    return p;
}

inline bool quiver_connected(const Presentation& p) {
    if (p.vertices.empty()) return false;
    std::vector<bool> seen(p.vertices.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const Arrow& a : p.arrows) {
            int w = -1;
            if (a.src == v) w = a.tgt;
            else if (a.tgt == v) w = a.src;
            if (w >= 0 && !seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

inline ValidationResult validate_gentle(const Presentation& p, bool require_finite = true) {
    ValidationResult r;
    if (p.vertices.empty()) {
        r.fail("no vertices");
        return r;
    }
    {
        std::set<std::string> names(p.vertices.begin(), p.vertices.end());
        if (names.size() != p.vertices.size()) r.fail("duplicate vertex name");
        std::set<std::string> anames;
        for (const Arrow& a : p.arrows)
            if (!anames.insert(a.name).second) r.fail("duplicate arrow name '" + a.name + "'");
    }
    if (p.vertices.size() == 1 && p.arrows.empty()) {
        r.degenerate_point = true;
        return r;
    }
    if (!quiver_connected(p)) r.fail("quiver is not connected");

    for (size_t v = 0; v < p.vertices.size(); ++v) {
        if (p.arrows_in(static_cast<int>(v)).size() > 2)
            r.fail("vertex '" + p.vertices[v] + "' has more than two incoming arrows");
        if (p.arrows_out(static_cast<int>(v)).size() > 2)
            r.fail("vertex '" + p.vertices[v] + "' has more than two outgoing arrows");
    }
    for (auto& [a, b] : p.relations)
        if (p.arrows[a].tgt != p.arrows[b].src)
            r.fail("relation " + p.arrows[a].name + " " + p.arrows[b].name + " is not a composable pair");

    // Gentleness: per arrow, at most one composition continues and at most
    // one is killed, in both directions.
    for (size_t b = 0; b < p.arrows.size(); ++b) {
        int comp_in = 0, rel_in = 0, comp_out = 0, rel_out = 0;
        for (size_t a = 0; a < p.arrows.size(); ++a) {
            if (p.arrows[a].tgt == p.arrows[b].src) {
                if (p.is_relation(static_cast<int>(a), static_cast<int>(b))) ++rel_in;
                else ++comp_in;
            }
            if (p.arrows[b].tgt == p.arrows[a].src) {
                if (p.is_relation(static_cast<int>(b), static_cast<int>(a))) ++rel_out;
                else ++comp_out;
            }
        }
        const std::string& n = p.arrows[b].name;
        if (comp_in > 1) r.fail("arrow '" + n + "' has two compositions from the left outside the ideal");
        if (comp_out > 1) r.fail("arrow '" + n + "' has two compositions to the right outside the ideal");
        if (rel_in > 1) r.fail("arrow '" + n + "' is the right factor of two relations");
        if (rel_out > 1) r.fail("arrow '" + n + "' is the left factor of two relations");
    }

    // Finite dimension: no cycle along comp_succ.
    {
        size_t n = p.arrows.size();
        for (size_t a = 0; a < n && r.finite_dimensional; ++a) {
            std::optional<int> cur = static_cast<int>(a);
            for (size_t steps = 0; steps <= n; ++steps) {
                cur = p.comp_succ(*cur);
                if (!cur) break;
                if (*cur == static_cast<int>(a)) {
                    r.finite_dimensional = false;
                    break;
                }
            }
        }
        if (!r.finite_dimensional && require_finite)
            r.fail("infinite dimensional: a cyclic path avoids the ideal");
    }
    return r;
}

// A maximal path element: a maximal nontrivial path along comp_succ, a
// trivial one at a vertex of defect one, or a full relation-free cycle
// (locally gentle case) stored with one passage per junction.
struct MaximalPath {
    Path path;
    std::vector<int> vertex_passages;
    bool cyclic = false;
};

namespace detail {
inline int comp_pair_count_at(const Presentation& p, int v) {
    int c = 0;
    for (int a : p.arrows_in(v))
        for (int b : p.arrows_out(v))
            if (!p.is_relation(a, b)) ++c;
    return c;
}
inline int rel_pair_count_at(const Presentation& p, int v) {
    int c = 0;
    for (int a : p.arrows_in(v))
        for (int b : p.arrows_out(v))
            if (p.is_relation(a, b)) ++c;
    return c;
}
} // namespace detail

// Trivial maximal paths sit at vertices where in + out - passes == 1,
// passes counted through pairs composing outside the ideal.
inline bool in_trivial_maximal_set(const Presentation& p, int v) {
    int i = static_cast<int>(p.arrows_in(v).size());
    int o = static_cast<int>(p.arrows_out(v).size());
    return i + o - detail::comp_pair_count_at(p, v) == 1;
}

// Dual defect with passes counted through relation pairs.
inline bool in_trivial_forbidden_set(const Presentation& p, int v) {
    int i = static_cast<int>(p.arrows_in(v).size());
    int o = static_cast<int>(p.arrows_out(v).size());
    return i + o - detail::rel_pair_count_at(p, v) == 1;
}

inline std::vector<MaximalPath> maximal_paths(const Presentation& p) {
    std::vector<MaximalPath> out;
    for (size_t a = 0; a < p.arrows.size(); ++a) {
        if (p.comp_pred(static_cast<int>(a))) continue;
        std::vector<int> seq{static_cast<int>(a)};
        std::optional<int> cur = p.comp_succ(static_cast<int>(a));
        while (cur) {
            seq.push_back(*cur);
            cur = p.comp_succ(*cur);
        }
        MaximalPath m;
        m.path = p.path_of(seq);
        m.vertex_passages = p.passages(m.path);
        out.push_back(std::move(m));
    }
    // Relation-free cycles (locally gentle case). Every arrow on such a
    // cycle has a comp predecessor, so the loop above never reaches them.
    {
        size_t n = p.arrows.size();
        std::vector<bool> on_cycle(n, false);
        for (size_t a = 0; a < n; ++a) {
            std::optional<int> cur = static_cast<int>(a);
            for (size_t steps = 0; steps <= n; ++steps) {
                cur = p.comp_succ(*cur);
                if (!cur) break;
                if (*cur == static_cast<int>(a)) {
                    on_cycle[a] = true;
                    break;
                }
            }
        }
        std::vector<bool> emitted(n, false);
        for (size_t a = 0; a < n; ++a) {
            if (!on_cycle[a] || emitted[a]) continue;
            std::vector<int> cyc;
            int cur = static_cast<int>(a);
            do {
                cyc.push_back(cur);
                emitted[cur] = true;
                cur = *p.comp_succ(cur);
            } while (cur != static_cast<int>(a));
            auto mn = std::min_element(cyc.begin(), cyc.end());
            std::rotate(cyc.begin(), mn, cyc.end());
            MaximalPath m;
            m.path = p.path_of(cyc);
            m.vertex_passages = p.passages(m.path);
            m.vertex_passages.pop_back();   // closing vertex repeats the first
            m.cyclic = true;
            out.push_back(std::move(m));
        }
    }
    for (size_t v = 0; v < p.vertices.size(); ++v) {
        bool isolated = p.arrows_in(static_cast<int>(v)).empty() && p.arrows_out(static_cast<int>(v)).empty();
        if (in_trivial_maximal_set(p, static_cast<int>(v)) || isolated) {
            MaximalPath m;
            m.path = p.trivial_path(static_cast<int>(v));
            m.vertex_passages = {static_cast<int>(v)};
            out.push_back(std::move(m));
        }
    }
    std::sort(out.begin(), out.end(), [&](const MaximalPath& x, const MaximalPath& y) {
        return p.path_name(x.path) < p.path_name(y.path);
    });
    return out;
}

struct ForbiddenThreads {
    std::vector<Path> threads;              // finite maximal antipaths, single arrows included
    std::vector<std::vector<int>> cycles;   // full relation cycles, as arrow index lists
    std::vector<int> trivial_vertices;      // vertices carrying trivial antipaths
};

inline ForbiddenThreads forbidden_threads(const Presentation& p) {
    ForbiddenThreads out;
    size_t n = p.arrows.size();
    std::vector<bool> on_cycle(n, false);
    for (size_t a = 0; a < n; ++a) {
        std::optional<int> cur = static_cast<int>(a);
        for (size_t steps = 0; steps <= n; ++steps) {
            cur = p.rel_succ(*cur);
            if (!cur) break;
            if (*cur == static_cast<int>(a)) {
                on_cycle[a] = true;
                break;
            }
        }
    }
    std::vector<bool> seen(n, false);
    for (size_t a = 0; a < n; ++a) {
        if (on_cycle[a] || seen[a]) continue;
        if (p.rel_pred(static_cast<int>(a))) continue;
        std::vector<int> seq{static_cast<int>(a)};
        seen[a] = true;
        std::optional<int> cur = p.rel_succ(static_cast<int>(a));
        while (cur) {
            seq.push_back(*cur);
            seen[*cur] = true;
            cur = p.rel_succ(*cur);
        }
        out.threads.push_back(p.path_of(seq));
    }
    std::vector<bool> emitted(n, false);
    for (size_t a = 0; a < n; ++a) {
        if (!on_cycle[a] || emitted[a]) continue;
        std::vector<int> cyc;
        int cur = static_cast<int>(a);
        do {
            cyc.push_back(cur);
            emitted[cur] = true;
            cur = *p.rel_succ(cur);
        } while (cur != static_cast<int>(a));
        // canonical rotation: start at least arrow index
        auto mn = std::min_element(cyc.begin(), cyc.end());
        std::rotate(cyc.begin(), mn, cyc.end());
        out.cycles.push_back(cyc);
    }
    for (size_t v = 0; v < p.vertices.size(); ++v) {
        bool isolated = p.arrows_in(static_cast<int>(v)).empty() && p.arrows_out(static_cast<int>(v)).empty();
        if (in_trivial_forbidden_set(p, static_cast<int>(v)) || isolated)
            out.trivial_vertices.push_back(static_cast<int>(v));
    }
    std::sort(out.threads.begin(), out.threads.end(), [&](const Path& x, const Path& y) {
        return p.path_name(x) < p.path_name(y);
    });
    std::sort(out.cycles.begin(), out.cycles.end());
    return out;
}

// All paths avoiding the ideal: the basis of the algebra.
inline std::vector<Path> path_basis(const Presentation& p) {
    std::vector<Path> basis;
    for (size_t v = 0; v < p.vertices.size(); ++v) basis.push_back(p.trivial_path(static_cast<int>(v)));
    for (const MaximalPath& m : maximal_paths(p)) {
        size_t n = m.path.arrows.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j)
                basis.push_back(p.path_of(std::vector<int>(m.path.arrows.begin() + i, m.path.arrows.begin() + j + 1)));
    }
    std::sort(basis.begin(), basis.end());
    basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
    return basis;
}

// Paths from u to v avoiding the ideal: a basis of e_u A e_v.
inline std::vector<Path> hom_path_basis(const Presentation& p, int u, int v) {
    std::vector<Path> r;
    for (const Path& q : path_basis(p))
        if (q.src == u && q.tgt == v) r.push_back(q);
    return r;
}

} // namespace gentle
