#pragma once

/*
 * Derived invariant of a gentle presentation, computed combinatorially.
 *
 * Pairs maximal paths against maximal antipaths: from a maximal path m,
 * take the antipath f ending at t(m) whose last arrow differs from the
 * last arrow of m, then the maximal path starting at s(f) whose first
 * arrow differs from the first arrow of f, and so on until the walk
 * closes. Trivial threads act as the fallback on either side; when the
 * current thread is trivial the nontrivial partner is preferred. Each
 * closed walk contributes the pair (paths used, total antipath length);
 * every full relation cycle of length n contributes (0, n).
 *
 * The same multiset is readable off the surface model face by face;
 * surface_ag_pairs in ribbon.hpp computes that form.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "algebra.hpp"

namespace gentle {

namespace detail {

struct Thread {
    Path path;
    bool trivial() const { return path.trivial(); }
};

struct ThreadTables {
    std::vector<Thread> permitted;
    std::vector<Thread> forbidden;
    std::vector<int> trivial_permitted_at; // vertex -> index into permitted, or -1
    std::vector<int> trivial_forbidden_at;

    std::vector<std::vector<int>> nontrivial_permitted_from; // vertex -> indices
    std::vector<std::vector<int>> nontrivial_forbidden_to;
};

inline ThreadTables build_thread_tables(const Presentation& p) {
    ThreadTables t;
    t.trivial_permitted_at.assign(p.vertices.size(), -1);
    t.trivial_forbidden_at.assign(p.vertices.size(), -1);
    t.nontrivial_permitted_from.assign(p.vertices.size(), {});
    t.nontrivial_forbidden_to.assign(p.vertices.size(), {});

    for (const MaximalPath& m : maximal_paths(p)) {
        int idx = static_cast<int>(t.permitted.size());
        t.permitted.push_back(Thread{m.path});
        if (m.path.trivial()) t.trivial_permitted_at[m.path.src] = idx;
        else t.nontrivial_permitted_from[m.path.src].push_back(idx);
    }
    ForbiddenThreads f = forbidden_threads(p);
    for (const Path& q : f.threads) {
        int idx = static_cast<int>(t.forbidden.size());
        t.forbidden.push_back(Thread{q});
        t.nontrivial_forbidden_to[q.tgt].push_back(idx);
    }
    for (int v : f.trivial_vertices) {
        int idx = static_cast<int>(t.forbidden.size());
        t.forbidden.push_back(Thread{p.trivial_path(v)});
        t.trivial_forbidden_at[v] = idx;
    }
    return t;
}

} // namespace detail

inline std::vector<std::pair<int, int>> ag_invariant(const Presentation& p) {
    ValidationResult vr = validate_gentle(p);
    if (!vr.ok) throw std::invalid_argument("ag_invariant: not a finite dimensional gentle presentation");

    detail::ThreadTables t = detail::build_thread_tables(p);
    const ForbiddenThreads fb = forbidden_threads(p);

    auto forbidden_for = [&](const detail::Thread& m) -> int {
        int w = m.path.tgt;
        int fallback = t.trivial_forbidden_at[w];
        if (m.trivial()) {
            for (int idx : t.nontrivial_forbidden_to[w]) return idx;
            if (fallback >= 0) return fallback;
        } else {
            int last = m.path.arrows.back();
            for (int idx : t.nontrivial_forbidden_to[w])
                if (t.forbidden[idx].path.arrows.back() != last) return idx;
            if (fallback >= 0) return fallback;
        }
        throw std::logic_error("no antipath partner at vertex '" + p.vertices[w] + "'");
    };
    auto permitted_for = [&](const detail::Thread& f) -> int {
        int u = f.path.src;
        int fallback = t.trivial_permitted_at[u];
        if (f.trivial()) {
            for (int idx : t.nontrivial_permitted_from[u]) return idx;
            if (fallback >= 0) return fallback;
        } else {
            int first = f.path.arrows.front();
            for (int idx : t.nontrivial_permitted_from[u])
                if (t.permitted[idx].path.arrows.front() != first) return idx;
            if (fallback >= 0) return fallback;
        }
        throw std::logic_error("no path partner at vertex '" + p.vertices[u] + "'");
    };

    std::vector<std::pair<int, int>> pairs;
    std::vector<bool> used(t.permitted.size(), false);
    for (size_t start = 0; start < t.permitted.size(); ++start) {
        if (used[start]) continue;
        int threads = 0, weight = 0;
        int cur = static_cast<int>(start);
        do {
            if (used[cur]) throw std::logic_error("thread pairing is not a clean cycle");
            used[cur] = true;
            ++threads;
            int fi = forbidden_for(t.permitted[cur]);
            weight += static_cast<int>(t.forbidden[fi].path.length());
            cur = permitted_for(t.forbidden[fi]);
        } while (cur != static_cast<int>(start));
        pairs.emplace_back(threads, weight);
    }
    for (const auto& cyc : fb.cycles) pairs.emplace_back(0, static_cast<int>(cyc.size()));
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

inline bool same_ag(const std::vector<std::pair<int, int>>& a, const std::vector<std::pair<int, int>>& b) {
    return a == b;
}

} // namespace gentle
