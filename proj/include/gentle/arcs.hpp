#pragma once

/*
 * Dictionary between graded strings and graded arcs on the surface
 * model, and between graded bands and graded closed curves.
 *
 * An arc is the ordered list of its laminate crossings. A crossing over
 * the chord of quiver vertex v records the two fan sides used to enter
 * and leave the edge of v (the two passages of v) plus a grading. The
 * start of the arc continues through the approach side of the first
 * crossing to the marked point of that side's ribbon vertex, the end
 * through the depart side of the last crossing. A trivial string
 * crosses exactly one chord and anchors at both passages' marked
 * points. Letters of the string are subpaths of the ribbon vertex
 * shared by consecutive sides: forward along the fan is a direct
 * letter, backward an inverse one.
 */

#include <stdexcept>
#include <string>
#include <vector>

#include "ribbon.hpp"
#include "strings.hpp"

namespace gentle {

struct ArcCrossing {
    int vertex = -1;
    HalfEdge approach; // side toward the start of the arc
    HalfEdge depart;   // side toward the end of the arc
    int grading = 0;

    friend bool operator==(const ArcCrossing& a, const ArcCrossing& b) {
        return a.vertex == b.vertex && a.approach == b.approach && a.depart == b.depart &&
               a.grading == b.grading;
    }
};

struct GradedArc {
    std::vector<ArcCrossing> crossings; // never empty

    int start_anchor() const { return crossings.front().approach.mp; }
    int end_anchor() const { return crossings.back().depart.mp; }
};

struct GradedClosedCurve {
    std::vector<ArcCrossing> crossings; // cyclic
    Rational lambda = 1;
    int m = 1;
};

struct InfiniteArcSpec {
    std::vector<ArcCrossing> core;
    std::vector<ArcCrossing> left_tail_period;  // nonempty when the start is a spiral
    std::vector<ArcCrossing> right_tail_period; // nonempty when the end is a spiral
};

namespace detail {

// position of each arrow inside its maximal path
struct ArrowLocation {
    int mp = -1;
    int pos = -1;
};

inline std::vector<ArrowLocation> locate_arrows(const SurfaceModel& m) {
    std::vector<ArrowLocation> loc(m.presentation.arrows.size());
    for (size_t i = 0; i < m.maximal.size(); ++i) {
        const Path& path = m.maximal[i].path;
        for (size_t q = 0; q < path.arrows.size(); ++q)
            loc[path.arrows[q]] = ArrowLocation{static_cast<int>(i), static_cast<int>(q)};
    }
    return loc;
}

inline HalfEdge other_passage(const SurfaceModel& m, int vertex, const HalfEdge& h) {
    const auto& pair = m.vertex_passages[vertex];
    if (pair.size() != 2) throw std::logic_error("vertex without two passages");
    return pair[0] == h ? pair[1] : pair[0];
}

// segment sides induced by one letter: (depart of previous crossing,
// approach of next crossing)
inline std::pair<HalfEdge, HalfEdge> letter_sides(const SurfaceModel& m, const Letter& l) {
    auto loc = locate_arrows(m);
    const ArrowLocation& first = loc[l.path.arrows.front()];
    const ArrowLocation& last = loc[l.path.arrows.back()];
    if (first.mp != last.mp || last.pos - first.pos + 1 != static_cast<int>(l.path.arrows.size()))
        throw std::logic_error("letter does not embed in one maximal path");
    HalfEdge src{first.mp, first.pos};
    HalfEdge tgt{last.mp, last.pos + 1};
    if (l.inverse) return {tgt, src};
    return {src, tgt};
}

} // namespace detail

inline GradedArc arc_from_string(const SurfaceModel& m, const GradedString& s) {
    GradedArc arc;
    if (s.trivial()) {
        int v = s.walk_vertices[0];
        const auto& pair = m.vertex_passages[v];
        ArcCrossing c;
        c.vertex = v;
        c.approach = pair[0];
        c.depart = pair.size() > 1 ? pair[1] : pair[0];
        c.grading = s.mu[0];
        arc.crossings.push_back(c);
        return arc;
    }
    size_t n = s.size();
    arc.crossings.resize(n + 1);
    for (size_t i = 0; i <= n; ++i) {
        arc.crossings[i].vertex = s.walk_vertices[i];
        arc.crossings[i].grading = s.mu[i];
    }
    for (size_t i = 1; i <= n; ++i) {
        auto [dep, app] = detail::letter_sides(m, s.letters[i - 1]);
        arc.crossings[i - 1].depart = dep;
        arc.crossings[i].approach = app;
    }
    arc.crossings.front().approach =
        detail::other_passage(m, arc.crossings.front().vertex, arc.crossings.front().depart);
    arc.crossings.back().depart =
        detail::other_passage(m, arc.crossings.back().vertex, arc.crossings.back().approach);
    return arc;
}

// letter between two sides living on one ribbon vertex fan
inline Letter letter_between(const SurfaceModel& m, const HalfEdge& from, const HalfEdge& to) {
    if (from.mp != to.mp) throw std::invalid_argument("segment sides on different ribbon vertices");
    if (from.k == to.k) throw std::invalid_argument("segment sides at the same fan position");
    const Path& big = m.maximal[from.mp].path;
    Letter l;
    if (from.k < to.k) {
        l.inverse = false;
        l.path = m.presentation.path_of(
            std::vector<int>(big.arrows.begin() + from.k, big.arrows.begin() + to.k));
    } else {
        l.inverse = true;
        l.path = m.presentation.path_of(
            std::vector<int>(big.arrows.begin() + to.k, big.arrows.begin() + from.k));
    }
    return l;
}

inline GradedString string_from_arc(const SurfaceModel& m, const GradedArc& arc) {
    if (arc.crossings.empty()) throw std::invalid_argument("arc without crossings");
    if (arc.crossings.size() == 1) {
        const ArcCrossing& c = arc.crossings.front();
        return make_trivial_string(m.presentation, c.vertex, c.grading);
    }
    std::vector<Letter> letters;
    for (size_t i = 1; i < arc.crossings.size(); ++i)
        letters.push_back(letter_between(m, arc.crossings[i - 1].depart, arc.crossings[i].approach));
    GradedString s = make_string(m.presentation, letters, arc.crossings.front().grading);
    for (size_t i = 0; i < arc.crossings.size(); ++i) {
        if (s.walk_vertices[i] != arc.crossings[i].vertex)
            throw std::logic_error("arc crossing vertex mismatch");
        if (s.mu[i] != arc.crossings[i].grading) throw std::logic_error("arc grading is not a walk grading");
    }
    return s;
}

inline GradedClosedCurve curve_from_band(const SurfaceModel& m, const GradedBand& b) {
    GradedClosedCurve c;
    c.lambda = b.lambda;
    c.m = b.m;
    size_t r = b.size();
    c.crossings.resize(r);
    for (size_t i = 0; i < r; ++i) {
        c.crossings[i].vertex = b.walk_vertices[i];
        c.crossings[i].grading = b.mu[i];
    }
    for (size_t i = 0; i < r; ++i) {
        auto [dep, app] = detail::letter_sides(m, b.letters[i]);
        c.crossings[i].depart = dep;
        c.crossings[(i + 1) % r].approach = app;
    }
    return c;
}

inline GradedBand band_from_curve(const SurfaceModel& m, const GradedClosedCurve& c) {
    size_t r = c.crossings.size();
    if (r < 2) throw std::invalid_argument("closed curve needs at least two crossings");
    std::vector<Letter> letters;
    for (size_t i = 0; i < r; ++i)
        letters.push_back(letter_between(m, c.crossings[i].depart, c.crossings[(i + 1) % r].approach));
    // letter i runs from position i to i+1; rebuild with base at position 0
    GradedBand b = make_band(m.presentation, letters, c.crossings.front().grading, c.lambda, c.m);
    for (size_t i = 0; i < r; ++i) {
        if (b.walk_vertices[i] != c.crossings[i].vertex)
            throw std::logic_error("curve crossing vertex mismatch");
        if (b.mu[i] != c.crossings[i].grading) throw std::logic_error("curve grading is not cyclic");
    }
    return b;
}

inline InfiniteArcSpec arc_from_infinite(const SurfaceModel& m, const InfiniteStringSpec& s) {
    InfiniteArcSpec spec;
    validate_infinite(m.presentation, s);
    GradedArc core = arc_from_string(m, s.core);
    spec.core = core.crossings;
    auto tail_crossings = [&](const std::vector<Letter>& period) {
        std::vector<ArcCrossing> out;
        for (const Letter& l : period) {
            auto [dep, app] = detail::letter_sides(m, l);
            ArcCrossing c;
            c.vertex = l.walk_source();
            c.depart = dep;
            c.approach = detail::other_passage(m, c.vertex, dep);
            out.push_back(c);
            (void)app;
        }
        return out;
    };
    spec.left_tail_period = tail_crossings(s.left_period);
    spec.right_tail_period = tail_crossings(s.right_period);
    return spec;
}

} // namespace gentle
