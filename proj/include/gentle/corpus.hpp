#pragma once

/*
 * Seeded random presentations and objects for property tests.
 *
 * Arrows grow over a random spanning tree, so the quiver is connected.
 * Relations are chosen per vertex among the assignments that keep both
 * successor maps single valued, so every sample is gentle by
 * construction; infinite dimensional samples are rejected when asked.
 */

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "strings.hpp"

namespace gentle {

inline Presentation random_gentle(std::mt19937& rng, int max_vertices = 8, bool require_finite = true) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int attempt = 0; attempt < 400; ++attempt) {
        int nv = pick(2, max_vertices);
        std::vector<int> in_deg(nv, 0), out_deg(nv, 0);
        std::vector<std::pair<int, int>> arrows;
        // spanning tree in random insertion order
        std::vector<int> order(nv);
        for (int i = 0; i < nv; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        bool stuck = false;
        for (int i = 1; i < nv && !stuck; ++i) {
            std::vector<std::pair<int, int>> options;
            for (int j = 0; j < i; ++j) {
                if (out_deg[order[j]] < 2 && in_deg[order[i]] < 2) options.push_back({order[j], order[i]});
                if (out_deg[order[i]] < 2 && in_deg[order[j]] < 2) options.push_back({order[i], order[j]});
            }
            if (options.empty()) {
                stuck = true;
                break;
            }
            auto [s, t] = options[pick(0, static_cast<int>(options.size()) - 1)];
            arrows.push_back({s, t});
            ++out_deg[s];
            ++in_deg[t];
        }
        if (stuck) continue;
        int extras = pick(0, nv);
        for (int e = 0; e < extras; ++e) {
            int s = pick(0, nv - 1), t = pick(0, nv - 1);
            if (out_deg[s] >= 2 || in_deg[t] >= 2) continue;
            arrows.push_back({s, t});
            ++out_deg[s];
            ++in_deg[t];
        }
        // relation choice per vertex
        std::vector<std::pair<int, int>> rels;
        for (int v = 0; v < nv; ++v) {
            std::vector<int> in, out;
            for (size_t a = 0; a < arrows.size(); ++a) {
                if (arrows[a].second == v) in.push_back(static_cast<int>(a));
                if (arrows[a].first == v) out.push_back(static_cast<int>(a));
            }
            if (in.empty() || out.empty()) continue;
            if (in.size() == 1 && out.size() == 1) {
                if (pick(0, 1)) rels.push_back({in[0], out[0]});
            } else if (in.size() == 1) {
                rels.push_back({in[0], out[pick(0, 1)]});
            } else if (out.size() == 1) {
                rels.push_back({in[pick(0, 1)], out[0]});
            } else {
                int flip = pick(0, 1);
                rels.push_back({in[0], out[flip]});
                rels.push_back({in[1], out[1 - flip]});
            }
        }
        std::string text;
        for (int v = 0; v < nv; ++v) text += "vertex v" + std::to_string(v + 1) + "\n";
        for (size_t a = 0; a < arrows.size(); ++a)
            text += "arrow a" + std::to_string(a + 1) + " v" + std::to_string(arrows[a].first + 1) + " v" +
                    std::to_string(arrows[a].second + 1) + "\n";
        for (auto& [x, y] : rels)
            text += "rel a" + std::to_string(x + 1) + " a" + std::to_string(y + 1) + "\n";
        Presentation p = parse_presentation(text);
        ValidationResult vr = validate_gentle(p, require_finite);
        if (!vr.ok) continue;
        if (require_finite && !vr.finite_dimensional) continue;
        return p;
    }
    throw std::runtime_error("no gentle sample found");
}

namespace detail {

inline std::vector<Letter> letters_from(const Presentation& p, const std::vector<Path>& pool, int vertex) {
    std::vector<Letter> out;
    for (const Path& q : pool) {
        if (q.trivial()) continue;
        if (q.src == vertex) out.push_back({q, false});
        if (q.tgt == vertex) out.push_back({q, true});
    }
    return out;
}

} // namespace detail

inline std::vector<GradedString> sample_strings(std::mt19937& rng, const Presentation& p, int count,
                                                int max_letters = 4) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::vector<Path> pool = path_basis(p);
    std::vector<GradedString> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < count && ++guard < 80 * count) {
        int base = pick(-2, 2);
        int v = pick(0, static_cast<int>(p.vertices.size()) - 1);
        int want = pick(0, max_letters);
        if (want == 0) {
            out.push_back(make_trivial_string(p, v, base));
            continue;
        }
        std::vector<Letter> word;
        int end = v;
        for (int l = 0; l < want; ++l) {
            std::vector<Letter> cand;
            for (Letter& c : detail::letters_from(p, pool, end)) {
                Letter fixed = c;
                if (fixed.inverse) {
                    // inverse letters start the walk at the path target
                    if (fixed.path.tgt != end) continue;
                } else if (fixed.path.src != end) {
                    continue;
                }
                if (!word.empty() && !detail::junction_ok(p, word.back(), fixed, nullptr)) continue;
                cand.push_back(fixed);
            }
            if (cand.empty()) break;
            Letter chosen = cand[pick(0, static_cast<int>(cand.size()) - 1)];
            word.push_back(chosen);
            end = chosen.walk_target();
        }
        if (word.empty()) continue;
        out.push_back(make_string(p, word, base));
    }
    return out;
}

inline std::vector<GradedBand> sample_bands(std::mt19937& rng, const Presentation& p, int count,
                                            int max_letters = 6) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::vector<Path> pool = path_basis(p);
    std::vector<GradedBand> out;
    for (int attempt = 0; attempt < 600 && static_cast<int>(out.size()) < count; ++attempt) {
        int v = pick(0, static_cast<int>(p.vertices.size()) - 1);
        int want = pick(2, max_letters);
        std::vector<Letter> word;
        int end = v;
        for (int l = 0; l < want; ++l) {
            std::vector<Letter> cand;
            for (Letter& c : detail::letters_from(p, pool, end)) {
                if (c.inverse ? c.path.tgt != end : c.path.src != end) continue;
                if (!word.empty() && !detail::junction_ok(p, word.back(), c, nullptr)) continue;
                cand.push_back(c);
            }
            if (cand.empty()) break;
            word.push_back(cand[pick(0, static_cast<int>(cand.size()) - 1)]);
            end = word.back().walk_target();
        }
        if (static_cast<int>(word.size()) < 2 || end != v) continue;
        if (!band_word_valid(p, word, nullptr)) continue;
        out.push_back(make_band(p, word, pick(-1, 1), Rational(pick(1, 3)), 1));
    }
    return out;
}

} // namespace gentle
