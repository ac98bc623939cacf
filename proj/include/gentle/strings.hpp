#pragma once

/*
 * Graded strings and bands over a gentle presentation.
 *
 * A letter is a nonzero path with a direction flag; a string is a walk
 * of letters. Positions 0..s carry walk vertices w_i and gradings mu_i
 * with mu_i = mu_{i-1} + 1 across a direct letter and -1 across an
 * inverse one. Consecutive letters obey: direct-direct composes into
 * the ideal, inverse-inverse dually, peaks need distinct last arrows,
 * troughs distinct first arrows.
 *
 * A band is a cyclically valid primitive word with equally many direct
 * and inverse letters, a scalar lambda != 0 and a multiplicity m; the
 * Jordan block sits on the last letter of the stored rotation. Rotation
 * keeps lambda. Shifting by n lowers every grading by n.
 */

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "algebra.hpp"
#include "field.hpp"

namespace gentle {

struct Letter {
    Path path;
    bool inverse = false;

    int walk_source() const { return inverse ? path.tgt : path.src; }
    int walk_target() const { return inverse ? path.src : path.tgt; }
    int grading_step() const { return inverse ? -1 : 1; }

    friend bool operator==(const Letter& a, const Letter& b) {
        return a.inverse == b.inverse && a.path == b.path;
    }
};

inline Letter inverse_of(const Letter& l) { return Letter{l.path, !l.inverse}; }

namespace detail {

inline void check_letter(const Presentation& p, const Letter& l) {
    if (l.path.trivial()) throw std::invalid_argument("letter must be a nontrivial path");
    for (size_t i = 0; i + 1 < l.path.arrows.size(); ++i)
        if (p.is_relation(l.path.arrows[i], l.path.arrows[i + 1]))
            throw std::invalid_argument("letter path '" + p.path_name(l.path) + "' lies in the ideal");
}

// legality of the junction x followed by y in walk order
inline bool junction_ok(const Presentation& p, const Letter& x, const Letter& y, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (x.walk_target() != y.walk_source()) return fail("walk vertices do not match");
    if (!x.inverse && !y.inverse) {
        if (!p.is_relation(x.path.arrows.back(), y.path.arrows.front()))
            return fail("direct pair must compose into the ideal");
    } else if (x.inverse && y.inverse) {
        if (!p.is_relation(y.path.arrows.back(), x.path.arrows.front()))
            return fail("inverse pair must compose into the ideal");
    } else if (!x.inverse && y.inverse) {
        if (x.path.arrows.back() == y.path.arrows.back()) return fail("peak with equal last arrows");
    } else {
        if (x.path.arrows.front() == y.path.arrows.front()) return fail("trough with equal first arrows");
    }
    return true;
}

} // namespace detail

struct GradedString {
    std::vector<Letter> letters;
    std::vector<int> walk_vertices; // size letters+1
    std::vector<int> mu;            // size letters+1

    bool trivial() const { return letters.empty(); }
    size_t size() const { return letters.size(); }
    int positions() const { return static_cast<int>(letters.size()) + 1; }

    friend bool operator==(const GradedString& a, const GradedString& b) {
        return a.letters == b.letters && a.walk_vertices == b.walk_vertices && a.mu == b.mu;
    }
};

struct GradedBand {
    std::vector<Letter> letters;    // cyclic, w_r == w_0
    std::vector<int> walk_vertices; // size letters, w_0..w_{r-1}
    std::vector<int> mu;            // size letters, grading at each position
    Rational lambda = 1;
    int m = 1;

    size_t size() const { return letters.size(); }
};

inline GradedString make_trivial_string(const Presentation& p, int vertex, int base) {
    if (vertex < 0 || vertex >= static_cast<int>(p.vertices.size()))
        throw std::invalid_argument("trivial string at unknown vertex");
    GradedString s;
    s.walk_vertices = {vertex};
    s.mu = {base};
    return s;
}

inline GradedString make_string(const Presentation& p, const std::vector<Letter>& letters, int base) {
    if (letters.empty()) throw std::invalid_argument("use make_trivial_string for the empty walk");
    GradedString s;
    s.letters = letters;
    std::string why;
    for (const Letter& l : letters) detail::check_letter(p, l);
    for (size_t i = 0; i + 1 < letters.size(); ++i)
        if (!detail::junction_ok(p, letters[i], letters[i + 1], &why))
            throw std::invalid_argument("illegal junction at position " + std::to_string(i + 1) + ": " + why);
    s.walk_vertices.push_back(letters.front().walk_source());
    s.mu.push_back(base);
    for (const Letter& l : letters) {
        s.walk_vertices.push_back(l.walk_target());
        s.mu.push_back(s.mu.back() + l.grading_step());
    }
    return s;
}

inline GradedString shift_string(GradedString s, int n) {
    for (int& g : s.mu) g -= n;
    return s;
}

inline GradedString invert_string(const Presentation& p, const GradedString& s) {
    if (s.trivial()) return s;
    std::vector<Letter> rev;
    for (auto it = s.letters.rbegin(); it != s.letters.rend(); ++it) rev.push_back(inverse_of(*it));
    return make_string(p, rev, s.mu.back());
}

inline std::string string_key(const Presentation& p, const GradedString& s) {
    std::string k = "@" + std::to_string(s.mu.front());
    if (s.trivial()) return "e_" + p.vertices[s.walk_vertices[0]] + k;
    for (const Letter& l : s.letters) k += " " + std::string(l.inverse ? "~" : "") + p.path_name(l.path);
    return k;
}

inline GradedString canonical_string(const Presentation& p, const GradedString& s) {
    if (s.trivial()) return s;
    GradedString r = invert_string(p, s);
    return string_key(p, r) < string_key(p, s) ? r : s;
}

inline bool band_word_valid(const Presentation& p, const std::vector<Letter>& letters, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (letters.size() < 2) return fail("band needs at least two letters");
    int direct = 0;
    for (const Letter& l : letters) direct += l.inverse ? -1 : 1;
    if (direct != 0) return fail("band needs equally many direct and inverse letters");
    std::string jwhy;
    for (size_t i = 0; i < letters.size(); ++i)
        if (!detail::junction_ok(p, letters[i], letters[(i + 1) % letters.size()], &jwhy))
            return fail("illegal cyclic junction at position " + std::to_string(i + 1) + ": " + jwhy);
    // primitivity as a cyclic word of letters
    size_t r = letters.size();
    for (size_t d = 1; d < r; ++d) {
        if (r % d != 0) continue;
        bool periodic = true;
        for (size_t i = 0; i < r && periodic; ++i)
            if (!(letters[i] == letters[(i + d) % r])) periodic = false;
        if (periodic) return fail("band word is a proper power");
    }
    return true;
}

inline GradedBand make_band(const Presentation& p, const std::vector<Letter>& letters, int base,
                            const Rational& lambda, int m) {
    std::string why;
    for (const Letter& l : letters) detail::check_letter(p, l);
    if (!band_word_valid(p, letters, &why)) throw std::invalid_argument("invalid band: " + why);
    if (lambda == 0) throw std::invalid_argument("band scalar must be nonzero");
    if (m < 1) throw std::invalid_argument("band multiplicity must be positive");
    GradedBand b;
    b.letters = letters;
    b.lambda = lambda;
    b.m = m;
    int g = base;
    for (const Letter& l : letters) {
        b.walk_vertices.push_back(l.walk_source());
        b.mu.push_back(g);
        g += l.grading_step();
    }
    return b;
}

inline GradedBand shift_band(GradedBand b, int n) {
    for (int& g : b.mu) g -= n;
    return b;
}

// rotate so old position k becomes position 0; lambda is untouched
inline GradedBand rotate_band(const Presentation& p, const GradedBand& b, int k) {
    size_t r = b.size();
    int kk = ((k % static_cast<int>(r)) + static_cast<int>(r)) % static_cast<int>(r);
    std::vector<Letter> rot;
    for (size_t i = 0; i < r; ++i) rot.push_back(b.letters[(kk + i) % r]);
    return make_band(p, rot, b.mu[kk], b.lambda, b.m);
}

inline std::string band_key(const Presentation& p, const GradedBand& b) {
    std::string k;
    for (size_t i = 0; i < b.size(); ++i) {
        k += (b.letters[i].inverse ? "~" : "") + p.path_name(b.letters[i].path);
        k += "@" + std::to_string(b.mu[i]) + " ";
    }
    return k;
}

// minimal rotation of the graded word; lambda and m ride along
// reversal convention: lambda inverts
inline GradedBand invert_band(const Presentation& p, const GradedBand& b) {
    std::vector<Letter> rev;
    for (auto it = b.letters.rbegin(); it != b.letters.rend(); ++it) rev.push_back(inverse_of(*it));
    int base = b.mu.back() + b.letters.back().grading_step();
    return make_band(p, rev, base, Rational(1) / b.lambda, b.m);
}

// least key over all rotations of the word and of its inverse; ties on the
// word break on the scalar, so a palindromic word still canonicalizes
inline GradedBand canonical_band(const Presentation& p, const GradedBand& b) {
    GradedBand best = b;
    auto key_of = [&](const GradedBand& c) { return band_key(p, c) + "|" + to_string(c.lambda); };
    std::string best_key = key_of(b);
    for (const GradedBand& seed : {b, invert_band(p, b)}) {
        for (size_t k = 0; k < seed.size(); ++k) {
            GradedBand cand = rotate_band(p, seed, static_cast<int>(k));
            std::string ck = key_of(cand);
            if (ck < best_key) {
                best = cand;
                best_key = ck;
            }
        }
    }
    return best;
}

// One-sided infinite or two-sided infinite walks: a finite core with
// periodic tail words. Conversion level support only.
struct InfiniteStringSpec {
    std::vector<Letter> left_period; // empty means no left tail
    GradedString core;
    std::vector<Letter> right_period;
};

inline void validate_infinite(const Presentation& p, const InfiniteStringSpec& s) {
    std::string why;
    if (!s.left_period.empty()) {
        for (const Letter& l : s.left_period) detail::check_letter(p, l);
        for (size_t i = 0; i < s.left_period.size(); ++i)
            if (!detail::junction_ok(p, s.left_period[i], s.left_period[(i + 1) % s.left_period.size()], &why))
                throw std::invalid_argument("left tail is not cyclically valid: " + why);
        if (!s.core.trivial() && !detail::junction_ok(p, s.left_period.back(), s.core.letters.front(), &why))
            throw std::invalid_argument("left tail does not attach to the core: " + why);
    }
    if (!s.right_period.empty()) {
        for (const Letter& l : s.right_period) detail::check_letter(p, l);
        for (size_t i = 0; i < s.right_period.size(); ++i)
            if (!detail::junction_ok(p, s.right_period[i], s.right_period[(i + 1) % s.right_period.size()], &why))
                throw std::invalid_argument("right tail is not cyclically valid: " + why);
        if (!s.core.trivial() && !detail::junction_ok(p, s.core.letters.back(), s.right_period.front(), &why))
            throw std::invalid_argument("right tail does not attach to the core: " + why);
    }
}

// --- text form ---------------------------------------------------------
//
// string: letters separated by spaces, '~' prefix for inverse, arrows in
// a letter joined by '.', then '@<base>'. Trivial: 'e@<vertex>@<base>'.
// band:   'band(<letters>)@<base> lambda=<num>[/<den>] m=<int>'

inline Letter parse_letter(const Presentation& p, const std::string& tok) {
    std::string t = tok;
    Letter l;
    if (!t.empty() && t[0] == '~') {
        l.inverse = true;
        t = t.substr(1);
    }
    std::vector<int> arrows;
    std::stringstream ss(t);
    std::string piece;
    while (std::getline(ss, piece, '.')) {
        int a = p.arrow_index(piece);
        if (a < 0) throw std::invalid_argument("unknown arrow '" + piece + "' in letter '" + tok + "'");
        arrows.push_back(a);
    }
    if (arrows.empty()) throw std::invalid_argument("empty letter '" + tok + "'");
    l.path = p.path_of(arrows);
    return l;
}

inline std::variant<GradedString, GradedBand> parse_string_expr(const Presentation& p, const std::string& text) {
    std::string t = text;
    auto trim = [](std::string& s) {
        while (!s.empty() && isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
        while (!s.empty() && isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    trim(t);
    if (t.rfind("band(", 0) == 0) {
        size_t close = t.find(')');
        if (close == std::string::npos) throw std::invalid_argument("band: missing ')'");
        std::string word = t.substr(5, close - 5);
        std::string rest = t.substr(close + 1);
        int base = 0;
        Rational lambda = 1;
        int m = 1;
        std::istringstream rs(rest);
        std::string tok;
        if (!rest.empty() && rest[0] == '@') {
            size_t sp = rest.find(' ');
            base = std::stoi(rest.substr(1, sp == std::string::npos ? std::string::npos : sp - 1));
            rs = std::istringstream(sp == std::string::npos ? "" : rest.substr(sp));
        }
        while (rs >> tok) {
            if (tok.rfind("lambda=", 0) == 0) {
                std::string v = tok.substr(7);
                size_t slash = v.find('/');
                if (slash == std::string::npos) lambda = Rational(v);
                else lambda = Rational(v.substr(0, slash)) / Rational(v.substr(slash + 1));
            } else if (tok.rfind("m=", 0) == 0) {
                m = std::stoi(tok.substr(2));
            } else {
                throw std::invalid_argument("band: unknown token '" + tok + "'");
            }
        }
        std::vector<Letter> letters;
        std::istringstream ws(word);
        while (ws >> tok) letters.push_back(parse_letter(p, tok));
        return make_band(p, letters, base, lambda, m);
    }

    std::vector<std::string> toks;
    {
        std::istringstream ss(t);
        std::string tok;
        while (ss >> tok) toks.push_back(tok);
    }
    if (toks.empty()) throw std::invalid_argument("empty string expression");
    int base = 0;
    if (toks.back().size() > 1 && toks.back()[0] == '@') {
        base = std::stoi(toks.back().substr(1));
        toks.pop_back();
    }
    if (toks.size() == 1 && toks[0].rfind("e@", 0) == 0) {
        std::string vn = toks[0].substr(2);
        size_t at = vn.find('@');
        if (at != std::string::npos) {
            base = std::stoi(vn.substr(at + 1));
            vn = vn.substr(0, at);
        }
        int v = p.vertex_index(vn);
        if (v < 0) throw std::invalid_argument("unknown vertex '" + vn + "'");
        return make_trivial_string(p, v, base);
    }
    std::vector<Letter> letters;
    for (const std::string& tok : toks) letters.push_back(parse_letter(p, tok));
    return make_string(p, letters, base);
}

inline std::string to_text(const Presentation& p, const GradedString& s) {
    if (s.trivial()) return "e@" + p.vertices[s.walk_vertices[0]] + "@" + std::to_string(s.mu[0]);
    std::string t;
    for (const Letter& l : s.letters) {
        if (!t.empty()) t += " ";
        t += (l.inverse ? "~" : "") + p.path_name(l.path);
    }
    return t + " @" + std::to_string(s.mu[0]);
}

inline std::string to_text(const Presentation& p, const GradedBand& b) {
    std::string t = "band(";
    for (size_t i = 0; i < b.size(); ++i) {
        if (i) t += " ";
        t += (b.letters[i].inverse ? "~" : "") + p.path_name(b.letters[i].path);
    }
    t += ")@" + std::to_string(b.mu[0]);
    t += " lambda=" + to_string(b.lambda);
    t += " m=" + std::to_string(b.m);
    return t;
}

} // namespace gentle
