#pragma once

/*
 * Exact linear algebra oracle: complexes of projectives with algebra
 * element differentials, hom spaces modulo homotopy, cones, Gaussian
 * minimization and isomorphism testing.
 *
 * P_v is the span of paths ending at v; maps P_u -> P_v act by right
 * multiplication with elements of e_u A e_v. Matrices of algebra
 * elements are written with rows as sources, so composition is F then G
 * = F * G and a chain map satisfies D_X * F = F * D_Y.
 *
 * A string with positions 0..s yields one projective P_{w_i} in degree
 * mu_i; a direct letter contributes its path from position i-1 to i, an
 * inverse letter from i to i-1. A band does the same cyclically with m
 * copies per position and a Jordan block J_m(lambda) on the last letter
 * of the stored rotation. Shift by n lowers degrees by n and flips the
 * differential sign by (-1)^n.
 */

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "algebra.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "strings.hpp"

namespace gentle {

template <typename K>
struct AlgElt {
    std::map<Path, K> terms;

    bool zero() const { return terms.empty(); }
    void add(const Path& p, const K& c) {
        if (field_traits<K>::is_zero(c)) return;
        auto it = terms.find(p);
        if (it == terms.end()) terms.emplace(p, c);
        else {
            it->second += c;
            if (field_traits<K>::is_zero(it->second)) terms.erase(it);
        }
    }
    AlgElt& operator+=(const AlgElt& o) {
        for (auto& [p, c] : o.terms) add(p, c);
        return *this;
    }
    AlgElt negated() const {
        AlgElt r;
        for (auto& [p, c] : terms) r.terms.emplace(p, -c);
        return r;
    }
    AlgElt scaled(const K& s) const {
        AlgElt r;
        for (auto& [p, c] : terms) r.add(p, c * s);
        return r;
    }
    K trivial_coeff() const {
        for (auto& [p, c] : terms)
            if (p.trivial()) return c;
        return field_traits<K>::zero();
    }
};

template <typename K>
inline AlgElt<K> alg_path(const Path& p, const K& c = field_traits<K>::one()) {
    AlgElt<K> e;
    e.add(p, c);
    return e;
}

template <typename K>
inline AlgElt<K> alg_mul(const Presentation& pres, const AlgElt<K>& x, const AlgElt<K>& y) {
    AlgElt<K> r;
    for (auto& [p, c] : x.terms)
        for (auto& [q, d] : y.terms)
            if (auto pq = pres.compose(p, q)) r.add(*pq, c * d);
    return r;
}

// inverse of a unit in e_v A e_v: nonzero trivial coefficient plus a
// nilpotent tail
template <typename K>
inline AlgElt<K> alg_inverse(const Presentation& pres, const AlgElt<K>& u, int v) {
    K c = u.trivial_coeff();
    if (field_traits<K>::is_zero(c)) throw std::domain_error("algebra element is not a unit");
    Path e = pres.trivial_path(v);
    AlgElt<K> w; // w = e - u/c, nilpotent
    w.add(e, field_traits<K>::one());
    w += u.scaled(field_traits<K>::one() / c).negated();
    AlgElt<K> inv = alg_path(e, field_traits<K>::one() / c);
    AlgElt<K> power = w;
    size_t guard = 0;
    while (!power.zero()) {
        inv += power.scaled(field_traits<K>::one() / c);
        power = alg_mul(pres, power, w);
        if (++guard > 1000) throw std::logic_error("unit inversion did not terminate");
    }
    return inv;
}

template <typename K>
struct AlgMat {
    int rows = 0, cols = 0;
    std::vector<AlgElt<K>> a;

    AlgMat() = default;
    AlgMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    AlgElt<K>& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const AlgElt<K>& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    bool zero() const {
        for (const auto& e : a)
            if (!e.zero()) return false;
        return true;
    }
};

template <typename K>
inline AlgMat<K> alg_mat_mul(const Presentation& p, const AlgMat<K>& x, const AlgMat<K>& y) {
    if (x.cols != y.rows) throw std::invalid_argument("algebra matrix size mismatch");
    AlgMat<K> r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.at(i, k).zero()) continue;
            for (int j = 0; j < y.cols; ++j) {
                if (y.at(k, j).zero()) continue;
                r.at(i, j) += alg_mul(p, x.at(i, k), y.at(k, j));
            }
        }
    return r;
}

// Bounded complex of projectives. obj[i] lists quiver vertices of the
// summands in degree lo + i; d[i] maps degree lo+i to lo+i+1.
template <typename K>
struct Complex {
    int lo = 0;
    std::vector<std::vector<int>> obj;
    std::vector<std::vector<int>> label; // parallel bookkeeping, free use
    std::vector<AlgMat<K>> d;

    bool empty() const {
        for (const auto& o : obj)
            if (!o.empty()) return false;
        return true;
    }
    int hi() const { return lo + static_cast<int>(obj.size()) - 1; }
    int size_at(int deg) const {
        int i = deg - lo;
        if (i < 0 || i >= static_cast<int>(obj.size())) return 0;
        return static_cast<int>(obj[i].size());
    }
    const std::vector<int>* objects_at(int deg) const {
        int i = deg - lo;
        if (i < 0 || i >= static_cast<int>(obj.size())) return nullptr;
        return &obj[i];
    }
};

namespace detail {

template <typename K>
inline void trim(Complex<K>& c) {
    while (!c.obj.empty() && c.obj.front().empty()) {
        c.obj.erase(c.obj.begin());
        c.label.erase(c.label.begin());
        if (!c.d.empty()) c.d.erase(c.d.begin());
        ++c.lo;
    }
    while (!c.obj.empty() && c.obj.back().empty()) {
        c.obj.pop_back();
        c.label.pop_back();
        if (!c.d.empty()) c.d.pop_back();
    }
    if (c.obj.empty()) {
        c.lo = 0;
        c.d.clear();
        c.label.clear();
    }
}

template <typename K>
inline void check_complex(const Presentation& p, const Complex<K>& c) {
    for (size_t i = 0; i + 1 < c.obj.size(); ++i) {
        const AlgMat<K>& m = c.d[i];
        if (m.rows != static_cast<int>(c.obj[i].size()) || m.cols != static_cast<int>(c.obj[i + 1].size()))
            throw std::logic_error("differential size mismatch");
        for (int a = 0; a < m.rows; ++a)
            for (int b = 0; b < m.cols; ++b)
                for (auto& [q, coef] : m.at(a, b).terms)
                    if (q.src != c.obj[i][a] || q.tgt != c.obj[i + 1][b])
                        throw std::logic_error("differential entry endpoints mismatch");
    }
    for (size_t i = 0; i + 2 < c.obj.size(); ++i)
        if (!alg_mat_mul(p, c.d[i], c.d[i + 1]).zero()) throw std::logic_error("differential does not square to zero");
}

} // namespace detail

template <typename K>
inline Complex<K> shift_complex(Complex<K> c, int n) {
    c.lo -= n;
    if (n % 2 != 0)
        for (AlgMat<K>& m : c.d)
            for (AlgElt<K>& e : m.a) e = e.negated();
    return c;
}

template <typename K>
inline Complex<K> direct_sum(const Presentation& p, const Complex<K>& x, const Complex<K>& y) {
    if (x.empty()) return y;
    if (y.empty()) return x;
    Complex<K> c;
    c.lo = std::min(x.lo, y.lo);
    int hi = std::max(x.hi(), y.hi());
    c.obj.resize(hi - c.lo + 1);
    c.label.resize(hi - c.lo + 1);
    for (int deg = c.lo; deg <= hi; ++deg) {
        auto& slot = c.obj[deg - c.lo];
        auto& lab = c.label[deg - c.lo];
        for (const Complex<K>* part : {&x, &y}) {
            int i = deg - part->lo;
            if (i >= 0 && i < static_cast<int>(part->obj.size())) {
                slot.insert(slot.end(), part->obj[i].begin(), part->obj[i].end());
                lab.insert(lab.end(), part->label[i].begin(), part->label[i].end());
            }
        }
    }
    for (int deg = c.lo; deg < hi; ++deg) {
        AlgMat<K> m(static_cast<int>(c.obj[deg - c.lo].size()), static_cast<int>(c.obj[deg + 1 - c.lo].size()));
        int row0 = 0, col0 = 0;
        for (const Complex<K>* part : {&x, &y}) {
            int i = deg - part->lo;
            int rows = (i >= 0 && i < static_cast<int>(part->obj.size())) ? static_cast<int>(part->obj[i].size()) : 0;
            int cols = (i + 1 >= 0 && i + 1 < static_cast<int>(part->obj.size()))
                           ? static_cast<int>(part->obj[i + 1].size())
                           : 0;
            if (rows && cols && i >= 0 && i < static_cast<int>(part->d.size()))
                for (int r = 0; r < rows; ++r)
                    for (int cc = 0; cc < cols; ++cc) m.at(row0 + r, col0 + cc) = part->d[i].at(r, cc);
            row0 += rows;
            col0 += cols;
        }
        c.d.push_back(std::move(m));
    }
    detail::check_complex(p, c);
    return c;
}

template <typename K>
inline Complex<K> string_complex(const Presentation& p, const GradedString& s) {
    Complex<K> c;
    int lo = *std::min_element(s.mu.begin(), s.mu.end());
    int hi = *std::max_element(s.mu.begin(), s.mu.end());
    c.lo = lo;
    c.obj.resize(hi - lo + 1);
    c.label.resize(hi - lo + 1);
    std::vector<int> slot_of(s.positions());
    for (int i = 0; i < s.positions(); ++i) {
        int deg = s.mu[i] - lo;
        slot_of[i] = static_cast<int>(c.obj[deg].size());
        c.obj[deg].push_back(s.walk_vertices[i]);
        c.label[deg].push_back(i);
    }
    for (int deg = lo; deg < hi; ++deg)
        c.d.emplace_back(static_cast<int>(c.obj[deg - lo].size()), static_cast<int>(c.obj[deg + 1 - lo].size()));
    for (size_t l = 0; l < s.letters.size(); ++l) {
        const Letter& let = s.letters[l];
        int i = static_cast<int>(l), j = static_cast<int>(l) + 1; // positions i -> j in walk order
        int from = let.inverse ? j : i;
        int to = let.inverse ? i : j;
        int deg = s.mu[from] - lo;
        c.d[deg].at(slot_of[from], slot_of[to]) += alg_path<K>(let.path);
    }
    detail::check_complex(p, c);
    return c;
}

template <typename K>
inline Complex<K> band_complex(const Presentation& p, const GradedBand& b) {
    int r = static_cast<int>(b.size());
    int m = b.m;
    K lambda = from_rational<K>(b.lambda);
    if (field_traits<K>::is_zero(lambda)) throw std::invalid_argument("band scalar is zero in this field");
    int lo = *std::min_element(b.mu.begin(), b.mu.end());
    int hi = *std::max_element(b.mu.begin(), b.mu.end());
    Complex<K> c;
    c.lo = lo;
    c.obj.resize(hi - lo + 1);
    c.label.resize(hi - lo + 1);
    std::vector<std::vector<int>> slot_of(r, std::vector<int>(m));
    for (int i = 0; i < r; ++i)
        for (int t = 0; t < m; ++t) {
            int deg = b.mu[i] - lo;
            slot_of[i][t] = static_cast<int>(c.obj[deg].size());
            c.obj[deg].push_back(b.walk_vertices[i]);
            c.label[deg].push_back(i * m + t);
        }
    for (int deg = lo; deg < hi; ++deg)
        c.d.emplace_back(static_cast<int>(c.obj[deg - lo].size()), static_cast<int>(c.obj[deg + 1 - lo].size()));
    for (int l = 1; l <= r; ++l) {
        const Letter& let = b.letters[l - 1];
        int i = l - 1, j = l % r;
        int from = let.inverse ? j : i;
        int to = let.inverse ? i : j;
        int deg = b.mu[from] - lo;
        bool jordan = (l == r);
        for (int t1 = 0; t1 < m; ++t1)
            for (int t2 = 0; t2 < m; ++t2) {
                K coef = field_traits<K>::zero();
                if (jordan) {
                    if (t1 == t2) coef = lambda;
                    else if (t2 == t1 + 1) coef = field_traits<K>::one();
                } else if (t1 == t2) {
                    coef = field_traits<K>::one();
                }
                if (!field_traits<K>::is_zero(coef))
                    c.d[deg].at(slot_of[from][t1], slot_of[to][t2]) += alg_path<K>(let.path, coef);
            }
    }
    detail::check_complex(p, c);
    return c;
}

// --- module level homology --------------------------------------------

namespace detail {

struct PathBases {
    std::vector<Path> all;
    std::vector<std::vector<int>> ending_at; // vertex -> indices into all
    std::map<std::pair<int, int>, std::vector<int>> from_to;

    explicit PathBases(const Presentation& p) {
        all = path_basis(p);
        ending_at.resize(p.vertices.size());
        for (size_t i = 0; i < all.size(); ++i) {
            ending_at[all[i].tgt].push_back(static_cast<int>(i));
            from_to[{all[i].src, all[i].tgt}].push_back(static_cast<int>(i));
        }
    }
    int index_of(const Path& q) const {
        auto it = std::lower_bound(all.begin(), all.end(), q);
        if (it == all.end() || !(*it == q)) return -1;
        return static_cast<int>(it - all.begin());
    }
};

// K-matrix of a degreewise map, column convention: M * coords(domain)
template <typename K>
inline Matrix<K> flatten_map(const Presentation& p, const PathBases& pb, const std::vector<int>& dom,
                             const std::vector<int>& cod, const AlgMat<K>& m) {
    std::vector<int> dom_off(dom.size() + 1, 0), cod_off(cod.size() + 1, 0);
    for (size_t i = 0; i < dom.size(); ++i)
        dom_off[i + 1] = dom_off[i] + static_cast<int>(pb.ending_at[dom[i]].size());
    for (size_t i = 0; i < cod.size(); ++i)
        cod_off[i + 1] = cod_off[i] + static_cast<int>(pb.ending_at[cod[i]].size());
    Matrix<K> M(cod_off.back(), dom_off.back());
    for (size_t a = 0; a < dom.size(); ++a)
        for (size_t b = 0; b < cod.size(); ++b) {
            const AlgElt<K>& e = m.at(static_cast<int>(a), static_cast<int>(b));
            if (e.zero()) continue;
            const auto& dompaths = pb.ending_at[dom[a]];
            for (size_t qi = 0; qi < dompaths.size(); ++qi) {
                const Path& q = pb.all[dompaths[qi]];
                for (auto& [x, coef] : e.terms) {
                    auto qx = p.compose(q, x);
                    if (!qx) continue;
                    const auto& codpaths = pb.ending_at[cod[b]];
                    int idx = -1;
                    for (size_t rj = 0; rj < codpaths.size(); ++rj)
                        if (pb.all[codpaths[rj]] == *qx) {
                            idx = static_cast<int>(rj);
                            break;
                        }
                    if (idx < 0) throw std::logic_error("composite path missing from basis");
                    M(cod_off[b] + idx, dom_off[a] + static_cast<int>(qi)) += coef;
                }
            }
        }
    return M;
}

} // namespace detail

// dimensions of the homology of the complex of modules, degree -> dim
template <typename K>
inline std::map<int, int> homology_dims(const Presentation& p, const Complex<K>& c) {
    std::map<int, int> h;
    if (c.empty()) return h;
    detail::PathBases pb(p);
    std::vector<int> dims, ranks;
    for (size_t i = 0; i < c.obj.size(); ++i) {
        int dim = 0;
        for (int v : c.obj[i]) dim += static_cast<int>(pb.ending_at[v].size());
        dims.push_back(dim);
    }
    for (size_t i = 0; i + 1 < c.obj.size(); ++i)
        ranks.push_back(rank(detail::flatten_map(p, pb, c.obj[i], c.obj[i + 1], c.d[i])));
    for (size_t i = 0; i < c.obj.size(); ++i) {
        int r_out = i < ranks.size() ? ranks[i] : 0;
        int r_in = i > 0 ? ranks[i - 1] : 0;
        int dim = dims[i] - r_out - r_in;
        if (dim != 0) h[c.lo + static_cast<int>(i)] = dim;
    }
    return h;
}

template <typename K>
inline bool is_acyclic(const Presentation& p, const Complex<K>& c) {
    return homology_dims(p, c).empty();
}

// --- minimization -------------------------------------------------------

// strip contractible pairs: any differential entry that is a unit
template <typename K>
inline Complex<K> minimize(const Presentation& p, Complex<K> c) {
    detail::trim(c);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < c.obj.size() && !changed; ++i) {
            AlgMat<K>& m = c.d[i];
            for (int a = 0; a < m.rows && !changed; ++a)
                for (int b = 0; b < m.cols && !changed; ++b) {
                    if (field_traits<K>::is_zero(m.at(a, b).trivial_coeff())) continue;
                    int v = c.obj[i][a];
                    AlgElt<K> u = m.at(a, b);
                    AlgElt<K> uinv = alg_inverse(p, u, v);
                    // row sweep then column sweep
                    for (int a2 = 0; a2 < m.rows; ++a2) {
                        if (a2 == a || m.at(a2, b).zero()) continue;
                        AlgElt<K> c1 = alg_mul(p, m.at(a2, b), uinv);
                        for (int b2 = 0; b2 < m.cols; ++b2)
                            m.at(a2, b2) += alg_mul(p, c1, m.at(a, b2)).negated();
                    }
                    for (int b2 = 0; b2 < m.cols; ++b2) {
                        if (b2 == b || m.at(a, b2).zero()) continue;
                        m.at(a, b2) = AlgElt<K>{};
                    }
                    // delete row a / col b of this differential, col a of the
                    // previous one, row b of the next one
                    auto drop_col = [](AlgMat<K>& mat, int col) {
                        AlgMat<K> n(mat.rows, mat.cols - 1);
                        for (int r = 0; r < mat.rows; ++r)
                            for (int cc = 0, c2 = 0; cc < mat.cols; ++cc) {
                                if (cc == col) continue;
                                n.at(r, c2++) = mat.at(r, cc);
                            }
                        mat = std::move(n);
                    };
                    auto drop_row = [](AlgMat<K>& mat, int row) {
                        AlgMat<K> n(mat.rows - 1, mat.cols);
                        for (int r = 0, r2 = 0; r < mat.rows; ++r) {
                            if (r == row) continue;
                            for (int cc = 0; cc < mat.cols; ++cc) n.at(r2, cc) = mat.at(r, cc);
                            ++r2;
                        }
                        mat = std::move(n);
                    };
                    if (i > 0) drop_col(c.d[i - 1], a);
                    if (i + 2 < c.obj.size()) drop_row(c.d[i + 1], b);
                    drop_row(m, a);
                    drop_col(m, b);
                    c.obj[i].erase(c.obj[i].begin() + a);
                    c.label[i].erase(c.label[i].begin() + a);
                    c.obj[i + 1].erase(c.obj[i + 1].begin() + b);
                    c.label[i + 1].erase(c.label[i + 1].begin() + b);
                    changed = true;
                }
        }
        if (changed) detail::trim(c);
    }
    detail::trim(c);
    if (!c.empty()) detail::check_complex(p, c);
    return c;
}

// --- chain maps and hom spaces ------------------------------------------

// degree zero chain map X -> Y; comps[i]: X^{lo+i} -> Y^{lo+i}
template <typename K>
struct ChainMap {
    int lo = 0;
    std::vector<AlgMat<K>> comps;

    const AlgMat<K>* at(int deg) const {
        int i = deg - lo;
        if (i < 0 || i >= static_cast<int>(comps.size())) return nullptr;
        return &comps[i];
    }
};

template <typename K>
inline bool is_chain_map(const Presentation& p, const Complex<K>& x, const Complex<K>& y,
                         const ChainMap<K>& f) {
    for (int deg = std::min(x.lo, y.lo) - 1; deg <= std::max(x.hi(), y.hi()) + 1; ++deg) {
        int xr = x.size_at(deg), xr1 = x.size_at(deg + 1);
        int yc = y.size_at(deg), yc1 = y.size_at(deg + 1);
        AlgMat<K> lhs(xr, yc1), rhs(xr, yc1);
        if (xr && xr1 && yc1) {
            int i = deg - x.lo;
            const AlgMat<K>* fc = f.at(deg + 1);
            if (i >= 0 && i < static_cast<int>(x.d.size()) && fc)
                lhs = alg_mat_mul(p, x.d[i], *fc);
        }
        if (xr && yc && yc1) {
            int j = deg - y.lo;
            const AlgMat<K>* fc = f.at(deg);
            if (j >= 0 && j < static_cast<int>(y.d.size()) && fc)
                rhs = alg_mat_mul(p, *fc, y.d[j]);
        }
        for (int a = 0; a < xr; ++a)
            for (int b = 0; b < yc1; ++b) {
                AlgElt<K> diff = lhs.at(a, b);
                diff += rhs.at(a, b).negated();
                if (!diff.zero()) return false;
            }
    }
    return true;
}

template <typename K>
inline Complex<K> mapping_cone_oracle(const Presentation& p, const Complex<K>& x, const Complex<K>& y,
                                      const ChainMap<K>& f) {
    if (!is_chain_map(p, x, y, f)) throw std::invalid_argument("mapping cone of a non chain map");
    Complex<K> c;
    if (x.empty() && y.empty()) return c;
    c.lo = std::min(y.empty() ? x.lo - 1 : y.lo, x.empty() ? y.lo : x.lo - 1);
    int hi = std::max(y.empty() ? x.hi() - 1 : y.hi(), x.empty() ? y.lo : x.hi() - 1);
    c.obj.resize(hi - c.lo + 1);
    c.label.resize(hi - c.lo + 1);
    auto ysize = [&](int deg) { return y.size_at(deg); };
    auto xsize = [&](int deg) { return x.size_at(deg + 1); };
    for (int deg = c.lo; deg <= hi; ++deg) {
        auto& slot = c.obj[deg - c.lo];
        auto& lab = c.label[deg - c.lo];
        if (const auto* o = y.objects_at(deg))
            for (size_t t = 0; t < o->size(); ++t) {
                slot.push_back((*o)[t]);
                lab.push_back(0);
            }
        if (const auto* o = x.objects_at(deg + 1))
            for (size_t t = 0; t < o->size(); ++t) {
                slot.push_back((*o)[t]);
                lab.push_back(1);
            }
    }
    for (int deg = c.lo; deg < hi; ++deg) {
        AlgMat<K> m(ysize(deg) + xsize(deg), ysize(deg + 1) + xsize(deg + 1));
        int iy = deg - y.lo;
        if (iy >= 0 && iy < static_cast<int>(y.d.size()))
            for (int a = 0; a < y.d[iy].rows; ++a)
                for (int b = 0; b < y.d[iy].cols; ++b) m.at(a, b) = y.d[iy].at(a, b);
        const AlgMat<K>* fc = f.at(deg + 1);
        if (fc && xsize(deg) && ysize(deg + 1))
            for (int a = 0; a < fc->rows; ++a)
                for (int b = 0; b < fc->cols; ++b) m.at(ysize(deg) + a, b) = fc->at(a, b);
        int ix = deg + 1 - x.lo;
        if (ix >= 0 && ix < static_cast<int>(x.d.size()))
            for (int a = 0; a < x.d[ix].rows; ++a)
                for (int b = 0; b < x.d[ix].cols; ++b)
                    m.at(ysize(deg) + a, ysize(deg + 1) + b) = x.d[ix].at(a, b).negated();
        c.d.push_back(std::move(m));
    }
    detail::trim(c);
    if (!c.empty()) detail::check_complex(p, c);
    return c;
}

// Hom space of degree n maps modulo homotopy, with coordinates able to
// express arbitrary chain maps in the chosen basis.
template <typename K>
struct HomSpace {
    int dim = 0;
    std::vector<ChainMap<K>> basis; // representatives, degree 0 form X -> Y[n] realized on X degrees

    // internals for express()
    struct Coord {
        int deg = 0, a = 0, b = 0, path = 0;
    };
    std::vector<Coord> coords;             // coordinates of Hom^n
    std::vector<Path> coord_paths;         // path of each coordinate
    Matrix<K> image;                       // columns spanning boundaries inside Hom^n
    std::vector<std::vector<K>> basis_vec; // coordinate vectors of basis elements
};

namespace detail {

template <typename K>
struct HomLayer {
    std::vector<typename HomSpace<K>::Coord> coords;
    std::vector<Path> paths;
    std::map<std::tuple<int, int, int, std::vector<int>>, int> index; // deg, a, b, arrows
};

template <typename K>
inline HomLayer<K> hom_layer(const Presentation& p, const detail::PathBases& pb, const Complex<K>& x,
                             const Complex<K>& y, int n) {
    HomLayer<K> layer;
    for (int deg = x.lo; deg <= x.hi(); ++deg) {
        const auto* xo = x.objects_at(deg);
        const auto* yo = y.objects_at(deg + n);
        if (!xo || !yo) continue;
        for (size_t a = 0; a < xo->size(); ++a)
            for (size_t b = 0; b < yo->size(); ++b) {
                auto it = pb.from_to.find({(*xo)[a], (*yo)[b]});
                if (it == pb.from_to.end()) continue;
                for (int pi : it->second) {
                    layer.index[{deg, static_cast<int>(a), static_cast<int>(b), pb.all[pi].arrows}] =
                        static_cast<int>(layer.coords.size());
                    layer.coords.push_back({deg, static_cast<int>(a), static_cast<int>(b), pi});
                    layer.paths.push_back(pb.all[pi]);
                }
            }
    }
    return layer;
}

// matrix of delta^n : Hom^n -> Hom^{n+1}, column convention
template <typename K>
inline Matrix<K> hom_delta(const Presentation& p, const detail::PathBases& pb, const Complex<K>& x,
                           const Complex<K>& y, int n, const HomLayer<K>& from, const HomLayer<K>& to) {
    Matrix<K> D(static_cast<int>(to.coords.size()), static_cast<int>(from.coords.size()));
    K sign = (n % 2 == 0) ? -field_traits<K>::one() : field_traits<K>::one(); // -(-1)^n
    for (size_t ci = 0; ci < from.coords.size(); ++ci) {
        const auto& co = from.coords[ci];
        const Path& q = from.paths[ci];
        // d_X * f: output at degree co.deg - 1
        {
            int i = co.deg - 1 - x.lo;
            if (i >= 0 && i < static_cast<int>(x.d.size())) {
                const AlgMat<K>& dm = x.d[i];
                for (int a2 = 0; a2 < dm.rows; ++a2) {
                    const AlgElt<K>& e = dm.at(a2, co.a);
                    for (auto& [xp, coef] : e.terms) {
                        auto comp = p.compose(xp, q);
                        if (!comp) continue;
                        auto it = to.index.find({co.deg - 1, a2, co.b, comp->arrows});
                        if (it == to.index.end()) throw std::logic_error("hom coordinate missing");
                        D(it->second, static_cast<int>(ci)) += coef;
                    }
                }
            }
        }
        // -(-1)^n f * d_Y: output at degree co.deg
        {
            int j = co.deg + n - y.lo;
            if (j >= 0 && j < static_cast<int>(y.d.size())) {
                const AlgMat<K>& dm = y.d[j];
                for (int b2 = 0; b2 < dm.cols; ++b2) {
                    const AlgElt<K>& e = dm.at(co.b, b2);
                    for (auto& [yp, coef] : e.terms) {
                        auto comp = p.compose(q, yp);
                        if (!comp) continue;
                        auto it = to.index.find({co.deg, co.a, b2, comp->arrows});
                        if (it == to.index.end()) throw std::logic_error("hom coordinate missing");
                        D(it->second, static_cast<int>(ci)) += sign * coef;
                    }
                }
            }
        }
    }
    return D;
}

} // namespace detail

// maps X -> Y of degree n modulo homotopy; basis realized as chain maps
// X -> Y[n] is only materialized for n = 0
template <typename K>
inline HomSpace<K> hom_space(const Presentation& p, const Complex<K>& x, const Complex<K>& y, int n = 0) {
    HomSpace<K> H;
    detail::PathBases pb(p);
    auto layer0 = detail::hom_layer<K>(p, pb, x, y, n);
    auto layer1 = detail::hom_layer<K>(p, pb, x, y, n + 1);
    auto layerm = detail::hom_layer<K>(p, pb, x, y, n - 1);
    H.coords = layer0.coords;
    H.coord_paths = layer0.paths;
    if (layer0.coords.empty()) return H;

    Matrix<K> D0 = detail::hom_delta(p, pb, x, y, n, layer0, layer1);
    Matrix<K> Dm = detail::hom_delta(p, pb, x, y, n - 1, layerm, layer0);
    Matrix<K> Z = right_nullspace(D0);
    int rk_b = rank(Dm);

    H.dim = Z.cols - rk_b;
    H.image = Dm;

    // choose nullspace columns extending the boundary space
    Matrix<K> M(static_cast<int>(layer0.coords.size()), Dm.cols + Z.cols);
    for (int r = 0; r < M.rows; ++r) {
        for (int cc = 0; cc < Dm.cols; ++cc) M(r, cc) = Dm(r, cc);
        for (int cc = 0; cc < Z.cols; ++cc) M(r, Dm.cols + cc) = Z(r, cc);
    }
    std::vector<int> piv = rref(M);
    for (int col : piv) {
        if (col < Dm.cols) continue;
        std::vector<K> vec(layer0.coords.size());
        for (size_t r = 0; r < layer0.coords.size(); ++r) vec[r] = Z(static_cast<int>(r), col - Dm.cols);
        H.basis_vec.push_back(vec);
    }
    if (static_cast<int>(H.basis_vec.size()) != H.dim) throw std::logic_error("hom basis extraction failed");

    for (const auto& vec : H.basis_vec) {
        ChainMap<K> f;
        f.lo = x.lo;
        for (int deg = x.lo; deg <= x.hi(); ++deg)
            f.comps.emplace_back(x.size_at(deg), y.size_at(deg + n));
        for (size_t ci = 0; ci < vec.size(); ++ci) {
            if (field_traits<K>::is_zero(vec[ci])) continue;
            const auto& co = H.coords[ci];
            f.comps[co.deg - x.lo].at(co.a, co.b).add(H.coord_paths[ci], vec[ci]);
        }
        H.basis.push_back(std::move(f));
    }
    return H;
}

template <typename K>
inline int hom_dim(const Presentation& p, const Complex<K>& x, const Complex<K>& y, int n = 0) {
    return hom_space(p, x, y, n).dim;
}

// coefficients of the homotopy class of f in the basis of H
template <typename K>
inline std::optional<std::vector<K>> express(const Presentation& p, const HomSpace<K>& H,
                                             const Complex<K>& x, const Complex<K>& y, const ChainMap<K>& f) {
    if (!is_chain_map(p, x, y, f)) return std::nullopt;
    std::vector<K> target(H.coords.size(), field_traits<K>::zero());
    for (size_t ci = 0; ci < H.coords.size(); ++ci) {
        const auto& co = H.coords[ci];
        const AlgMat<K>* comp = f.at(co.deg);
        if (!comp || co.a >= comp->rows || co.b >= comp->cols) continue;
        auto it = comp->at(co.a, co.b).terms.find(H.coord_paths[ci]);
        if (it != comp->at(co.a, co.b).terms.end()) target[ci] = it->second;
    }
    int k = static_cast<int>(H.basis_vec.size());
    Matrix<K> M(static_cast<int>(H.coords.size()), k + H.image.cols);
    for (int r = 0; r < M.rows; ++r) {
        for (int cc = 0; cc < k; ++cc) M(r, cc) = H.basis_vec[cc][r];
        for (int cc = 0; cc < H.image.cols; ++cc) M(r, k + cc) = H.image(r, cc);
    }
    auto sol = solve(M, target);
    if (!sol) return std::nullopt;
    return std::vector<K>(sol->begin(), sol->begin() + k);
}

template <typename K>
inline ChainMap<K> scale_combination(const std::vector<ChainMap<K>>& basis, const std::vector<K>& c) {
    ChainMap<K> f;
    if (basis.empty()) return f;
    f.lo = basis[0].lo;
    for (const AlgMat<K>& m : basis[0].comps) f.comps.emplace_back(m.rows, m.cols);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t d = 0; d < basis[i].comps.size(); ++d)
            for (size_t e = 0; e < basis[i].comps[d].a.size(); ++e)
                f.comps[d].a[e] += basis[i].comps[d].a[e].scaled(c[i]);
    return f;
}

/// zero object test: bounded complexes of projectives are contractible
// exactly when they are acyclic
template <typename K>
inline bool is_zero_object(const Presentation& p, const Complex<K>& c) {
    return c.empty() || is_acyclic(p, c);
}

template <typename K>
inline bool is_isomorphic(const Presentation& p, const Complex<K>& x0, const Complex<K>& y0) {
    Complex<K> x = minimize(p, x0);
    Complex<K> y = minimize(p, y0);
    if (x.empty() || y.empty()) return x.empty() && y.empty();
    if (x.lo != y.lo || x.obj.size() != y.obj.size()) return false;
    for (size_t i = 0; i < x.obj.size(); ++i) {
        std::vector<int> a = x.obj[i], b = y.obj[i];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    if (homology_dims(p, x) != homology_dims(p, y)) return false;

    HomSpace<K> H = hom_space(p, x, y, 0);
    if (H.dim == 0) return false;
    auto try_combo = [&](const std::vector<K>& c) {
        ChainMap<K> f = scale_combination(H.basis, c);
        Complex<K> cone = mapping_cone_oracle(p, x, y, f);
        return is_zero_object(p, cone);
    };
    int k = H.dim;
    for (int i = 0; i < k; ++i) {
        std::vector<K> c(k, field_traits<K>::zero());
        c[i] = field_traits<K>::one();
        if (try_combo(c)) return true;
    }
    for (int t = 1; t <= 8; ++t) {
        std::vector<K> c(k);
        K acc = field_traits<K>::one();
        for (int i = 0; i < k; ++i) {
            c[i] = acc;
            acc = acc * K(t);
        }
        if (try_combo(c)) return true;
    }
    std::mt19937 rng(20240816);
    for (int att = 0; att < 40; ++att) {
        std::vector<K> c(k);
        for (int i = 0; i < k; ++i) c[i] = K(static_cast<long long>(rng() % 1000003));
        if (try_combo(c)) return true;
    }
    return false;
}

// per degree summand multiset of the minimal model, for reporting
template <typename K>
inline std::map<int, std::vector<int>> minimal_summands(const Presentation& p, const Complex<K>& c) {
    Complex<K> m = minimize(p, c);
    std::map<int, std::vector<int>> out;
    for (size_t i = 0; i < m.obj.size(); ++i) {
        if (m.obj[i].empty()) continue;
        std::vector<int> v = m.obj[i];
        std::sort(v.begin(), v.end());
        out[m.lo + static_cast<int>(i)] = v;
    }
    return out;
}

} // namespace gentle
