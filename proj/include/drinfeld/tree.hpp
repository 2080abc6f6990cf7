#pragma once
/**
 * @file tree.hpp
 * @brief The Bruhat-Tits tree of PGL_2(Q_p) and the action of GL_2 on it.
 *
 * A vertex is encoded by the closed disc b + p^{-m} Z_p of the projective
 * line (level m, offset b); the offset is normalised to the unique
 * representative in Z[1/p] with 0 <= b < p^{-m}.  The vertex (n, 0) is the
 * component attached to gamma_n = diag(1, p^n).  Group elements act on the
 * coordinate z by z -> (-b + a z)/(d - c z), so that diag(1, p^m) maps the
 * unit disc onto the disc of radius p^{m}.
 */

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scalars.hpp"

namespace drinfeld {

/** @brief A 2x2 matrix [[a, b], [c, d]] over a field. */
template <class T>
struct Mat2 {
    T a, b, c, d;

    T det() const { return a * d - b * c; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    /** @throws SingularMatrix when det = 0. */
    Mat2 inverse() const {
        T D = det();
        if (drinfeld::is_zero(D)) throw SingularMatrix("matrix is not invertible");
        return {d / D, -b / D, -c / D, a / D};
    }
    Mat2 scaled(const T& s) const { return {a * s, b * s, c * s, d * s}; }
};

/** @brief Element of GL_2(Q), viewed inside GL_2(Q_p). */
using GroupElement = Mat2<Rational>;

inline GroupElement identity_element() { return {1, 0, 0, 1}; }
/** @brief gamma_n = diag(1, p^n). */
inline GroupElement gamma_n(long n, long p) { return {1, 0, 0, p_power(p, n)}; }
/** @brief gamma_{a,n} = [[1, a p^{-n}], [0, 1]]. */
inline GroupElement gamma_an(const Rational& a, long n, long p) { return {1, a * p_power(p, -n), 0, 1}; }
/** @brief The element [[0, p], [1, 0]] acting by z -> p/z; it swaps the vertices (0,0) and (-1,0). */
inline GroupElement edge_flip(long p) { return {0, Rational(p), 1, 0}; }

/** @brief Throws SingularMatrix for det = 0. */
inline void require_invertible(const GroupElement& g) {
    if (sgn(g.det()) == 0) throw SingularMatrix("group element has zero determinant");
}

/** @brief Image of a point of P^1(Q) under the action z -> (-b + a z)/(d - c z); nullopt is infinity. */
inline std::optional<Rational> act_on_point(const GroupElement& g, const std::optional<Rational>& z) {
    if (!z) {
        if (sgn(g.c) == 0) return std::nullopt;
        return Rational(-g.a / g.c);
    }
    Rational den = g.d - g.c * *z;
    if (sgn(den) == 0) return std::nullopt;
    return Rational((-g.b + g.a * *z) / den);
}

/** @brief Vertex of the tree: the disc offset + p^{-level} Z_p. */
struct Vertex {
    long level = 0;
    Rational offset = 0;

    friend bool operator==(const Vertex& x, const Vertex& y) { return x.level == y.level && x.offset == y.offset; }
    friend bool operator!=(const Vertex& x, const Vertex& y) { return !(x == y); }
    friend bool operator<(const Vertex& x, const Vertex& y) {
        if (x.level != y.level) return x.level < y.level;
        return x.offset < y.offset;
    }
    std::string str() const { return "(" + std::to_string(level) + "," + offset.get_str() + ")"; }
};

/** @brief Representative of x modulo p^{-m} Z_p in Z[1/p] with 0 <= r < p^{-m}. */
inline Rational reduce_offset(const Rational& x, long m, long p) {
    Rational s = x * p_power(p, m);
    Integer den = s.get_den();
    Integer pt = 1;
    while (den % p == 0) {
        den /= p;
        pt *= p;
    }
    if (pt == 1) return Rational(0);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pt.get_mpz_t());
    Integer c = (Integer(s.get_num()) * inv) % pt;
    if (c < 0) c += pt;
    return Rational(c, pt) * p_power(p, -m);
}

inline Vertex make_vertex(long level, const Rational& offset, long p) { return {level, reduce_offset(offset, level, p)}; }

/** @brief The standard representative [[1, -b p^m], [0, p^m]] mapping (0,0) to (m,b). */
inline GroupElement representative(const Vertex& v, long p) {
    Rational pm = p_power(p, v.level);
    return {1, -v.offset * pm, 0, pm};
}

/**
 * @brief Vertex of g.(0,0), computed by column reduction of g over Z_p.
 * @throws SingularMatrix when det g = 0.
 */
inline Vertex canonical_vertex(const GroupElement& g, long p) {
    require_invertible(g);
    Rational alpha, beta, delta;
    if (sgn(g.c) == 0) {
        alpha = g.a, beta = g.b, delta = g.d;
    } else if (sgn(g.d) != 0 && val_p(g.d, p) <= val_p(g.c, p)) {
        Rational t = g.c / g.d;  // integral: c1 -= t c2 is a GL_2(Z_p) column move
        alpha = g.a - g.b * t, beta = g.b, delta = g.d;
    } else {
        Rational t = g.d / g.c;  // swap the columns, then reduce
        alpha = g.b - g.a * t, beta = g.a, delta = g.c;
    }
    long m = val_p(delta, p) - val_p(alpha, p);
    return make_vertex(m, -beta / delta, p);
}

/** @brief g.v for a vertex v. */
inline Vertex act_on_vertex(const GroupElement& g, const Vertex& v, long p) {
    return canonical_vertex(g * representative(v, p), p);
}

/** @brief The neighbour of v whose disc contains v's disc. */
inline Vertex parent(const Vertex& v, long p) { return make_vertex(v.level + 1, v.offset, p); }
/** @brief The c-th sub-disc of v (c = 0..p-1). */
inline Vertex child(const Vertex& v, long c, long p) {
    return make_vertex(v.level - 1, v.offset + Rational(c) * p_power(p, -v.level), p);
}
/** @brief All q+1 neighbours: parent first, then children c = 0..p-1. */
inline std::vector<Vertex> neighbors(const Vertex& v, long p) {
    std::vector<Vertex> out{parent(v, p)};
    for (long c = 0; c < p; ++c) out.push_back(child(v, c, p));
    return out;
}

/** @brief +1 for vertices at even distance from (0,0), -1 otherwise. */
inline int parity(const Vertex& v) { return (v.level % 2 == 0) ? 1 : -1; }

/** @brief Graph distance in the tree. */
inline long distance(const Vertex& u, const Vertex& v, long p) {
    // Discs of radius exponent r = -level; the smallest common disc has
    // exponent min(r_u, r_v, v(b_u - b_v)).
    long ru = -u.level, rv = -v.level;
    long r = std::min(ru, rv);
    if (u.offset != v.offset) r = std::min(r, val_p(Rational(u.offset - v.offset), p));
    return (ru - r) + (rv - r);
}

/** @brief Unordered edge, stored as (parent, child). */
struct Edge {
    Vertex parent, child;
    friend bool operator==(const Edge& x, const Edge& y) { return x.parent == y.parent && x.child == y.child; }
    friend bool operator<(const Edge& x, const Edge& y) {
        if (x.parent != y.parent) return x.parent < y.parent;
        return x.child < y.child;
    }
    std::string str() const { return "{" + parent.str() + "," + child.str() + "}"; }
};

/** @brief Edge between adjacent vertices; throws InvalidParameters otherwise. */
inline Edge make_edge(const Vertex& u, const Vertex& v, long p) {
    if (u.level == v.level + 1 && parent(v, p) == u) return {u, v};
    if (v.level == u.level + 1 && parent(u, p) == v) return {v, u};
    throw InvalidParameters("vertices " + u.str() + " and " + v.str() + " are not adjacent");
}

/** @brief The standard edge {(0,0), (-1,0)}. */
inline Edge standard_edge() { return {{0, 0}, {-1, 0}}; }

/**
 * @brief Canonical gamma with gamma.{(0,0), (-1,0)} = e, mapping (0,0) to the parent.
 *
 * It is the upper-triangular representative of the parent built from the
 * child's offset, i.e. z -> p^{-(m+1)} z + b_child.
 */
inline GroupElement edge_transporter(const Edge& e, long p) {
    return representative(Vertex{e.parent.level, e.child.offset}, p);
}

/**
 * @brief The finite subtree of all vertices within `radius` of `center`.
 *
 * Vertices are listed in breadth-first order, neighbours visited parent first
 * then children in increasing residue, so the layout is deterministic.
 */
class TruncatedTree {
public:
    TruncatedTree(long p, long radius, Vertex center = {0, 0}) : p_(p), radius_(radius), center_(center) {
        if (!is_prime(p)) throw InvalidParameters("p must be prime");
        if (radius < 0 || radius > 8) throw InvalidParameters("radius must lie in [0, 8]");
        center_ = make_vertex(center.level, center.offset, p);
        add_vertex(center_, 0);
        for (size_t i = 0; i < vertices_.size(); ++i) {
            if (dist_[i] == radius_) continue;
            for (const auto& w : neighbors(vertices_[i], p_)) {
                auto it = index_.find(w);
                if (it == index_.end()) {
                    size_t j = add_vertex(w, dist_[i] + 1);
                    edges_.push_back(make_edge(vertices_[i], w, p_));
                    edge_ends_.push_back({i, j});
                }
            }
        }
        adjacency_.assign(vertices_.size(), {});
        for (size_t e = 0; e < edge_ends_.size(); ++e) {
            adjacency_[edge_ends_[e].first].push_back(e);
            adjacency_[edge_ends_[e].second].push_back(e);
        }
    }

    long prime() const { return p_; }
    long radius() const { return radius_; }
    const Vertex& center() const { return center_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    /** @brief Vertex indices (u, v) of edge e with u discovered first. */
    const std::pair<size_t, size_t>& edge_ends(size_t e) const { return edge_ends_[e]; }
    /** @brief Edge indices incident to vertex i. */
    const std::vector<size_t>& incident_edges(size_t i) const { return adjacency_[i]; }
    long depth(size_t i) const { return dist_[i]; }
    bool is_interior(size_t i) const { return dist_[i] < radius_; }
    std::optional<size_t> index_of(const Vertex& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<size_t> edge_index(const Edge& e) const {
        for (size_t i = 0; i < edges_.size(); ++i)
            if (edges_[i] == e) return i;
        return std::nullopt;
    }
    /** @brief Vertex index of the other end of edge e seen from vertex i. */
    size_t other_end(size_t e, size_t i) const {
        return edge_ends_[e].first == i ? edge_ends_[e].second : edge_ends_[e].first;
    }
    std::vector<size_t> interior_vertices() const {
        std::vector<size_t> out;
        for (size_t i = 0; i < vertices_.size(); ++i)
            if (is_interior(i)) out.push_back(i);
        return out;
    }

    /** @brief 1 + (q+1)(q^r - 1)/(q - 1). */
    static long predicted_vertex_count(long q, long r) {
        long qr = 1;
        for (long i = 0; i < r; ++i) qr *= q;
        return 1 + (q + 1) * (qr - 1) / (q - 1);
    }

    /** @brief Connected with |E| = |V| - 1 (hence acyclic), checked by a fresh BFS. */
    bool is_tree() const {
        if (edges_.size() + 1 != vertices_.size()) return false;
        std::vector<bool> seen(vertices_.size(), false);
        std::deque<size_t> queue{0};
        seen[0] = true;
        size_t count = 1;
        while (!queue.empty()) {
            size_t i = queue.front();
            queue.pop_front();
            for (size_t e : adjacency_[i]) {
                size_t j = other_end(e, i);
                if (!seen[j]) {
                    seen[j] = true;
                    ++count;
                    queue.push_back(j);
                }
            }
        }
        return count == vertices_.size();
    }

private:
    size_t add_vertex(const Vertex& v, long d) {
        index_.emplace(v, vertices_.size());
        vertices_.push_back(v);
        dist_.push_back(d);
        return vertices_.size() - 1;
    }

    long p_, radius_;
    Vertex center_;
    std::vector<Vertex> vertices_;
    std::vector<long> dist_;
    std::map<Vertex, size_t> index_;
    std::vector<Edge> edges_;
    std::vector<std::pair<size_t, size_t>> edge_ends_;
    std::vector<std::vector<size_t>> adjacency_;
};

}  // namespace drinfeld
