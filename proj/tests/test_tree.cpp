#include <gtest/gtest.h>

#include <algorithm>
#include <climits>
#include <set>

#include "drinfeld/random.hpp"

using namespace drinfeld;

namespace {

/**
 * @brief Independent coset oracle: g and h represent the same vertex exactly
 *        when h^{-1} g lies in Q_p^* GL_2(Z_p), i.e. after scaling the entry of
 *        least valuation to a unit, all entries are integral and the
 *        determinant is a unit.
 */
bool same_vertex_class(const GroupElement& g, const GroupElement& h, long p) {
    GroupElement x = h.inverse() * g;
    long m = LONG_MAX;
    for (const Rational* e : {&x.a, &x.b, &x.c, &x.d})
        if (sgn(*e) != 0) m = std::min(m, val_p(*e, p));
    return 2 * m == val_p(x.det(), p);
}

}  // namespace

TEST(Tree, ActionExamples) {
    EXPECT_EQ(act_on_vertex(gamma_n(1, 2), {0, 0}, 2), (Vertex{1, 0}));
    EXPECT_EQ(act_on_vertex(gamma_n(-3, 3), {0, 0}, 3), (Vertex{-3, 0}));
    Sampler S(2, 5);
    for (int t = 0; t < 10; ++t) {
        Vertex v = S.vertex();
        EXPECT_EQ(act_on_vertex(identity_element(), v, 2), v);
    }
    // gamma_{1,0} gamma_{-1} for p = 2 sends (0,0) to the disc 1 + 2 Z_2, i.e. (-1, 1).
    EXPECT_EQ(act_on_vertex(gamma_an(1, 0, 2) * gamma_n(-1, 2), {0, 0}, 2), (Vertex{-1, 1}));
    EXPECT_EQ(make_vertex(-1, 3, 2), (Vertex{-1, 1}));
    EXPECT_EQ(make_vertex(1, Rational(7, 3), 3), (Vertex{1, 0}));
    EXPECT_THROW(act_on_vertex({1, 1, 1, 1}, {0, 0}, 2), SingularMatrix);
}

TEST(Tree, CanonicalVertexAgreesWithDiscOracle) {
    for (long p : {2L, 3L, 5L}) {
        Sampler S(p, 11);
        for (int t = 0; t < 50; ++t) {
            GroupElement g = S.group_element();
            Vertex v = canonical_vertex(g, p);
            EXPECT_TRUE(same_vertex_class(g, representative(v, p), p)) << v.str();
            // A neighbouring representative is never in the same class.
            EXPECT_FALSE(same_vertex_class(g, representative(parent(v, p), p), p));
        }
    }
}

TEST(Tree, LeftActionAndIsometry) {
    for (long p : {2L, 3L}) {
        Sampler S(p, 21);
        for (int t = 0; t < 40; ++t) {
            GroupElement g = S.group_element(), h = S.group_element();
            Vertex u = S.vertex(), v = S.vertex();
            EXPECT_EQ(act_on_vertex(g * h, v, p), act_on_vertex(g, act_on_vertex(h, v, p), p));
            EXPECT_EQ(distance(act_on_vertex(g, u, p), act_on_vertex(g, v, p), p), distance(u, v, p));
        }
    }
}

TEST(Tree, NeighborsAreEquivariantAndRegular) {
    for (long p : {2L, 3L, 5L}) {
        Sampler S(p, 31);
        for (int t = 0; t < 20; ++t) {
            Vertex v = S.vertex();
            auto nb = neighbors(v, p);
            EXPECT_EQ(nb.size(), static_cast<size_t>(p + 1));
            std::set<Vertex> distinct(nb.begin(), nb.end());
            EXPECT_EQ(distinct.size(), nb.size());
            for (const auto& w : nb) EXPECT_EQ(distance(v, w, p), 1);
            GroupElement g = S.group_element();
            std::set<Vertex> image, nb_of_image;
            for (const auto& w : nb) image.insert(act_on_vertex(g, w, p));
            for (const auto& w : neighbors(act_on_vertex(g, v, p), p)) nb_of_image.insert(w);
            EXPECT_EQ(image, nb_of_image);
        }
    }
    // (n, 0) is adjacent to (n+1, 0).
    for (long n = -3; n <= 3; ++n) {
        auto nb = neighbors({n, 0}, 3);
        EXPECT_NE(std::find(nb.begin(), nb.end(), Vertex{n + 1, 0}), nb.end());
    }
    auto nb = neighbors({0, 0}, 2);
    std::set<Vertex> expected = {{1, 0}, {-1, 0}, {-1, 1}};
    EXPECT_EQ(std::set<Vertex>(nb.begin(), nb.end()), expected);
}

TEST(Tree, Parity) {
    EXPECT_EQ(parity({0, 0}), 1);
    EXPECT_EQ(parity({1, 0}), -1);
    Sampler S(3, 41);
    for (int t = 0; t < 30; ++t) {
        // SL_2 elements preserve parity: products of elementary matrices.
        GroupElement g = GroupElement{1, S.rational(), 0, 1} * GroupElement{1, 0, S.rational(), 1} *
                         GroupElement{Rational(3), 0, 0, Rational(1, 3)};
        Vertex v = S.vertex();
        EXPECT_EQ(parity(act_on_vertex(g, v, 3)), parity(v));
    }
}

TEST(Tree, EdgeTransporter) {
    EXPECT_EQ(edge_transporter(standard_edge(), 2), identity_element());
    Edge e = make_edge({0, 0}, {1, 0}, 2);
    EXPECT_EQ(edge_transporter(e, 2), gamma_n(1, 2));
    EXPECT_EQ(act_on_vertex(edge_flip(3), {0, 0}, 3), (Vertex{-1, 0}));
    EXPECT_EQ(act_on_vertex(edge_flip(3), {-1, 0}, 3), (Vertex{0, 0}));
    for (long p : {2L, 3L}) {
        TruncatedTree T(p, 4);
        for (const auto& E : T.edges()) {
            GroupElement t = edge_transporter(E, p);
            EXPECT_EQ(act_on_vertex(t, {0, 0}, p), E.parent);
            EXPECT_EQ(act_on_vertex(t, {-1, 0}, p), E.child);
        }
    }
}

TEST(Tree, TruncationCounts) {
    for (long p : {2L, 3L, 5L})
        for (long r = 0; r <= 3; ++r) {
            TruncatedTree T(p, r);
            EXPECT_EQ(static_cast<long>(T.vertices().size()), TruncatedTree::predicted_vertex_count(p, r));
            EXPECT_TRUE(T.is_tree());
            for (size_t i = 0; i < T.vertices().size(); ++i) {
                if (T.is_interior(i)) {
                    EXPECT_EQ(T.incident_edges(i).size(), static_cast<size_t>(p + 1));
                } else if (r > 0) {
                    EXPECT_EQ(T.incident_edges(i).size(), 1u);
                }
                EXPECT_EQ(distance(T.vertices()[i], T.center(), p), T.depth(i));
            }
        }
    EXPECT_EQ(TruncatedTree(3, 2).vertices().size(), 17u);
    EXPECT_THROW(TruncatedTree(2, 9), InvalidParameters);
    EXPECT_THROW(TruncatedTree(4, 1), InvalidParameters);
}

TEST(Tree, OffCentreTruncation) {
    TruncatedTree T(2, 2, {3, Rational(5, 4)});
    EXPECT_EQ(T.vertices().size(), 10u);
    EXPECT_TRUE(T.is_tree());
}
