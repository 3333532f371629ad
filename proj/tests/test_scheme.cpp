#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace paperfold;
using namespace pftest;

TEST_CASE("figure-1 scheme validates") {
    auto s = figure1_scheme();
    REQUIRE(s.validated);
    REQUIRE(s.total_pairing_len == Rat(2));
    REQUIRE(s.pairings[1].fold);
    REQUIRE_FALSE(s.pairings[0].fold);
}

TEST_CASE("fullness deficit is reported") {
    auto s = scheme_from_polygon(unit_square_poly());
    s.pairings.push_back(make_pairing(Rat(1), Rat(3), Rat(1)));
    s.pairings.push_back(make_pairing(Rat(2), Rat(5, 2), Rat(1, 2)));
    TailFamily<Rat> tail;
    tail.kind = TailKind::Geometric;
    tail.anchor = {0, Rat(1)};
    tail.direction = -1;
    tail.total = Rat(1, 4);  // halved: deficit 1/4
    tail.ratio = Rat(2);
    s.tails.push_back(tail);
    try {
        scheme_validate(std::move(s));
        FAIL("expected NotFull");
    } catch (const Error& e) {
        REQUIRE(e.code == Errc::NotFull);
        REQUIRE_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("0.25"));
    }
}

TEST_CASE("overlapping interiors are rejected") {
    auto s = scheme_from_polygon(unit_square_poly());
    s.pairings.push_back(make_pairing(Rat(0), Rat(1, 2), Rat(1)));  // [0,1] and [1/2,3/2] overlap
    s.pairings.push_back(make_pairing(Rat(2), Rat(3), Rat(1)));
    REQUIRE_THROWS_MATCHES(scheme_validate(std::move(s)), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code == Errc::OverlappingInteriors;
                           }));
}

TEST_CASE("length mismatch is rejected") {
    auto s = scheme_from_polygon(unit_square_poly());
    Pairing<Rat> p;
    p.a = {{0, Rat(0)}, Rat(1)};
    p.b = {{0, Rat(2)}, Rat(1, 2)};
    s.pairings.push_back(p);
    REQUIRE_THROWS_MATCHES(scheme_validate(std::move(s)), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code == Errc::LengthMismatch;
                           }));
}

TEST_CASE("tail fold data") {
    auto s = figure1_scheme();
    const auto& tail = s.tails[0];
    // a_n = 1/2^{n+1}: lengths 1/4, 1/8, ...
    REQUIRE(*tail_a_exact(tail, 1) == Rat(1, 4));
    REQUIRE(*tail_a_exact(tail, 2) == Rat(1, 8));
    auto blk = s.tail_block(tail);
    REQUIRE(blk.start.t == Rat(0));
    REQUIRE(blk.len == Rat(1));
    // N(rho) and remainder at rho = 1/8: folds 1/4, 1/8 qualify
    auto bd = tail_ball(tail, Rat(1, 8));
    REQUIRE(bd.N == 2);
    REQUIRE(bd.remainder == Rat(1, 8));

    // cantor tail of figure 2: a_n = 1/(6*3^k) for 2^k <= n < 2^{k+1}
    auto s2 = figure2_scheme();
    const auto& ct = s2.tails[0];
    REQUIRE(*tail_a_exact(ct, 1) == Rat(1, 6));
    REQUIRE(*tail_a_exact(ct, 2) == Rat(1, 18));
    REQUIRE(*tail_a_exact(ct, 3) == Rat(1, 18));
    REQUIRE(*tail_a_exact(ct, 4) == Rat(1, 54));
    // power-law bounds of the cantor sequence: (1/6) n^-log2(3) <= a_n <= (1/2) n^-log2(3)
    double k = std::log(3.0) / std::log(2.0);
    for (long n = 1; n <= 200; ++n) {
        double an = to_double(*tail_a_exact(ct, n));
        REQUIRE(an >= std::pow(double(n), -k) / 6 - 1e-15);
        REQUIRE(an <= std::pow(double(n), -k) / 2 + 1e-15);
    }
}

TEST_CASE("pairs_linked classifies interleaving") {
    auto fig1 = figure1_scheme();
    REQUIRE_FALSE(pairs_linked(fig1, fig1.pairings[0], fig1.pairings[1]));
    auto torus = torus_scheme();
    REQUIRE(pairs_linked(torus, torus.pairings[0], torus.pairings[1]));
    REQUIRE_FALSE(pairs_linked(torus, torus.pairings[0], torus.pairings[0]));
}

TEST_CASE("pairs_linked is symmetric on random plain and torus data") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 20; ++it) {
        auto s = random_plain_scheme(rng);
        for (std::size_t i = 0; i < s.pairings.size(); ++i)
            for (std::size_t j = 0; j < s.pairings.size(); ++j) {
                REQUIRE(pairs_linked(s, s.pairings[i], s.pairings[j]) ==
                        pairs_linked(s, s.pairings[j], s.pairings[i]));
                if (i != j)  // plain scheme: nothing is linked
                    REQUIRE_FALSE(pairs_linked(s, s.pairings[i], s.pairings[j]));
            }
    }
}

TEST_CASE("maximal plain arcs") {
    SECTION("figure-1: the whole boundary") {
        auto arcs = maximal_plain_arcs(figure1_scheme());
        REQUIRE(arcs.size() == 1);
        REQUIRE(arcs[0].whole_component);
    }
    SECTION("torus: none") {
        REQUIRE(maximal_plain_arcs(torus_scheme()).empty());
    }
    SECTION("crossed rectangle: the top side only") {
        auto arcs = maximal_plain_arcs(crossed_rectangle_scheme());
        REQUIRE(arcs.size() == 1);
        REQUIRE_FALSE(arcs[0].whole_component);
        REQUIRE(arcs[0].start == Rat(3));
        REQUIRE(arcs[0].len == Rat(2));
    }
}

TEST_CASE("plain arcs plus residual tile the boundary exactly") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 10; ++it) {
        auto s = random_plain_scheme(rng);
        auto dec = plain_decomposition(s);
        Rat covered(0);
        for (auto& a : dec.arcs) covered += a.len;
        Rat live(0);
        for (int i : dec.live_pairings) live += s.pairings[i].a.len * 2;
        REQUIRE(covered + live == s.components[0].length);
    }
    auto s = crossed_rectangle_scheme();
    auto dec = plain_decomposition(s);
    Rat covered(0);
    for (auto& a : dec.arcs) covered += a.len;
    Rat live(0);
    for (int i : dec.live_pairings) live += s.pairings[i].a.len * 2;
    REQUIRE(covered + live == s.components[0].length);
}

TEST_CASE("classify_topology") {
    SECTION("figure-1 and figure-2 are plain spheres") {
        auto r1 = classify_topology(figure1_scheme());
        REQUIRE(r1.classification == TopoClass::PlainSphere);
        auto r2 = classify_topology(figure2_scheme());
        REQUIRE(r2.classification == TopoClass::PlainSphere);
    }
    SECTION("torus gluing has genus 1") {
        auto r = classify_topology(torus_scheme());
        REQUIRE(r.classification == TopoClass::SurfaceGenus);
        REQUIRE(r.genus == std::vector<int>{1});
    }
    SECTION("crossed rectangle has genus 1 with a plain top") {
        auto r = classify_topology(crossed_rectangle_scheme());
        REQUIRE(r.classification == TopoClass::SurfaceGenus);
        REQUIRE(r.genus == std::vector<int>{1});
        REQUIRE(r.maximal_plain_arcs.size() == 1);
    }
    SECTION("doubled square is a plain sphere") {
        auto r = classify_topology(doubled_square_scheme());
        REQUIRE(r.classification == TopoClass::PlainSphere);
    }
    SECTION("random plain schemes are plain spheres") {
        std::mt19937_64 rng(29);
        for (int it = 0; it < 10; ++it) {
            auto r = classify_topology(random_plain_scheme(rng));
            REQUIRE(r.classification == TopoClass::PlainSphere);
        }
    }
}

TEST_CASE("crossed tails are not compact surfaces") {
    auto s = scheme_from_polygon(unit_square_poly());
    s.pairings.push_back(make_pairing(Rat(1), Rat(3), Rat(1)));
    s.pairings.push_back(make_pairing(Rat(2), Rat(5, 2), Rat(1, 2)));
    TailFamily<Rat> tail;
    tail.kind = TailKind::Geometric;
    tail.arrangement = TailArrangement::AlternatingCrossed;
    tail.anchor = {0, Rat(0)};
    tail.direction = 1;
    tail.total = Rat(1, 2);
    tail.ratio = Rat(2);
    s.tails.push_back(tail);
    auto v = scheme_validate(std::move(s));
    auto r = classify_topology(v);
    REQUIRE(r.classification == TopoClass::NotCompactSurface);
    REQUIRE_FALSE(r.maximal_unlinked_arc_count.has_value());

    // truncation oracle: realizing the first m crossed pairs explicitly
    // makes the maximal-unlinked-arc count grow with m
    std::vector<long> counts;
    for (int m = 1; m <= 3; ++m) {
        auto st = scheme_from_polygon(unit_square_poly());
        st.pairings.push_back(make_pairing(Rat(1), Rat(3), Rat(1)));
        st.pairings.push_back(make_pairing(Rat(2), Rat(5, 2), Rat(1, 2)));
        // crossed pairs A_j B_j A_j' B_j' with |A_j| = a_{2j-1}, |B_j| = a_{2j}
        Rat cursor(0);
        for (int j = 1; j <= m; ++j) {
            Rat a = *tail_a_exact(tail, 2 * j - 1), b = *tail_a_exact(tail, 2 * j);
            Pairing<Rat> A, B;
            A.a = {{0, cursor}, a};
            A.b = {{0, Rat(cursor + a + b)}, a};
            B.a = {{0, Rat(cursor + a)}, b};
            B.b = {{0, Rat(cursor + 2 * a + b)}, b};
            st.pairings.push_back(A);
            st.pairings.push_back(B);
            cursor += 2 * a + 2 * b;
        }
        // close with a fold over the rest of the bottom
        Rat rest = Rat(1) - cursor;
        st.pairings.push_back(make_pairing(cursor, Rat(cursor + rest / 2), rest / 2));
        auto sv = scheme_validate(std::move(st));
        auto dec = plain_decomposition(sv);
        counts.push_back(detail::maximal_unlinked_arc_count(spanning_tree_reduce(sv), dec.live_pairings));
    }
    REQUIRE(counts[1] > counts[0]);
    REQUIRE(counts[2] > counts[1]);
}

TEST_CASE("genus invariant under pairing subdivision") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = torus_scheme();
        std::size_t idx = rng() % s.pairings.size();
        Rat off = random_fraction(rng, 32);
        auto split = split_pairing(s, idx, Rat(off * s.pairings[idx].a.len));
        auto r = classify_topology(split);
        REQUIRE(r.classification == TopoClass::SurfaceGenus);
        REQUIRE(r.genus == std::vector<int>{1});
    }
}

TEST_CASE("spanning tree reduction") {
    SECTION("single polygon is untouched") {
        auto s = figure1_scheme();
        auto r = spanning_tree_reduce(s);
        REQUIRE(r.components.size() == 1);
        REQUIRE(r.pairings.size() == s.pairings.size());
    }
    SECTION("two squares glued along one side") {
        FoldingScheme<Rat> s;
        s.components.push_back({Rat(4), unit_square_poly()});
        s.components.push_back({Rat(4), unit_square_poly()});
        // glue right of square 0 to left of square 1, fold everything else
        Pairing<Rat> glue;
        glue.a = {{0, Rat(1)}, Rat(1)};
        glue.b = {{1, Rat(3)}, Rat(1)};
        s.pairings.push_back(glue);
        for (Rat t : {Rat(0), Rat(2), Rat(3)})
            s.pairings.push_back(make_pairing(t, Rat(t + Rat(1, 2)), Rat(1, 2), 0, 0));
        for (Rat t : {Rat(0), Rat(1), Rat(2)})
            s.pairings.push_back(make_pairing(t, Rat(t + Rat(1, 2)), Rat(1, 2), 1, 1));
        auto v = scheme_validate(std::move(s));
        auto r = spanning_tree_reduce(v);
        REQUIRE(r.components.size() == 1);
        REQUIRE(r.components[0].length == Rat(6));
        REQUIRE(r.pairings.size() == v.pairings.size() - 1);
        REQUIRE_FALSE(r.components[0].poly.has_value());
        // still full and its quotient is a plain sphere
        auto rv = scheme_validate(r);
        REQUIRE(classify_topology(rv).classification == TopoClass::PlainSphere);
    }
    SECTION("three polygons in a chain") {
        FoldingScheme<Rat> s;
        for (int i = 0; i < 3; ++i) s.components.push_back({Rat(4), unit_square_poly()});
        Pairing<Rat> g1, g2;
        g1.a = {{0, Rat(1)}, Rat(1)};
        g1.b = {{1, Rat(3)}, Rat(1)};
        g2.a = {{1, Rat(1)}, Rat(1)};
        g2.b = {{2, Rat(3)}, Rat(1)};
        s.pairings.push_back(g1);
        s.pairings.push_back(g2);
        s.pairings.push_back(make_pairing(Rat(0), Rat(1, 2), Rat(1, 2), 0, 0));
        s.pairings.push_back(make_pairing(Rat(2), Rat(5, 2), Rat(1, 2), 0, 0));
        s.pairings.push_back(make_pairing(Rat(3), Rat(7, 2), Rat(1, 2), 0, 0));
        s.pairings.push_back(make_pairing(Rat(0), Rat(1, 2), Rat(1, 2), 1, 1));
        s.pairings.push_back(make_pairing(Rat(2), Rat(5, 2), Rat(1, 2), 1, 1));
        for (Rat t : {Rat(0), Rat(1), Rat(2)})
            s.pairings.push_back(make_pairing(t, Rat(t + Rat(1, 2)), Rat(1, 2), 2, 2));
        auto v = scheme_validate(std::move(s));
        auto r = spanning_tree_reduce(v);
        REQUIRE(r.components.size() == 1);
        REQUIRE(r.pairings.size() == v.pairings.size() - 2);
        REQUIRE(r.components[0].length == Rat(8));
    }
    SECTION("disconnected union is reported") {
        FoldingScheme<Rat> s;
        s.components.push_back({Rat(4), unit_square_poly()});
        s.components.push_back({Rat(4), unit_square_poly()});
        for (int c = 0; c < 2; ++c)
            for (Rat t : {Rat(0), Rat(1), Rat(2), Rat(3)})
                s.pairings.push_back(make_pairing(t, Rat(t + Rat(1, 2)), Rat(1, 2), c, c));
        auto v = scheme_validate(std::move(s));
        REQUIRE_THROWS_MATCHES(spanning_tree_reduce(v), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code == Errc::DisconnectedUnion;
                               }));
        // classify handles the split itself
        auto rep = classify_topology(v);
        REQUIRE(rep.classification == TopoClass::PlainSphere);
        REQUIRE(rep.genus.size() == 2);
    }
}
