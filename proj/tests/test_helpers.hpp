#ifndef PAPERFOLD_TEST_HELPERS_HPP
#define PAPERFOLD_TEST_HELPERS_HPP

#include "paperfold/scheme.hpp"

#include <random>

namespace pftest {

using namespace paperfold;

// Unit square, boundary t in [0,4): bottom [0,1], right [1,2], top [2,3], left [3,4].
inline Polygon<Rat> unit_square_poly() {
    return polygon_validate<Rat>({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
}

inline Pairing<Rat> make_pairing(Rat sa, Rat sb, Rat len, int ca = 0, int cb = 0) {
    Pairing<Rat> p;
    p.a = {{ca, std::move(sa)}, len};
    p.b = {{cb, std::move(sb)}, len};
    return p;
}

// Vertical sides paired, top folded in half, bottom covered by a geometric
// tail of ratio 2 anchored at the bottom-right corner.
inline FoldingScheme<Rat> figure1_scheme() {
    auto s = scheme_from_polygon(unit_square_poly());
    s.pairings.push_back(make_pairing(Rat(1), Rat(3), Rat(1)));          // right <-> left
    s.pairings.push_back(make_pairing(Rat(2), Rat(5, 2), Rat(1, 2)));    // top fold
    TailFamily<Rat> tail;
    tail.kind = TailKind::Geometric;
    tail.arrangement = TailArrangement::Contiguous;
    tail.anchor = {0, Rat(1)};
    tail.direction = -1;
    tail.total = Rat(1, 2);
    tail.ratio = Rat(2);
    s.tails.push_back(tail);
    return scheme_validate(std::move(s));
}

// Same quotient with the bottom folds arranged disjointly (Cantor style).
inline FoldingScheme<Rat> figure2_scheme() {
    auto s = scheme_from_polygon(unit_square_poly());
    s.pairings.push_back(make_pairing(Rat(1), Rat(3), Rat(1)));
    s.pairings.push_back(make_pairing(Rat(2), Rat(5, 2), Rat(1, 2)));
    TailFamily<Rat> tail;
    tail.kind = TailKind::MiddleThirdsCantor;
    tail.arrangement = TailArrangement::DisjointCantorStyle;
    tail.anchor = {0, Rat(0)};
    tail.direction = 1;
    tail.total = Rat(1, 2);
    s.tails.push_back(tail);
    return scheme_validate(std::move(s));
}

// Classical torus gluing: opposite sides identified.
inline FoldingScheme<Rat> torus_scheme() {
    auto s = scheme_from_polygon(unit_square_poly());
    s.pairings.push_back(make_pairing(Rat(0), Rat(2), Rat(1)));
    s.pairings.push_back(make_pairing(Rat(1), Rat(3), Rat(1)));
    return scheme_validate(std::move(s));
}

// Every side of the square folded in half ("doubling").
inline FoldingScheme<Rat> doubled_square_scheme() {
    auto s = scheme_from_polygon(unit_square_poly());
    for (int i = 0; i < 4; ++i)
        s.pairings.push_back(make_pairing(Rat(i), Rat(2 * i + 1, 2), Rat(1, 2)));
    return scheme_validate(std::move(s));
}

// 2x1 rectangle with the top folded and left/right glued crosswise to the
// two halves of the bottom; the top side is the only plain arc.
inline FoldingScheme<Rat> crossed_rectangle_scheme() {
    auto poly = polygon_validate<Rat>({{Rat(0), Rat(0)}, {Rat(2), Rat(0)}, {Rat(2), Rat(1)}, {Rat(0), Rat(1)}});
    auto s = scheme_from_polygon(std::move(poly));
    s.pairings.push_back(make_pairing(Rat(3), Rat(4), Rat(1)));  // top fold
    s.pairings.push_back(make_pairing(Rat(2), Rat(0), Rat(1)));  // right <-> bottom-left half
    s.pairings.push_back(make_pairing(Rat(5), Rat(1), Rat(1)));  // left  <-> bottom-right half
    return scheme_validate(std::move(s));
}

// Split pairing `idx` at interior offset s of its first segment.
inline FoldingScheme<Rat> split_pairing(FoldingScheme<Rat> s, std::size_t idx, const Rat& off) {
    Pairing<Rat> p = s.pairings[idx];
    Rat len = p.a.len;
    int ca = p.a.start.component, cb = p.b.start.component;
    Pairing<Rat> first, second;
    first.a = {{ca, p.a.start.t}, off};
    first.b = {{cb, s.wrap(cb, Rat(p.b.start.t + len - off))}, off};
    second.a = {{ca, s.wrap(ca, Rat(p.a.start.t + off))}, Rat(len - off)};
    second.b = {{cb, p.b.start.t}, Rat(len - off)};
    s.pairings.erase(s.pairings.begin() + idx);
    s.pairings.push_back(first);
    s.pairings.push_back(second);
    return scheme_validate(std::move(s));
}

// ---------------------------------------------------------------------------
// Random generation with rational data.
// ---------------------------------------------------------------------------

inline Rat random_fraction(std::mt19937_64& rng, long denom = 64) {
    return Rat(1 + static_cast<long>(rng() % static_cast<unsigned long>(denom - 1)), denom);
}

// Convex polygon with rational side lengths: a zonogon built from
// Pythagorean directions.
inline Polygon<Rat> random_zonogon(std::mt19937_64& rng) {
    static const std::vector<std::pair<Pt<Rat>, Rat>> pool = {
        {{Rat(1), Rat(0)}, Rat(1)},
        {{Rat(0), Rat(1)}, Rat(1)},
        {{Rat(3), Rat(4)}, Rat(5)},
        {{Rat(4), Rat(3)}, Rat(5)},
        {{Rat(5), Rat(12)}, Rat(13)},
        {{Rat(8), Rat(15)}, Rat(17)},
        {{Rat(-3), Rat(4)}, Rat(5)},
        {{Rat(-5), Rat(12)}, Rat(13)},
    };
    std::vector<Pt<Rat>> edges;
    int k = 2 + static_cast<int>(rng() % 3);
    std::vector<int> chosen;
    while (static_cast<int>(chosen.size()) < k) {
        int c = static_cast<int>(rng() % pool.size());
        if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) chosen.push_back(c);
    }
    for (int c : chosen) {
        Rat scale = Rat(1 + static_cast<long>(rng() % 3)) / pool[c].second;
        Pt<Rat> e = pool[c].first * scale;
        edges.push_back(e);
        edges.push_back(Pt<Rat>(Rat(0), Rat(0)) - e);
    }
    std::sort(edges.begin(), edges.end(), [](const Pt<Rat>& a, const Pt<Rat>& b) {
        return std::atan2(to_double(a.y), to_double(a.x)) < std::atan2(to_double(b.y), to_double(b.x));
    });
    std::vector<Pt<Rat>> verts;
    Pt<Rat> cur(Rat(0), Rat(0));
    for (auto& e : edges) {
        verts.push_back(cur);
        cur = cur + e;
    }
    return polygon_validate(verts);
}

// Tile the arc [a, b] with an unlinked, matched family of pairings.
inline void plain_tile(std::mt19937_64& rng, const Rat& a, const Rat& b, int budget,
                       std::vector<Pairing<Rat>>& out, int component = 0) {
    Rat len = b - a;
    int mode = budget <= 1 ? 0 : static_cast<int>(rng() % 3);
    if (mode == 0) {
        Pairing<Rat> p;
        Rat half = len / 2;
        p.a = {{component, a}, half};
        p.b = {{component, Rat(a + half)}, half};
        out.push_back(p);
    } else if (mode == 1) {
        // wrap: <[a, a+l], [b-l, b]> around a tiled middle
        Rat l = len / 2 * random_fraction(rng, 8);
        Pairing<Rat> p;
        p.a = {{component, a}, l};
        p.b = {{component, Rat(b - l)}, l};
        out.push_back(p);
        plain_tile(rng, Rat(a + l), Rat(b - l), budget - 1, out, component);
    } else {
        Rat m = a + len * random_fraction(rng, 8);
        int lb = 1 + static_cast<int>(rng() % static_cast<unsigned long>(budget - 1));
        plain_tile(rng, a, m, lb, out, component);
        plain_tile(rng, m, b, budget - lb, out, component);
    }
}

inline FoldingScheme<Rat> random_plain_scheme(std::mt19937_64& rng, int max_pairings = 8) {
    auto s = scheme_from_polygon(random_zonogon(rng));
    Rat L = s.components[0].length;
    plain_tile(rng, Rat(0), L, max_pairings, s.pairings);
    return scheme_validate(std::move(s));
}

}  // namespace pftest

#endif
