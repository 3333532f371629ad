#ifndef PAPERFOLD_HORSESHOE_HPP
#define PAPERFOLD_HORSESHOE_HPP

#include "paperfold/ball_profile.hpp"
#include "paperfold/scar.hpp"

namespace paperfold {

// ---------------------------------------------------------------------------
// The tight horseshoe scheme on the unit square: top and right sides folded
// in half, bottom and left sides covered by geometric folds of ratio 2
// shrinking towards the bottom-left corner.  Its scar is an infinity-od with
// two branches of length 1/2^i for every i >= 1.
// ---------------------------------------------------------------------------

inline FoldingScheme<Rat> tight_horseshoe_scheme() {
    auto poly = polygon_validate<Rat>({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
    auto s = scheme_from_polygon(std::move(poly));
    // right side [1,2] and top side [2,3] folded in half
    Pairing<Rat> right, top;
    right.a = {{0, Rat(1)}, Rat(1, 2)};
    right.b = {{0, Rat(3, 2)}, Rat(1, 2)};
    top.a = {{0, Rat(2)}, Rat(1, 2)};
    top.b = {{0, Rat(5, 2)}, Rat(1, 2)};
    s.pairings.push_back(right);
    s.pairings.push_back(top);
    // bottom [0,1]: folds 1/4, 1/8, ... shrinking from (1,0) towards (0,0)
    TailFamily<Rat> bottom;
    bottom.kind = TailKind::Geometric;
    bottom.arrangement = TailArrangement::Contiguous;
    bottom.anchor = {0, Rat(1)};
    bottom.direction = -1;
    bottom.total = Rat(1, 2);
    bottom.ratio = Rat(2);
    s.tails.push_back(bottom);
    // left side [3,4]: folds shrinking from (0,1) towards (0,0)
    TailFamily<Rat> left = bottom;
    left.anchor = {0, Rat(3)};
    left.direction = 1;
    s.tails.push_back(left);
    return scheme_validate(std::move(s));
}

// The (discontinuous, non-injective) square map whose identifications the
// tight horseshoe realizes: first coordinate is the full tent map, vertical
// contraction by 1/2.
template <class R> Pt<R> F_map(const Pt<R>& p) {
    if (p.x <= R(1) / R(2)) return {R(2) * p.x, p.y / R(2)};
    return {R(2) * (R(1) - p.x), R(1) - p.y / R(2)};
}

}  // namespace paperfold

#endif  // PAPERFOLD_HORSESHOE_HPP
