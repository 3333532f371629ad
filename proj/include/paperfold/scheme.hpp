#ifndef PAPERFOLD_SCHEME_HPP
#define PAPERFOLD_SCHEME_HPP

#include "paperfold/geometry.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace paperfold {

template <class T> struct BoundaryPos {
    int component = 0;
    T t{};
};

// Boundary arc [start, start+len) in the counterclockwise direction.  After
// plain-arc collapse "segment" means boundary arc, so these may span polygon
// corners.
template <class T> struct BSeg {
    BoundaryPos<T> start;
    T len{};
    T end_t(const T& L) const {
        T e = start.t + len;
        while (e >= L) e -= L;
        return e;
    }
};

// <alpha, alpha'>: length-preserving, orientation-reversing on the boundary.
// Point a.start+s is identified with b.start+(len-s).
template <class T> struct Pairing {
    BSeg<T> a, b;
    bool fold = false;
};

enum class TailKind { Geometric, PowerLaw, MiddleThirdsCantor };
enum class TailArrangement { Contiguous, DisjointCantorStyle, AlternatingCrossed };

// Countable family of folds with lengths a_1 > a_2 > ... -> 0 covering a
// boundary arc of length 2*total.  The block starts at the anchor and
// extends in the given direction; for Contiguous arrangements the folds
// shrink away from the anchor.
template <class T> struct TailFamily {
    TailKind kind = TailKind::Geometric;
    TailArrangement arrangement = TailArrangement::Contiguous;
    BoundaryPos<T> anchor;
    int direction = 1;  // +1 ccw, -1 cw
    T total{};          // sum of fold lengths = half the covered arc
    T ratio{};          // Geometric lambda > 1
    double exponent = 0;  // PowerLaw k > 1

    T geometric_scale() const { return T(total * (ratio - T(1))); }
    T cantor_scale() const { return T(total / T(3)); }
};

namespace tail_detail {

// zeta(k) for k > 1 by explicit summation plus an integral bracket.
inline double zeta(double k) {
    double s = 0;
    long N = 2000;
    for (long n = 1; n <= N; ++n) s += std::pow(double(n), -k);
    // integral remainder bracket midpoint: between 1/((k-1)(N+1)^{k-1}) and 1/((k-1)N^{k-1})
    double lo = std::pow(double(N + 1), 1 - k) / (k - 1);
    double hi = std::pow(double(N), 1 - k) / (k - 1);
    return s + (lo + hi) / 2;
}

}  // namespace tail_detail

// n-th fold length (1-based).
template <class T> real_t<T> tail_a(const TailFamily<T>& f, long n) {
    using R = real_t<T>;
    switch (f.kind) {
        case TailKind::Geometric: {
            R c = to_real(f.geometric_scale());
            return c / pow(to_real(f.ratio), R(static_cast<double>(n)));
        }
        case TailKind::MiddleThirdsCantor: {
            int k = 0;
            long m = n;
            while (m >= 2) { m /= 2; ++k; }
            return to_real(f.cantor_scale()) / pow(R(3), R(k));
        }
        case TailKind::PowerLaw: {
            double c = to_double(f.total) / tail_detail::zeta(f.exponent);
            return R(c * std::pow(double(n), -f.exponent));
        }
    }
    return R(0);
}

// Exact fold length where the kind admits one (Geometric, Cantor).
template <class T> std::optional<T> tail_a_exact(const TailFamily<T>& f, long n) {
    if (f.kind == TailKind::Geometric) {
        T c = f.geometric_scale();
        T p(1);
        for (long i = 0; i < n; ++i) p *= f.ratio;
        return T(c / p);
    }
    if (f.kind == TailKind::MiddleThirdsCantor) {
        int k = 0;
        long m = n;
        while (m >= 2) { m /= 2; ++k; }
        T p(1);
        for (int i = 0; i < k; ++i) p *= T(3);
        return T(f.cantor_scale() / p);
    }
    return std::nullopt;
}

// N(rho) = #{ n : a_n >= rho } and the remainder sum_{n > N} a_n.
// Exact for Geometric and Cantor kinds; PowerLaw is evaluated in floating
// point with an integral-bracketed remainder (error well below 1e-12 of the
// total measure for the ranges used here).
template <class T> struct TailBallData {
    long N = 0;
    T remainder{};        // exact kinds
    real_t<T> remainder_approx{};  // all kinds
    bool exact = true;
};

template <class T> TailBallData<T> tail_ball(const TailFamily<T>& f, const T& rho) {
    TailBallData<T> out;
    if (rho <= 0) fail(Errc::OutOfRange, "tail_ball needs rho > 0");
    switch (f.kind) {
        case TailKind::Geometric: {
            // a_n = c/lambda^n >= rho  <=>  lambda^n <= c/rho
            T c = f.geometric_scale();
            long N = 0;
            T p = f.ratio;  // lambda^{N+1}
            while (c >= rho * p) { ++N; p *= f.ratio; }
            // remainder = c * lambda^{-N} / (lambda - 1) ... sum_{n>N} c/l^n
            T lam_N(1);
            for (long i = 0; i < N; ++i) lam_N *= f.ratio;
            out.N = N;
            out.remainder = T(c / (lam_N * (f.ratio - T(1))));
            out.remainder_approx = to_real(out.remainder);
            return out;
        }
        case TailKind::MiddleThirdsCantor: {
            // a_n = c/3^k on 2^k <= n < 2^{k+1}
            T c = f.cantor_scale();
            long K = -1;
            T p(1);  // 3^{K+1}
            while (c >= rho * p) { ++K; p *= T(3); }
            if (K < 0) {
                out.N = 0;
                out.remainder = f.total;
            } else {
                out.N = (2L << K) - 1;  // 2^{K+1} - 1
                // sum_{k > K} 2^k c / 3^k = 3c (2/3)^{K+1}
                T q(1);
                for (long i = 0; i <= K; ++i) q = T(q * T(2) / T(3));
                out.remainder = T(T(3) * c * q);
            }
            out.remainder_approx = to_real(out.remainder);
            return out;
        }
        case TailKind::PowerLaw: {
            using R = real_t<T>;
            double c = to_double(f.total) / tail_detail::zeta(f.exponent);
            double r = to_double(rho);
            long N = r >= c ? 0 : static_cast<long>(std::floor(std::pow(c / r, 1.0 / f.exponent)));
            while (N > 0 && c * std::pow(double(N), -f.exponent) < r) --N;
            while (c * std::pow(double(N + 1), -f.exponent) >= r) ++N;
            double k = f.exponent;
            // sum_{n>N} c n^{-k}: sum a stretch explicitly, bracket the rest
            long M = N + 4000;
            double s = 0;
            for (long n = N + 1; n <= M; ++n) s += c * std::pow(double(n), -k);
            double lo = c * std::pow(double(M + 1), 1 - k) / (k - 1);
            double hi = c * std::pow(double(M), 1 - k) / (k - 1);
            out.N = N;
            out.exact = false;
            out.remainder_approx = R(s + (lo + hi) / 2);
            out.remainder = T(0);
            return out;
        }
    }
    return out;
}

// Arc-length position of the n-th folding point, measured from the anchor
// (a nonnegative offset; the caller applies the direction).
template <class T> T tail_tip_offset(const TailFamily<T>& f, long n) {
    if (f.arrangement == TailArrangement::Contiguous) {
        T off(0);
        for (long j = 1; j < n; ++j) {
            auto a = tail_a_exact(f, j);
            if (!a) fail(Errc::Unsupported, "exact tip positions need an exact tail kind");
            off += T(*a * T(2));
        }
        auto an = tail_a_exact(f, n);
        if (!an) fail(Errc::Unsupported, "exact tip positions need an exact tail kind");
        return T(off + *an);
    }
    if (f.arrangement == TailArrangement::DisjointCantorStyle) {
        // folds sit in the removed middle thirds of the block [0, 2*total]
        int k = 0;
        long m = n;
        while (m >= 2) { m /= 2; ++k; }
        long j = n - (1L << k);  // 0-based index within level k
        T lo(0), len(f.total * T(2));
        for (int bit = k - 1; bit >= 0; --bit) {
            len = T(len / T(3));
            if ((j >> bit) & 1) lo += T(len * T(2));
        }
        return T(lo + len / T(2));  // centre of the middle third of [lo, lo+len]
    }
    fail(Errc::Unsupported, "crossed tails have no folding points");
}

// ---------------------------------------------------------------------------
// Folding scheme (P, collection of pairings + parametric tails).
// ---------------------------------------------------------------------------

template <class T> struct Component {
    T length{};
    std::optional<Polygon<T>> poly;  // absent for abstract disks after reduction
};

template <class T> struct FoldingScheme {
    std::vector<Component<T>> components;
    std::vector<Pairing<T>> pairings;
    std::vector<TailFamily<T>> tails;
    T total_pairing_len{};
    bool validated = false;

    const T& L(int c) const { return components[c].length; }
    T wrap(int c, T t) const {
        const T& len = components[c].length;
        while (t < 0) t += len;
        while (t >= len) t -= len;
        return t;
    }
    T total_boundary() const {
        T s(0);
        for (auto& c : components) s += c.length;
        return s;
    }
    BSeg<T> tail_block(const TailFamily<T>& f) const {
        T blocklen = f.total * T(2);
        if (f.direction > 0) return {f.anchor, blocklen};
        return {{f.anchor.component, wrap(f.anchor.component, T(f.anchor.t - blocklen))}, blocklen};
    }
};

template <class T> FoldingScheme<T> scheme_from_polygon(Polygon<T> poly) {
    FoldingScheme<T> s;
    Component<T> c;
    c.length = poly.boundary_len;
    c.poly = std::move(poly);
    s.components.push_back(std::move(c));
    return s;
}

namespace detail {

// Linear pieces of a cyclic arc, for exact interval arithmetic.
template <class T>
std::vector<std::pair<T, T>> arc_pieces(const T& L, T start, const T& len) {
    while (start < 0) start += L;
    while (start >= L) start -= L;
    T end = start + len;
    if (end <= L) return {{start, end}};
    return {{start, L}, {T(0), T(end - L)}};
}

template <class T>
T overlap_len(const std::vector<std::pair<T, T>>& A, const std::vector<std::pair<T, T>>& B) {
    T s(0);
    for (auto& a : A)
        for (auto& b : B) {
            T lo = std::max(a.first, b.first), hi = std::min(a.second, b.second);
            if (hi > lo) s += T(hi - lo);
        }
    return s;
}

// Is t in the closed cyclic arc [start, start+len]?
template <class T> bool arc_contains(const T& L, const T& start, const T& len, T t) {
    T d = t - start;
    while (d < 0) d += L;
    while (d >= L) d -= L;
    return d <= len;
}

}  // namespace detail

// All covered arcs (pairing segments and tail blocks) per component, for
// disjointness and tiling checks.
template <class T>
std::vector<std::vector<BSeg<T>>> covered_arcs(const FoldingScheme<T>& s) {
    std::vector<std::vector<BSeg<T>>> per(s.components.size());
    for (auto& p : s.pairings) {
        per[p.a.start.component].push_back(p.a);
        per[p.b.start.component].push_back(p.b);
    }
    for (auto& f : s.tails) {
        BSeg<T> b = s.tail_block(f);
        per[b.start.component].push_back(b);
    }
    return per;
}

template <class T> FoldingScheme<T> scheme_validate(FoldingScheme<T> s) {
    // per-pairing sanity
    for (auto& p : s.pairings) {
        if (!(p.a.len > 0) || !(p.b.len > 0)) fail(Errc::LengthMismatch, "empty segment in pairing");
        if (!near(p.a.len, p.b.len)) fail(Errc::LengthMismatch, "paired segments have different lengths");
        // normalize the fold flag: fold <=> exactly one shared endpoint
        int shared = 0;
        if (p.a.start.component == p.b.start.component) {
            const T& L = s.L(p.a.start.component);
            T a0 = p.a.start.t, a1 = s.wrap(p.a.start.component, T(p.a.start.t + p.a.len));
            T b0 = p.b.start.t, b1 = s.wrap(p.b.start.component, T(p.b.start.t + p.b.len));
            (void)L;
            for (const T& x : {a0, a1})
                for (const T& y : {b0, b1})
                    if (near(x, y)) ++shared;
        }
        p.fold = (shared == 1);
    }
    for (auto& f : s.tails) {
        if (!(f.total > 0)) fail(Errc::LengthMismatch, "tail with nonpositive total");
        if (f.kind == TailKind::Geometric && !(f.ratio > 1)) fail(Errc::LengthMismatch, "geometric tail needs ratio > 1");
        if (f.kind == TailKind::PowerLaw && !(f.exponent > 1)) fail(Errc::LengthMismatch, "power-law tail needs exponent > 1");
        if (f.direction != 1 && f.direction != -1) fail(Errc::LengthMismatch, "tail direction must be +-1");
    }

    // interior disjointness
    auto per = covered_arcs(s);
    for (std::size_t c = 0; c < per.size(); ++c) {
        const T& L = s.components[c].length;
        std::vector<std::pair<T, T>> pieces;
        for (auto& seg : per[c]) {
            if (seg.len > L + scalar_traits<T>::tol()) fail(Errc::OverlappingInteriors, "segment longer than component");
            auto ps = detail::arc_pieces(L, seg.start.t, seg.len);
            pieces.insert(pieces.end(), ps.begin(), ps.end());
        }
        std::sort(pieces.begin(), pieces.end());
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
            if (pieces[i + 1].first < pieces[i].second - scalar_traits<T>::tol())
                fail(Errc::OverlappingInteriors, "segments overlap on component " + std::to_string(c));
    }

    // fullness: |P| = half the boundary length
    T tot(0);
    for (auto& p : s.pairings) tot += p.a.len;
    for (auto& f : s.tails) tot += f.total;
    s.total_pairing_len = tot;
    T half = s.total_boundary() / T(2);
    if (!near(tot, half)) {
        fail(Errc::NotFull, "scheme not full: |P| = " + std::to_string(to_double(tot)) +
                                ", needed " + std::to_string(to_double(half)) +
                                " (deficit " + std::to_string(to_double(T(half - tot))) + ")");
    }
    s.validated = true;
    return s;
}

// ---------------------------------------------------------------------------
// Linking.  Two pairings are linked iff their segments interleave in the
// cyclic boundary order: the circle decomposes as a1, gapA, b1, gapB, and
// the pairings are linked exactly when one segment of the second pairing
// lies in each gap.
// ---------------------------------------------------------------------------

template <class T>
bool pairs_linked(const FoldingScheme<T>& s, const Pairing<T>& p, const Pairing<T>& q) {
    int c = p.a.start.component;
    if (p.b.start.component != c || q.a.start.component != c || q.b.start.component != c) return false;
    const T& L = s.components[c].length;
    auto same = [&](const BSeg<T>& x, const BSeg<T>& y) {
        return near(x.start.t, y.start.t) && near(x.len, y.len);
    };
    if ((same(p.a, q.a) && same(p.b, q.b)) || (same(p.a, q.b) && same(p.b, q.a))) return false;

    T e1 = s.wrap(c, T(p.a.start.t + p.a.len));  // end of a1 -> gapA -> b1
    T gapA_len = s.wrap(c, T(p.b.start.t - e1));

    auto in_gapA = [&](const BSeg<T>& seg) {
        T mid = s.wrap(c, T(seg.start.t + seg.len / T(2)));
        return detail::arc_contains(L, e1, gapA_len, mid);
    };
    bool a_in_A = in_gapA(q.a), b_in_A = in_gapA(q.b);
    return a_in_A != b_in_A;
}

// ---------------------------------------------------------------------------
// Maximal plain arcs via the collapse fixpoint: folds and tail blocks are
// plain; a pairing whose enclosed gap carries no live material closes off a
// plain arc and dies; adjacent dead arcs merge.  At the fixpoint the dead
// set is exactly the union of maximal plain arcs.
// ---------------------------------------------------------------------------

template <class T> struct BArc {
    int component = 0;
    T start{};
    T len{};
    bool whole_component = false;
};

namespace detail {

template <class T> struct DeadSet {
    // disjoint closed intervals in [0, L], kept sorted and merged
    std::vector<std::pair<T, T>> iv;
    T L;
    bool whole = false;
    explicit DeadSet(T L_) : L(std::move(L_)) {}

    void add(const T& start, const T& len) {
        if (whole) return;
        if (len >= L) { whole = true; iv.clear(); return; }
        for (auto& piece : arc_pieces(L, start, len)) insert_linear(piece.first, piece.second);
        // merge across the wrap point
        if (iv.size() >= 2 && iv.front().first == T(0) && iv.back().second == L) {
            // keep as two linear pieces; measure and queries handle the seam
        }
        T m(0);
        for (auto& p : iv) m += T(p.second - p.first);
        if (m >= L) { whole = true; iv.clear(); }
    }

    void insert_linear(T a, T b) {
        std::vector<std::pair<T, T>> out;
        for (auto& p : iv) {
            if (p.second < a || p.first > b) { out.push_back(p); continue; }
            a = std::min(a, p.first);
            b = std::max(b, p.second);
        }
        out.push_back({a, b});
        std::sort(out.begin(), out.end());
        iv = std::move(out);
    }

    T measure_in(const T& start, const T& len) const {
        if (whole) return len;
        auto pieces = arc_pieces(L, start, len);
        return overlap_len(pieces, iv);
    }

    bool covers(const T& start, const T& len) const {
        if (whole) return true;
        return measure_in(start, len) >= len - scalar_traits<T>::tol();
    }
};

}  // namespace detail

template <class T> struct PlainDecomposition {
    std::vector<BArc<T>> arcs;            // maximal plain arcs, original coordinates
    std::vector<int> live_pairings;       // indices into scheme.pairings
    std::vector<bool> component_plain;    // whole boundary component plain?
    std::vector<detail::DeadSet<T>> dead;
};

template <class T> PlainDecomposition<T> plain_decomposition(const FoldingScheme<T>& s) {
    const int NC = static_cast<int>(s.components.size());
    PlainDecomposition<T> out;
    for (int c = 0; c < NC; ++c) out.dead.emplace_back(s.components[c].length);

    // tail blocks are plain unless deliberately crossed
    for (auto& f : s.tails) {
        if (f.arrangement == TailArrangement::AlternatingCrossed) continue;
        BSeg<T> b = s.tail_block(f);
        out.dead[b.start.component].add(b.start.t, b.len);
    }

    const int NP = static_cast<int>(s.pairings.size());
    std::vector<bool> deadp(NP, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < NP; ++i) {
            if (deadp[i]) continue;
            const auto& p = s.pairings[i];
            int c = p.a.start.component;
            if (p.b.start.component != c) continue;  // cross-component: never plain
            auto& D = out.dead[c];
            const T& L = s.components[c].length;
            T e1 = s.wrap(c, T(p.a.start.t + p.a.len));
            T gapA = s.wrap(c, T(p.b.start.t - e1));
            T e2 = s.wrap(c, T(p.b.start.t + p.b.len));
            T gapB = T(L - p.a.len - p.b.len - gapA);
            bool deadA = gapA == 0 || D.measure_in(e1, gapA) >= gapA - scalar_traits<T>::tol();
            bool deadB = gapB == 0 || D.measure_in(e2, gapB) >= gapB - scalar_traits<T>::tol();
            if (!deadA && !deadB) continue;
            deadp[i] = true;
            changed = true;
            if (deadA && deadB) {
                D.whole = true;
                D.iv.clear();
            } else if (deadA) {
                D.add(p.a.start.t, T(p.a.len + gapA + p.b.len));
            } else {
                D.add(p.b.start.t, T(p.b.len + gapB + p.a.len));
            }
        }
    }

    out.component_plain.resize(NC, false);
    for (int c = 0; c < NC; ++c) {
        auto& D = out.dead[c];
        if (D.whole) {
            out.component_plain[c] = true;
            out.arcs.push_back({c, T(0), s.components[c].length, true});
            continue;
        }
        // report merged intervals, joining the pair that meets across t = 0
        auto iv = D.iv;
        if (iv.size() >= 2 && iv.front().first == T(0) && iv.back().second == D.L) {
            T start = iv.back().first;
            T len = T(D.L - iv.back().first + iv.front().second);
            iv.pop_back();
            iv.erase(iv.begin());
            out.arcs.push_back({c, start, len, false});
        }
        for (auto& p : iv) out.arcs.push_back({c, p.first, T(p.second - p.first), false});
    }
    for (int i = 0; i < NP; ++i)
        if (!deadp[i]) out.live_pairings.push_back(i);
    return out;
}

template <class T> std::vector<BArc<T>> maximal_plain_arcs(const FoldingScheme<T>& s) {
    return plain_decomposition(s).arcs;
}

// ---------------------------------------------------------------------------
// Spanning-tree reduction of a multipolygon to a single abstract disk.
// ---------------------------------------------------------------------------

template <class T> FoldingScheme<T> spanning_tree_reduce(FoldingScheme<T> s) {
    const int NC = static_cast<int>(s.components.size());
    if (NC == 1) return s;

    // pairing graph must be connected
    UnionFind uf(NC);
    for (auto& p : s.pairings) uf.unite(p.a.start.component, p.b.start.component);
    for (int c = 1; c < NC; ++c)
        if (uf.find(c) != uf.find(0))
            fail(Errc::DisconnectedUnion, "pairing graph is disconnected; reduce per component");

    while (s.components.size() > 1) {
        int pi = -1;
        for (std::size_t i = 0; i < s.pairings.size(); ++i)
            if (s.pairings[i].a.start.component != s.pairings[i].b.start.component) {
                pi = static_cast<int>(i);
                break;
            }
        if (pi < 0) fail(Errc::DisconnectedUnion, "no gluing pairing left");
        const Pairing<T> glue = s.pairings[pi];
        int ca = glue.a.start.component, cb = glue.b.start.component;
        const T La = s.components[ca].length, Lb = s.components[cb].length, len = glue.a.len;
        T a_end = s.wrap(ca, T(glue.a.start.t + len));
        T b_end = s.wrap(cb, T(glue.b.start.t + len));
        // new circle: [a.end -> a.start on ca] then [b.end -> b.start on cb]
        T first_len = T(La - len);
        auto remap = [&](const BoundaryPos<T>& pos) -> BoundaryPos<T> {
            if (pos.component == ca) {
                T t = pos.t - a_end;
                while (t < 0) t += La;
                return {ca, t};
            }
            if (pos.component == cb) {
                T t = pos.t - b_end;
                while (t < 0) t += Lb;
                return {ca, T(first_len + t)};
            }
            return pos;
        };
        std::vector<Pairing<T>> np;
        for (std::size_t i = 0; i < s.pairings.size(); ++i) {
            if (static_cast<int>(i) == pi) continue;
            Pairing<T> p = s.pairings[i];
            p.a.start = remap(p.a.start);
            p.b.start = remap(p.b.start);
            np.push_back(std::move(p));
        }
        s.pairings = std::move(np);
        for (auto& f : s.tails) f.anchor = remap(f.anchor);
        s.components[ca].length = T(La + Lb - len * T(2));
        s.components[ca].poly.reset();  // geometry is lost; it is an abstract disk now
        s.components[cb].length = T(0);
        // renumber: drop cb
        std::vector<Component<T>> comps;
        std::vector<int> newidx(s.components.size(), -1);
        for (std::size_t c = 0; c < s.components.size(); ++c) {
            if (static_cast<int>(c) == cb) continue;
            newidx[c] = static_cast<int>(comps.size());
            comps.push_back(std::move(s.components[c]));
        }
        for (auto& p : s.pairings) {
            p.a.start.component = newidx[p.a.start.component];
            p.b.start.component = newidx[p.b.start.component];
        }
        for (auto& f : s.tails) f.anchor.component = newidx[f.anchor.component];
        s.components = std::move(comps);
    }
    T tot(0);
    for (auto& p : s.pairings) tot += p.a.len;
    for (auto& f : s.tails) tot += f.total;
    s.total_pairing_len = tot;
    return s;
}

// ---------------------------------------------------------------------------
// Topology classification.
// ---------------------------------------------------------------------------

enum class TopoClass { PlainSphere, SurfaceGenus, NotCompactSurface, Unknown };

template <class T> struct TopologyReport {
    TopoClass classification = TopoClass::Unknown;
    std::vector<int> genus;  // one entry per connected component of the scheme
    std::vector<BArc<T>> maximal_plain_arcs;
    std::optional<long> maximal_unlinked_arc_count;  // nullopt = unbounded
    std::string rationale;
};

namespace detail {

// Genus of the closed orientable surface built from one abstract disk with
// the given live pairings and plain arcs collapsed: Euler characteristic of
// the quotient CW-complex.
template <class T>
int genus_of_disk(const FoldingScheme<T>& s, const std::vector<int>& live,
                  const std::vector<BArc<T>>& dead_arcs) {
    int c = 0;  // single component expected by the caller
    const T& L = s.components[c].length;
    std::vector<T> pts;
    auto addpt = [&](T t) { pts.push_back(s.wrap(c, std::move(t))); };
    for (int i : live) {
        const auto& p = s.pairings[i];
        addpt(p.a.start.t);
        addpt(T(p.a.start.t + p.a.len));
        addpt(p.b.start.t);
        addpt(T(p.b.start.t + p.b.len));
    }
    for (auto& d : dead_arcs) {
        if (d.component != c || d.whole_component) continue;
        addpt(d.start);
        addpt(T(d.start + d.len));
    }
    std::sort(pts.begin(), pts.end());
    std::vector<T> uq;
    for (auto& t : pts)
        if (uq.empty() || !near(uq.back(), t)) uq.push_back(t);
    // treat near-equal across the list conservatively: exact mode gives ==
    auto idx = [&](const T& t0) {
        T t = t0;
        while (t < 0) t += L;
        while (t >= L) t -= L;
        for (std::size_t i = 0; i < uq.size(); ++i)
            if (near(uq[i], t)) return static_cast<int>(i);
        fail(Errc::NonTilingGaps, "breakpoint lookup failed");
    };
    UnionFind uf(static_cast<int>(uq.size()));
    for (int i : live) {
        const auto& p = s.pairings[i];
        // orientation-reversing: start(a) ~ end(b), end(a) ~ start(b)
        uf.unite(idx(p.a.start.t), idx(T(p.b.start.t + p.b.len)));
        uf.unite(idx(T(p.a.start.t + p.a.len)), idx(p.b.start.t));
    }
    for (auto& d : dead_arcs) {
        if (d.component != c || d.whole_component) continue;
        uf.unite(idx(d.start), idx(T(d.start + d.len)));
    }
    int V = 0;
    for (std::size_t i = 0; i < uq.size(); ++i)
        if (uf.find(static_cast<int>(i)) == static_cast<int>(i)) ++V;
    int E = static_cast<int>(live.size());
    int chi = V - E + 1;
    int genus2 = 2 - chi;
    if (genus2 < 0 || genus2 % 2 != 0) fail(Errc::NonTilingGaps, "inconsistent Euler characteristic");
    return genus2 / 2;
}

// Maximal unlinked arcs on the residual curve: candidates are consecutive
// runs of live segments (dead arcs count as points); a run is unlinked if
// the partners of its segments form a run themselves and the induced
// pairings are pairwise unlinked.
template <class T>
long maximal_unlinked_arc_count(const FoldingScheme<T>& s, const std::vector<int>& live) {
    if (live.empty()) return 0;
    int c = 0;
    const T& L = s.components[c].length;
    struct Seg { T start; T len; int pairing; int side; };
    std::vector<Seg> segs;
    for (int i : live) {
        segs.push_back({s.pairings[i].a.start.t, s.pairings[i].a.len, i, 0});
        segs.push_back({s.pairings[i].b.start.t, s.pairings[i].b.len, i, 1});
    }
    std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.start < y.start; });
    const int m = static_cast<int>(segs.size());
    std::vector<int> partner(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (j != i && segs[j].pairing == segs[i].pairing) partner[i] = j;
    (void)L;

    auto run_valid = [&](int from, int len_run) {
        // partner set must itself be a consecutive run, and the pairings
        // pairwise unlinked
        std::vector<bool> inrun(m, false);
        for (int k = 0; k < len_run; ++k) inrun[(from + k) % m] = true;
        std::vector<bool> inpart(m, false);
        int pcount = 0;
        for (int k = 0; k < len_run; ++k) {
            int p = partner[(from + k) % m];
            if (inrun[p]) continue;  // both sides inside the candidate arc
            if (!inpart[p]) { inpart[p] = true; ++pcount; }
        }
        if (pcount > 0) {
            // partners must be consecutive
            int start = -1;
            for (int i = 0; i < m; ++i)
                if (inpart[i] && !inpart[(i + m - 1) % m]) {
                    if (start >= 0) return false;
                    start = i;
                }
            if (start < 0) return false;  // all m segments -> not an arc
            for (int k = 0; k < pcount; ++k)
                if (!inpart[(start + k) % m]) return false;
        }
        // pairwise unlinked
        std::vector<int> ids;
        for (int k = 0; k < len_run; ++k) {
            int pid = segs[(from + k) % m].pairing;
            if (std::find(ids.begin(), ids.end(), pid) == ids.end()) ids.push_back(pid);
        }
        for (std::size_t x = 0; x < ids.size(); ++x)
            for (std::size_t y = x + 1; y < ids.size(); ++y)
                if (pairs_linked(s, s.pairings[ids[x]], s.pairings[ids[y]])) return false;
        return true;
    };

    // collect maximal valid runs
    long count = 0;
    std::vector<std::pair<int, int>> valid;  // (from, len)
    for (int from = 0; from < m; ++from)
        for (int len_run = 1; len_run < m; ++len_run)
            if (run_valid(from, len_run)) valid.push_back({from, len_run});
    for (auto& v : valid) {
        bool maximal = true;
        for (auto& w : valid) {
            if (w == v) continue;
            if (w.second <= v.second) continue;
            // is v contained in w?
            int rel = (v.first - w.first + m) % m;
            if (rel + v.second <= w.second) { maximal = false; break; }
        }
        if (maximal) ++count;
    }
    return count;
}

}  // namespace detail

template <class T> TopologyReport<T> classify_topology(const FoldingScheme<T>& s0) {
    TopologyReport<T> rep;
    rep.maximal_plain_arcs = maximal_plain_arcs(s0);

    for (auto& f : s0.tails)
        if (f.arrangement == TailArrangement::AlternatingCrossed) {
            rep.classification = TopoClass::NotCompactSurface;
            rep.maximal_unlinked_arc_count = std::nullopt;
            rep.rationale = "crossed tail yields unboundedly many mutually linked maximal unlinked arcs";
            return rep;
        }

    // split into connected pieces of the pairing graph and handle each
    const int NC = static_cast<int>(s0.components.size());
    UnionFind uf(NC);
    for (auto& p : s0.pairings) uf.unite(p.a.start.component, p.b.start.component);
    std::map<int, std::vector<int>> groups;
    for (int c = 0; c < NC; ++c) groups[uf.find(c)].push_back(c);

    bool all_plain = true;
    long unlinked_total = 0;
    for (auto& [root, comps] : groups) {
        // build the sub-scheme of this group
        FoldingScheme<T> sub;
        std::vector<int> remap(NC, -1);
        for (int c : comps) {
            remap[c] = static_cast<int>(sub.components.size());
            sub.components.push_back(s0.components[c]);
        }
        for (auto& p : s0.pairings)
            if (remap[p.a.start.component] >= 0) {
                Pairing<T> q = p;
                q.a.start.component = remap[q.a.start.component];
                q.b.start.component = remap[q.b.start.component];
                sub.pairings.push_back(q);
            }
        for (auto& f : s0.tails)
            if (remap[f.anchor.component] >= 0) {
                TailFamily<T> g = f;
                g.anchor.component = remap[g.anchor.component];
                sub.tails.push_back(g);
            }
        FoldingScheme<T> disk = spanning_tree_reduce(std::move(sub));
        auto dec = plain_decomposition(disk);
        if (dec.component_plain[0] && disk.components.size() == 1) {
            rep.genus.push_back(0);
            continue;
        }
        all_plain = false;
        long cnt = detail::maximal_unlinked_arc_count(disk, dec.live_pairings);
        unlinked_total += cnt;
        rep.genus.push_back(detail::genus_of_disk(disk, dec.live_pairings, dec.arcs));
    }

    if (all_plain) {
        rep.classification = TopoClass::PlainSphere;
        rep.maximal_unlinked_arc_count = 0;
        rep.rationale = "every component is plain; quotient is a sphere and the scar a dendrite";
    } else {
        rep.classification = TopoClass::SurfaceGenus;
        rep.maximal_unlinked_arc_count = unlinked_total;
        rep.rationale = "finitely linked; genus from the Euler characteristic of the identified disk";
    }
    return rep;
}

}  // namespace paperfold

#endif  // PAPERFOLD_SCHEME_HPP
