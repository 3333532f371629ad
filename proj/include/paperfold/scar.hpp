#ifndef PAPERFOLD_SCAR_HPP
#define PAPERFOLD_SCAR_HPP

#include "paperfold/scheme.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

namespace paperfold {

enum class VertexKind { Planar, RegularVertex, Singular };

// Exact metric graph realizing the quotient of the boundary: one edge per
// pairing (split at polygon corners), one analytic star per tail family.
template <class T> struct ScarGraph {
    struct Vertex {
        std::vector<BoundaryPos<T>> preimages;
        bool has_corner = false;
        bool infinite_valence = false;
        int valence = 0;  // finite edge-ends (star branches not counted)
        VertexKind kind = VertexKind::Planar;
    };
    struct Edge {
        int u = -1, v = -1;
        T len{};
        int pairing = -1;  // source pairing index, -1 for synthetic edges
    };
    struct BranchMark {  // 2-vertex inside a tail branch (a buried polygon corner)
        long n = 0;
        T offset{};  // distance from the star centre, in (0, a_n]
    };
    struct TailStar {
        int center = -1;
        TailFamily<T> fam;
        std::vector<BranchMark> marks;
        int tail_index = -1;
    };

    std::vector<Vertex> verts;
    std::vector<Edge> edges;
    std::vector<TailStar> stars;
    T total_measure{};
    std::optional<T> injectivity;  // nullopt = +infinity (the scar is a tree)

    std::vector<std::vector<int>> adj;  // vertex -> incident edge ids

    void build_adjacency() {
        adj.assign(verts.size(), {});
        for (std::size_t e = 0; e < edges.size(); ++e) {
            adj[edges[e].u].push_back(static_cast<int>(e));
            if (edges[e].v != edges[e].u) adj[edges[e].v].push_back(static_cast<int>(e));
        }
    }
};

// Point of the scar: a vertex, an interior point of an edge, or a point on
// a tail-star branch at the given distance from the centre.
template <class T> struct ScarPoint {
    enum class Loc { Vertex, Edge, Star } loc = Loc::Vertex;
    int id = 0;       // vertex / edge / star index
    long branch = 0;  // star branch (1-based)
    T offset{};       // along the edge from endpoint u, or from the star centre

    static ScarPoint vertex(int v) { return {Loc::Vertex, v, 0, T(0)}; }
    static ScarPoint on_edge(int e, T off) { return {Loc::Edge, e, 0, std::move(off)}; }
    static ScarPoint on_star(int s, long n, T off) { return {Loc::Star, s, n, std::move(off)}; }
};

// ---------------------------------------------------------------------------
// Construction.
// ---------------------------------------------------------------------------

namespace scar_detail {

template <class T> struct BreakpointIndex {
    const FoldingScheme<T>* s;
    std::vector<std::vector<T>> per_component;  // sorted unique breakpoints

    int count() const {
        int n = 0;
        for (auto& v : per_component) n += static_cast<int>(v.size());
        return n;
    }
    int flat(int comp, int k) const {
        int base = 0;
        for (int c = 0; c < comp; ++c) base += static_cast<int>(per_component[c].size());
        return base + k;
    }
    int locate(const BoundaryPos<T>& p) const {
        const auto& v = per_component[p.component];
        T t = s->wrap(p.component, p.t);
        for (std::size_t k = 0; k < v.size(); ++k)
            if (near(v[k], t)) return flat(p.component, static_cast<int>(k));
        fail(Errc::NotOnScheme, "breakpoint lookup failed");
    }
    BoundaryPos<T> pos_of(int id) const {
        for (int c = 0; c < static_cast<int>(per_component.size()); ++c) {
            if (id < static_cast<int>(per_component[c].size())) return {c, per_component[c][id]};
            id -= static_cast<int>(per_component[c].size());
        }
        fail(Errc::NotOnScheme, "bad breakpoint id");
    }
};

// Exact-kind position of a boundary point inside a tail block, expressed in
// star coordinates; nullopt when the point is part of the centre class.
template <class T>
std::optional<typename ScarGraph<T>::BranchMark> block_local(const TailFamily<T>& f, const T& dist_from_anchor) {
    if (f.arrangement == TailArrangement::AlternatingCrossed)
        fail(Errc::Unsupported, "crossed tails have no star model");
    if (f.arrangement == TailArrangement::Contiguous) {
        T cursor(0);
        for (long n = 1;; ++n) {
            auto a = tail_a_exact(f, n);
            if (!a) fail(Errc::Unsupported, "corner inside an inexact tail block");
            T next = cursor + *a * T(2);
            if (dist_from_anchor <= next + scalar_traits<T>::tol()) {
                if (near(dist_from_anchor, cursor) || near(dist_from_anchor, next)) return std::nullopt;
                T x = dist_from_anchor - cursor;
                T off = x <= *a ? x : T(*a * T(2) - x);
                return typename ScarGraph<T>::BranchMark{n, off};
            }
            cursor = next;
            if (cursor > f.total * T(2)) fail(Errc::NotOnScheme, "point beyond tail block");
        }
    }
    // Cantor style: fold n sits centred in its removed middle third
    for (long n = 1; n <= (1L << 20); ++n) {
        T tipoff = tail_tip_offset(f, n);
        auto a = tail_a_exact(f, n);
        T lo = tipoff - *a, hi = tipoff + *a;
        if (dist_from_anchor > lo + scalar_traits<T>::tol() && dist_from_anchor < hi - scalar_traits<T>::tol()) {
            T x = dist_from_anchor - lo;
            T off = x <= *a ? x : T(*a * T(2) - x);
            return typename ScarGraph<T>::BranchMark{n, off};
        }
        if (*a < scalar_traits<T>::tol() * T(1000000)) break;
    }
    return std::nullopt;  // on the Cantor set: centre class
}

}  // namespace scar_detail

template <class T> ScarGraph<T> build_scar_graph(const FoldingScheme<T>& s) {
    if (!s.validated) fail(Errc::NonTilingGaps, "build_scar_graph needs a validated scheme");
    using Graph = ScarGraph<T>;
    Graph g;

    scar_detail::BreakpointIndex<T> bp;
    bp.s = &s;
    const int NC = static_cast<int>(s.components.size());
    bp.per_component.resize(NC);

    struct CornerInBlock {
        int tail;
        typename Graph::BranchMark mark;
        BoundaryPos<T> pos;
    };
    std::vector<CornerInBlock> buried;

    {
        std::vector<std::vector<T>> raw(NC);
        auto addpos = [&](const BoundaryPos<T>& p) { raw[p.component].push_back(s.wrap(p.component, p.t)); };
        for (auto& p : s.pairings) {
            addpos(p.a.start);
            addpos({p.a.start.component, T(p.a.start.t + p.a.len)});
            addpos(p.b.start);
            addpos({p.b.start.component, T(p.b.start.t + p.b.len)});
        }
        for (auto& f : s.tails) {
            BSeg<T> blk = s.tail_block(f);
            addpos(blk.start);
            addpos({blk.start.component, T(blk.start.t + blk.len)});
        }
        // polygon corners that are not interior to a tail block
        for (int c = 0; c < NC; ++c) {
            if (!s.components[c].poly) continue;
            for (const T& t : s.components[c].poly->cum_len) {
                bool inside_block = false;
                for (std::size_t fi = 0; fi < s.tails.size(); ++fi) {
                    BSeg<T> blk = s.tail_block(s.tails[fi]);
                    if (blk.start.component != c) continue;
                    T d = s.wrap(c, T(t - blk.start.t));
                    if (d > scalar_traits<T>::tol() && d < blk.len - scalar_traits<T>::tol()) {
                        auto loc = scar_detail::block_local(s.tails[fi], d);
                        if (loc) {
                            if (loc->offset < *tail_a_exact(s.tails[fi], loc->n) - scalar_traits<T>::tol())
                                buried.push_back({static_cast<int>(fi), *loc, {c, t}});
                            // corners at a folding point are already branch tips
                            inside_block = true;
                        }
                        // centre-class corners: identify with the block ends below
                        break;
                    }
                }
                if (!inside_block) raw[c].push_back(s.wrap(c, t));
            }
        }
        for (int c = 0; c < NC; ++c) {
            std::sort(raw[c].begin(), raw[c].end());
            for (auto& t : raw[c])
                if (bp.per_component[c].empty() || !near(bp.per_component[c].back(), t))
                    bp.per_component[c].push_back(t);
        }
    }

    const int NB = bp.count();
    UnionFind uf(NB);
    // pairing identifications: start(a) ~ end(b), end(a) ~ start(b)
    for (auto& p : s.pairings) {
        int a0 = bp.locate(p.a.start);
        int a1 = bp.locate({p.a.start.component, T(p.a.start.t + p.a.len)});
        int b0 = bp.locate(p.b.start);
        int b1 = bp.locate({p.b.start.component, T(p.b.start.t + p.b.len)});
        uf.unite(a0, b1);
        uf.unite(a1, b0);
    }
    // tail blocks collapse onto their centre class
    for (auto& f : s.tails) {
        BSeg<T> blk = s.tail_block(f);
        int e0 = bp.locate(blk.start);
        int e1 = bp.locate({blk.start.component, T(blk.start.t + blk.len)});
        uf.unite(e0, e1);
    }
    // breakpoints of the tiling shared between adjacent segments coincide by
    // construction (same t), so nothing further is needed for those

    std::vector<int> class_of(NB, -1);
    int nclasses = 0;
    for (int i = 0; i < NB; ++i)
        if (uf.find(i) == i) class_of[i] = nclasses++;
    for (int i = 0; i < NB; ++i) class_of[i] = class_of[uf.find(i)];

    g.verts.resize(nclasses);
    for (int i = 0; i < NB; ++i) {
        auto pos = bp.pos_of(i);
        auto& vx = g.verts[class_of[i]];
        vx.preimages.push_back(pos);
        if (s.components[pos.component].poly) {
            for (const T& t : s.components[pos.component].poly->cum_len)
                if (near(s.wrap(pos.component, t), pos.t)) vx.has_corner = true;
        }
    }

    // one edge per pairing, split at buried corners mapped onto it
    for (std::size_t pi = 0; pi < s.pairings.size(); ++pi) {
        const auto& p = s.pairings[pi];
        int u = class_of[uf.find(bp.locate(p.a.start))];
        int v = class_of[uf.find(bp.locate({p.a.start.component, T(p.a.start.t + p.a.len)}))];
        // interior corner marks: edge offset measured from u (= start of a)
        std::vector<std::pair<T, BoundaryPos<T>>> marks;
        for (int c = 0; c < NC; ++c) {
            if (!s.components[c].poly) continue;
            for (const T& t : s.components[c].poly->cum_len) {
                if (c == p.a.start.component) {
                    T d = s.wrap(c, T(t - p.a.start.t));
                    if (d > scalar_traits<T>::tol() && d < p.a.len - scalar_traits<T>::tol())
                        marks.push_back({d, {c, t}});
                }
                if (c == p.b.start.component) {
                    T d = s.wrap(c, T(t - p.b.start.t));
                    if (d > scalar_traits<T>::tol() && d < p.b.len - scalar_traits<T>::tol())
                        marks.push_back({T(p.a.len - d), {c, t}});
                }
            }
        }
        std::sort(marks.begin(), marks.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        int prev = u;
        T prev_off(0);
        for (std::size_t k = 0; k < marks.size(); ++k) {
            if (k > 0 && near(marks[k].first, marks[k - 1].first)) {
                g.verts.back().preimages.push_back(marks[k].second);
                continue;
            }
            typename Graph::Vertex nv;
            nv.preimages.push_back(marks[k].second);
            nv.has_corner = true;
            g.verts.push_back(nv);
            int mid = static_cast<int>(g.verts.size()) - 1;
            g.edges.push_back({prev, mid, T(marks[k].first - prev_off), static_cast<int>(pi)});
            prev = mid;
            prev_off = marks[k].first;
        }
        g.edges.push_back({prev, v, T(p.a.len - prev_off), static_cast<int>(pi)});
    }

    // tail stars
    for (std::size_t fi = 0; fi < s.tails.size(); ++fi) {
        const auto& f = s.tails[fi];
        if (f.arrangement == TailArrangement::AlternatingCrossed)
            fail(Errc::Unsupported, "crossed tails do not form a star; classify first");
        BSeg<T> blk = s.tail_block(f);
        typename Graph::TailStar st;
        st.center = class_of[uf.find(bp.locate(blk.start))];
        st.fam = f;
        st.tail_index = static_cast<int>(fi);
        for (auto& b : buried)
            if (b.tail == static_cast<int>(fi)) {
                st.marks.push_back(b.mark);
                // record the preimage on the centre's vertex? the mark is its own 2-vertex
            }
        g.stars.push_back(std::move(st));
        g.verts[g.stars.back().center].infinite_valence = true;
    }

    for (auto& e : g.edges) {
        g.verts[e.u].valence++;
        g.verts[e.v].valence++;
    }
    for (auto& vx : g.verts) {
        if (vx.infinite_valence) vx.kind = VertexKind::Singular;
        else if (vx.preimages.size() != 2 || vx.has_corner) vx.kind = VertexKind::RegularVertex;
        else vx.kind = VertexKind::Planar;
    }

    g.total_measure = s.total_boundary();
    // bookkeeping check: edge measures plus star measures tile the boundary
    T acc(0);
    for (auto& e : g.edges) acc += e.len * T(2);
    for (auto& st : g.stars) acc += st.fam.total * T(2);
    if (!near(acc, g.total_measure)) fail(Errc::NonTilingGaps, "scar measure mismatch");

    g.build_adjacency();

    // injectivity radius: half the girth (stars are trees and cannot close a cycle)
    {
        std::optional<T> best;
        const int NV = static_cast<int>(g.verts.size());
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            const auto& ed = g.edges[e];
            if (ed.u == ed.v) {
                if (!best || ed.len < *best) best = ed.len;
                continue;
            }
            // shortest u-v path avoiding edge e
            std::vector<std::optional<T>> dist(NV);
            using Item = std::pair<T, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            dist[ed.u] = T(0);
            pq.push({T(0), ed.u});
            while (!pq.empty()) {
                auto [d, x] = pq.top();
                pq.pop();
                if (dist[x] && *dist[x] < d) continue;
                for (int ei : g.adj[x]) {
                    if (ei == static_cast<int>(e)) continue;
                    const auto& f2 = g.edges[ei];
                    int y = f2.u == x ? f2.v : f2.u;
                    T nd = d + f2.len;
                    if (best && nd + ed.len >= *best) continue;
                    if (!dist[y] || nd < *dist[y]) {
                        dist[y] = nd;
                        pq.push({nd, y});
                    }
                }
            }
            if (dist[ed.v]) {
                T cyc = *dist[ed.v] + ed.len;
                if (!best || cyc < *best) best = cyc;
            }
        }
        if (best) g.injectivity = T(*best / T(2));
    }
    return g;
}

template <class T> std::optional<T> injectivity_radius(const ScarGraph<T>& g) { return g.injectivity; }

// ---------------------------------------------------------------------------
// Distances.
// ---------------------------------------------------------------------------

namespace scar_detail {

// Dijkstra over vertex classes from a set of seeds (vertex, offset).
template <class T>
std::vector<std::optional<T>> dijkstra(const ScarGraph<T>& g, const std::vector<std::pair<int, T>>& seeds) {
    const int NV = static_cast<int>(g.verts.size());
    std::vector<std::optional<T>> dist(NV);
    using Item = std::pair<T, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    for (auto& [v, d] : seeds)
        if (!dist[v] || d < *dist[v]) {
            dist[v] = d;
            pq.push({d, v});
        }
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (dist[x] && *dist[x] < d) continue;
        for (int ei : g.adj[x]) {
            const auto& e = g.edges[ei];
            int y = e.u == x ? e.v : e.u;
            T nd = d + e.len;
            if (!dist[y] || nd < *dist[y]) {
                dist[y] = nd;
                pq.push({nd, y});
            }
        }
    }
    return dist;
}

template <class T>
std::vector<std::pair<int, T>> seeds_of(const ScarGraph<T>& g, const ScarPoint<T>& p) {
    switch (p.loc) {
        case ScarPoint<T>::Loc::Vertex:
            return {{p.id, T(0)}};
        case ScarPoint<T>::Loc::Edge: {
            const auto& e = g.edges[p.id];
            return {{e.u, p.offset}, {e.v, T(e.len - p.offset)}};
        }
        case ScarPoint<T>::Loc::Star:
            return {{g.stars[p.id].center, p.offset}};
    }
    return {};
}

}  // namespace scar_detail

template <class T>
T scar_distance(const ScarGraph<T>& g, const ScarPoint<T>& p, const ScarPoint<T>& q) {
    using Loc = typename ScarPoint<T>::Loc;
    // same-edge / same-star shortcuts
    std::optional<T> direct;
    if (p.loc == Loc::Edge && q.loc == Loc::Edge && p.id == q.id)
        direct = abs_val(T(p.offset - q.offset));
    if (p.loc == Loc::Star && q.loc == Loc::Star && p.id == q.id)
        direct = p.branch == q.branch ? abs_val(T(p.offset - q.offset)) : T(p.offset + q.offset);

    auto dist = scar_detail::dijkstra(g, scar_detail::seeds_of(g, p));
    std::optional<T> best = direct;
    for (auto& [v, off] : scar_detail::seeds_of(g, q)) {
        if (!dist[v]) continue;
        T cand = *dist[v] + off;
        if (!best || cand < *best) best = cand;
    }
    if (!best) fail(Errc::DifferentComponents, "points lie in different scar components");
    return *best;
}

// ---------------------------------------------------------------------------
// Quotient-metric brute force: Dijkstra over the breakpoint graph with gap
// costs equal to boundary distances and pairing moves free, refined with a
// grid of pitch eps on every segment.  Tails are truncated at `tail_depth`
// folds (crossing the untruncated remainder then costs its length, which is
// tiny for the declared kinds).
// ---------------------------------------------------------------------------

template <class T>
double chain_distance_bruteforce(const FoldingScheme<T>& s, const BoundaryPos<T>& x,
                                 const BoundaryPos<T>& y, double eps, int tail_depth = 24) {
    struct Node {
        int comp;
        double t;
    };
    std::vector<Node> nodes;
    std::vector<std::pair<int, int>> free_links;
    auto add_node = [&](int comp, const T& t) {
        nodes.push_back({comp, to_double(s.wrap(comp, t))});
        return static_cast<int>(nodes.size()) - 1;
    };

    auto add_pairing_grid = [&](const BSeg<T>& a, const BSeg<T>& b) {
        long m = std::max(1L, static_cast<long>(std::ceil(to_double(a.len) / eps)));
        if (m > 4000) m = 4000;
        for (long i = 0; i <= m; ++i) {
            T off = T(a.len * T(static_cast<double>(i)) / T(static_cast<double>(m)));
            int na = add_node(a.start.component, T(a.start.t + off));
            int nb = add_node(b.start.component, T(b.start.t + (a.len - off)));
            free_links.push_back({na, nb});
        }
    };

    for (auto& p : s.pairings) add_pairing_grid(p.a, p.b);
    for (auto& f : s.tails) {
        // explicit folds down to tail_depth
        if (f.arrangement == TailArrangement::AlternatingCrossed) continue;
        for (long n = 1; n <= tail_depth; ++n) {
            auto a = tail_a_exact(f, n);
            if (!a) break;
            T tip = tail_tip_offset(f, n);
            T s0 = f.direction > 0 ? T(f.anchor.t + (tip - *a)) : T(f.anchor.t - (tip + *a));
            BSeg<T> sa{{f.anchor.component, s.wrap(f.anchor.component, s0)}, *a};
            BSeg<T> sb{{f.anchor.component, s.wrap(f.anchor.component, T(s0 + *a))}, *a};
            add_pairing_grid(sa, sb);
        }
    }

    int nx = add_node(x.component, x.t);
    int ny = add_node(y.component, y.t);
    // partners of x and y when they sit inside a pairing segment
    auto add_partner = [&](const BoundaryPos<T>& p, int node) {
        for (auto& q : s.pairings) {
            for (int side = 0; side < 2; ++side) {
                const BSeg<T>& a = side ? q.b : q.a;
                const BSeg<T>& b = side ? q.a : q.b;
                if (a.start.component != p.component) continue;
                T d = s.wrap(p.component, T(p.t - a.start.t));
                if (d >= 0 && d <= a.len) {
                    int pn = add_node(b.start.component, T(b.start.t + (a.len - d)));
                    free_links.push_back({node, pn});
                }
            }
        }
    };
    add_partner(x, nx);
    add_partner(y, ny);

    // order nodes around each component for gap edges
    const int N = static_cast<int>(nodes.size());
    std::vector<int> order(N);
    for (int i = 0; i < N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return std::tie(nodes[i].comp, nodes[i].t) < std::tie(nodes[j].comp, nodes[j].t);
    });

    std::vector<std::vector<std::pair<int, double>>> adj(N);
    auto link = [&](int i, int j, double w) {
        adj[i].push_back({j, w});
        adj[j].push_back({i, w});
    };
    for (int k = 0; k < N; ++k) {
        int i = order[k], j = order[(k + 1) % N];
        if (nodes[i].comp == nodes[j].comp) {
            double L = to_double(s.components[nodes[i].comp].length);
            double d = nodes[j].t - nodes[i].t;
            if (d < 0) d += L;
            link(i, j, d);
        }
    }
    // close each component's cycle
    for (int c = 0; c < static_cast<int>(s.components.size()); ++c) {
        int first = -1, last = -1;
        for (int k = 0; k < N; ++k) {
            if (nodes[order[k]].comp != c) continue;
            if (first < 0) first = order[k];
            last = order[k];
        }
        if (first >= 0 && first != last) {
            double L = to_double(s.components[c].length);
            double d = nodes[first].t - nodes[last].t;
            if (d < 0) d += L;
            link(last, first, d);
        }
    }
    for (auto& [i, j] : free_links) link(i, j, 0.0);

    std::vector<double> dist(N, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[nx] = 0;
    pq.push({0, nx});
    while (!pq.empty()) {
        auto [d, i] = pq.top();
        pq.pop();
        if (d > dist[i]) continue;
        for (auto& [j, w] : adj[i])
            if (d + w < dist[j]) {
                dist[j] = d + w;
                pq.push({dist[j], j});
            }
    }
    return dist[ny];
}

// Locate a boundary position on the scar graph.
template <class T>
ScarPoint<T> project_to_scar(const FoldingScheme<T>& s, const ScarGraph<T>& g, const BoundaryPos<T>& pos) {
    T t = s.wrap(pos.component, pos.t);
    // a vertex preimage?
    for (std::size_t v = 0; v < g.verts.size(); ++v)
        for (auto& p : g.verts[v].preimages)
            if (p.component == pos.component && near(p.t, t)) return ScarPoint<T>::vertex(static_cast<int>(v));
    // inside a pairing segment: edges are split at corner marks
    for (std::size_t pi = 0; pi < s.pairings.size(); ++pi) {
        const auto& p = s.pairings[pi];
        for (int side = 0; side < 2; ++side) {
            const BSeg<T>& a = side ? p.b : p.a;
            if (a.start.component != pos.component) continue;
            T d = s.wrap(pos.component, T(t - a.start.t));
            if (d > a.len) continue;
            T off = side ? T(a.len - d) : d;  // offset in edge coordinates (from start of p.a)
            // find the sub-edge of this pairing containing `off`
            T acc(0);
            for (std::size_t e = 0; e < g.edges.size(); ++e) {
                if (g.edges[e].pairing != static_cast<int>(pi)) continue;
                if (off <= acc + g.edges[e].len + scalar_traits<T>::tol()) {
                    T local = off - acc;
                    if (near(local, T(0))) return ScarPoint<T>::vertex(g.edges[e].u);
                    if (near(local, g.edges[e].len)) return ScarPoint<T>::vertex(g.edges[e].v);
                    return ScarPoint<T>::on_edge(static_cast<int>(e), local);
                }
                acc += g.edges[e].len;
            }
        }
    }
    // inside a tail block
    for (std::size_t si = 0; si < g.stars.size(); ++si) {
        const auto& f = g.stars[si].fam;
        BSeg<T> blk = s.tail_block(f);
        if (blk.start.component != pos.component) continue;
        T d = s.wrap(pos.component, T(t - blk.start.t));
        if (d > blk.len) continue;
        T from_anchor = f.direction > 0 ? d : T(blk.len - d);
        auto loc = scar_detail::block_local(f, from_anchor);
        if (!loc) return ScarPoint<T>::vertex(g.stars[si].center);
        return ScarPoint<T>::on_star(static_cast<int>(si), loc->n, loc->offset);
    }
    fail(Errc::NotOnScheme, "boundary position not covered by the scheme");
}

}  // namespace paperfold

#endif  // PAPERFOLD_SCAR_HPP
