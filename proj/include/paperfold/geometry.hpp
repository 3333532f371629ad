#ifndef PAPERFOLD_GEOMETRY_HPP
#define PAPERFOLD_GEOMETRY_HPP

#include "paperfold/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace paperfold {

template <class T> struct Pt {
    T x{}, y{};
    Pt() = default;
    Pt(T x_, T y_) : x(std::move(x_)), y(std::move(y_)) {}
    Pt operator+(const Pt& o) const { return {T(x + o.x), T(y + o.y)}; }
    Pt operator-(const Pt& o) const { return {T(x - o.x), T(y - o.y)}; }
    Pt operator*(const T& s) const { return {T(x * s), T(y * s)}; }
    bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
};

template <class T> T dot(const Pt<T>& a, const Pt<T>& b) { return a.x * b.x + a.y * b.y; }
template <class T> T cross(const Pt<T>& a, const Pt<T>& b) { return a.x * b.y - a.y * b.x; }
template <class T> T norm2(const Pt<T>& a) { return dot(a, a); }
template <class T> T norm(const Pt<T>& a) { return sqrt_scalar(norm2(a)); }

// Euclidean distance as a real, regardless of whether T admits exact sqrt.
template <class T> real_t<T> euclid_dist(const Pt<T>& a, const Pt<T>& b) {
    using std::sqrt;
    return sqrt(to_real(norm2(Pt<T>(b - a))));
}

// Orientation of c relative to the directed line a->b: 1 left, -1 right, 0 on.
template <class T> int orient(const Pt<T>& a, const Pt<T>& b, const Pt<T>& c) {
    return sign_tol(cross(Pt<T>(b - a), Pt<T>(c - a)));
}

template <class T> bool point_on_segment(const Pt<T>& p, const Pt<T>& a, const Pt<T>& b) {
    if (orient(a, b, p) != 0) return false;
    return sign_tol(dot(Pt<T>(p - a), Pt<T>(p - b))) <= 0;
}

// Proper crossing: interiors of both segments intersect transversally.
template <class T>
bool segments_cross_properly(const Pt<T>& a, const Pt<T>& b, const Pt<T>& c, const Pt<T>& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

// Any intersection at all (including touching and collinear overlap).
template <class T>
bool segments_intersect(const Pt<T>& a, const Pt<T>& b, const Pt<T>& c, const Pt<T>& d) {
    if (segments_cross_properly(a, b, c, d)) return true;
    return point_on_segment(c, a, b) || point_on_segment(d, a, b) ||
           point_on_segment(a, c, d) || point_on_segment(b, c, d);
}

enum class Side { Inside, Boundary, Outside };

// ---------------------------------------------------------------------------
// Polygon: simple, positively oriented, with exact side lengths.  The
// boundary carries the arc-length coordinate t in [0, |dP|), starting at
// vertex 0 and walking counterclockwise.
// ---------------------------------------------------------------------------

template <class T> class Polygon {
  public:
    std::vector<Pt<T>> verts;
    std::vector<T> side_len;     // side i joins vertex i to vertex i+1
    std::vector<T> cum_len;      // cum_len[i] = arc-length coordinate of vertex i
    T boundary_len{};
    // Internal semi-angle data at each vertex.  cot and sin^2 of the
    // semi-angle are rational functions of the unit edge vectors; the angle
    // itself is kept as a real.
    std::vector<real_t<T>> semi_angle;
    std::vector<T> cot_semi;
    std::vector<T> sin2_semi;

    int n() const { return static_cast<int>(verts.size()); }

    Pt<T> unit_dir(int side) const {
        int i = side, j = (side + 1) % n();
        Pt<T> d = verts[j] - verts[i];
        T inv = T(1) / side_len[side];
        return {T(d.x * inv), T(d.y * inv)};
    }

    T wrap(T t) const {
        while (t < 0) t += boundary_len;
        while (t >= boundary_len) t -= boundary_len;
        return t;
    }

    // Side index containing arc-length parameter t, plus offset within it.
    std::pair<int, T> locate(T t) const {
        t = wrap(std::move(t));
        int lo = 0, hi = n() - 1;
        while (lo < hi) {
            int mid = (lo + hi + 1) / 2;
            if (cum_len[mid] <= t) lo = mid; else hi = mid - 1;
        }
        return {lo, T(t - cum_len[lo])};
    }
};

template <class T> Side point_vs_polygon(const Polygon<T>& P, const Pt<T>& p) {
    int N = P.n();
    for (int i = 0; i < N; ++i)
        if (point_on_segment(p, P.verts[i], P.verts[(i + 1) % N])) return Side::Boundary;
    // crossing-number with a horizontal ray; vertex hits resolved by the
    // usual half-open rule on y
    bool in = false;
    for (int i = 0; i < N; ++i) {
        const Pt<T>&a = P.verts[i], &b = P.verts[(i + 1) % N];
        bool ya = a.y > p.y, yb = b.y > p.y;
        if (ya != yb) {
            // x of the edge at height p.y, compared exactly via cross product
            T t = cross(Pt<T>(b - a), Pt<T>(p - a));
            int s = sign_tol(t);
            if ((b.y > a.y && s > 0) || (b.y < a.y && s < 0)) in = !in;
        }
    }
    return in ? Side::Inside : Side::Outside;
}

template <class T>
Polygon<T> polygon_validate(const std::vector<Pt<T>>& vertices) {
    const int N = static_cast<int>(vertices.size());
    if (N < 3) fail(Errc::DegenerateVertex, "polygon needs at least 3 vertices");

    Polygon<T> P;
    P.verts = vertices;
    P.side_len.resize(N);
    P.cum_len.resize(N);

    for (int i = 0; i < N; ++i) {
        Pt<T> d = vertices[(i + 1) % N] - vertices[i];
        T l2 = norm2(d);
        if (sign_tol(l2) == 0) fail(Errc::DegenerateVertex, "zero-length side " + std::to_string(i));
        P.side_len[i] = sqrt_scalar(l2);
    }
    P.cum_len[0] = T(0);
    for (int i = 1; i < N; ++i) P.cum_len[i] = P.cum_len[i - 1] + P.side_len[i - 1];
    P.boundary_len = P.cum_len[N - 1] + P.side_len[N - 1];

    // simplicity: no two non-adjacent sides may meet, adjacent sides meet
    // only at the shared vertex
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
            const Pt<T>&a = vertices[i], &b = vertices[(i + 1) % N];
            const Pt<T>&c = vertices[j], &d = vertices[(j + 1) % N];
            bool adjacent = (j == i + 1) || (i == 0 && j == N - 1);
            if (adjacent) {
                if (segments_cross_properly(a, b, c, d)) fail(Errc::SelfIntersecting, "sides cross");
                // shared endpoint is fine; anything more means overlap
                const Pt<T>& shared = (j == i + 1) ? b : a;
                const Pt<T>& afar = (j == i + 1) ? a : b;
                const Pt<T>& cfar = (j == i + 1) ? d : c;
                if (point_on_segment(afar, c, d) || point_on_segment(cfar, a, b))
                    fail(Errc::SelfIntersecting, "adjacent sides overlap");
                (void)shared;
            } else if (segments_intersect(a, b, c, d)) {
                fail(Errc::SelfIntersecting, "non-adjacent sides intersect");
            }
        }
    }

    T area2(0);
    for (int i = 0; i < N; ++i) area2 += cross(vertices[i], vertices[(i + 1) % N]);
    if (sign_tol(area2) <= 0) fail(Errc::NotCounterclockwise, "polygon not positively oriented");

    P.semi_angle.resize(N);
    P.cot_semi.resize(N);
    P.sin2_semi.resize(N);
    for (int i = 0; i < N; ++i) {
        Pt<T> u = P.unit_dir((i + N - 1) % N);  // incoming
        Pt<T> w = P.unit_dir(i);                // outgoing
        T c = dot(u, w), s = cross(u, w);
        // internal angle phi: cos phi = -c, sin phi = s
        if (sign_tol(s) == 0) fail(Errc::DegenerateVertex, "straight or cusped vertex " + std::to_string(i));
        P.cot_semi[i] = T((T(1) - c) / s);
        P.sin2_semi[i] = T((T(1) + c) / 2);
        using R = real_t<T>;
        using std::atan2;
        R phi = atan2(to_real(s), R(-to_real(c)));
        if (phi < 0) phi += R(2) * R(3.14159265358979323846264338327950288L);
        P.semi_angle[i] = phi / 2;
    }
    return P;
}

template <class T> Pt<T> boundary_point(const Polygon<T>& P, T t) {
    auto [side, off] = P.locate(std::move(t));
    Pt<T> u = P.unit_dir(side);
    return P.verts[side] + u * off;
}

template <class T> T boundary_distance(const T& component_len, T ta, T tb) {
    T d = ta > tb ? T(ta - tb) : T(tb - ta);
    T other = component_len - d;
    return d < other ? d : other;
}

// ---------------------------------------------------------------------------
// Geodesic distance inside a simple polygon: visibility graph over the
// reflex vertices.  Endpoints must lie in the closed polygon.
// ---------------------------------------------------------------------------

namespace detail {

// Is the open segment pq contained in the closed polygon?  Collect every
// boundary contact along pq and test the midpoint of each gap.
template <class T>
bool segment_in_polygon(const Polygon<T>& P, const Pt<T>& p, const Pt<T>& q) {
    if (p == q) return true;
    const int N = P.n();
    Pt<T> d = q - p;
    std::vector<T> cuts;  // parameters in [0,1] where pq touches the boundary
    cuts.push_back(T(0));
    cuts.push_back(T(1));
    for (int i = 0; i < N; ++i) {
        const Pt<T>&a = P.verts[i], &b = P.verts[(i + 1) % N];
        if (segments_cross_properly(p, q, a, b)) {
            T denom = cross(Pt<T>(b - a), d);
            T t = cross(Pt<T>(b - a), Pt<T>(a - p)) / denom;
            cuts.push_back(t);
        }
        // endpoints of the side on pq
        for (const Pt<T>* v : {&a, &b}) {
            if (point_on_segment(*v, p, q)) {
                T t = (abs_val(d.x) > abs_val(d.y)) ? T((v->x - p.x) / d.x) : T((v->y - p.y) / d.y);
                cuts.push_back(t);
            }
        }
        // p or q interior to the side adds no cut beyond 0/1 already present
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        if (!(cuts[k] < cuts[k + 1])) continue;
        T tm = (cuts[k] + cuts[k + 1]) / 2;
        Pt<T> m = p + d * tm;
        if (point_vs_polygon(P, m) == Side::Outside) return false;
    }
    return true;
}

}  // namespace detail

template <class T>
real_t<T> intrinsic_distance(const Polygon<T>& P, const Pt<T>& p, const Pt<T>& q) {
    using R = real_t<T>;
    if (point_vs_polygon(P, p) == Side::Outside || point_vs_polygon(P, q) == Side::Outside)
        fail(Errc::PointOutside, "intrinsic_distance endpoint outside polygon");
    if (p == q) return R(0);
    if (detail::segment_in_polygon(P, p, q)) return euclid_dist(p, q);

    // graph nodes: p, q, and the reflex vertices (paths bend only there)
    std::vector<Pt<T>> nodes = {p, q};
    const int N = P.n();
    for (int i = 0; i < N; ++i) {
        // reflex: internal angle > pi  <=>  cross(u,w) < 0
        Pt<T> u = P.unit_dir((i + N - 1) % N), w = P.unit_dir(i);
        if (sign_tol(cross(u, w)) < 0) nodes.push_back(P.verts[i]);
    }
    const int M = static_cast<int>(nodes.size());
    const R INF = std::numeric_limits<double>::infinity();
    std::vector<std::vector<R>> w(M, std::vector<R>(M, INF));
    for (int i = 0; i < M; ++i)
        for (int j = i + 1; j < M; ++j)
            if (detail::segment_in_polygon(P, nodes[i], nodes[j]))
                w[i][j] = w[j][i] = euclid_dist(nodes[i], nodes[j]);
    // Dijkstra from node 0 to node 1
    std::vector<R> dist(M, INF);
    std::vector<bool> done(M, false);
    dist[0] = R(0);
    for (int it = 0; it < M; ++it) {
        int best = -1;
        for (int i = 0; i < M; ++i)
            if (!done[i] && (best < 0 || dist[i] < dist[best])) best = i;
        if (best < 0 || dist[best] == INF) break;
        done[best] = true;
        for (int j = 0; j < M; ++j)
            if (w[best][j] < INF && dist[best] + w[best][j] < dist[j]) dist[j] = dist[best] + w[best][j];
    }
    return dist[1];
}

}  // namespace paperfold

#endif  // PAPERFOLD_GEOMETRY_HPP
