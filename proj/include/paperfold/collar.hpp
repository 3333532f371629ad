#ifndef PAPERFOLD_COLLAR_HPP
#define PAPERFOLD_COLLAR_HPP

#include "paperfold/criterion.hpp"

#include <cmath>

namespace paperfold {

// ---------------------------------------------------------------------------
// Foliated collar: one trapezoid per side, vertical sides along the internal
// angle bisectors, fixed height hbar.  Valid when every top is between half
// and twice its base and the trapezoids meet only along shared vertical
// sides.
// ---------------------------------------------------------------------------

template <class T> struct Trapezoid {
    int side = -1;
    Pt<T> base0, base1, top1, top0;  // ccw quad: base0 -> base1 -> top1 -> top0
    T top_len{};                     // signed length along the side direction
};

namespace collar_detail {

// Internal-angle bisector direction at vertex i (not normalized).
template <class T> Pt<T> bisector_dir(const Polygon<T>& P, int i) {
    int n = P.n();
    Pt<T> u_fwd = P.unit_dir(i);
    Pt<T> u_back = Pt<T>(T(0), T(0)) - P.unit_dir((i + n - 1) % n);
    Pt<T> d = u_fwd + u_back;
    if (sign_tol(cross(u_fwd, d)) < 0) d = Pt<T>(T(0), T(0)) - d;
    return d;
}

template <class T> Trapezoid<T> make_trapezoid(const Polygon<T>& P, int i, const T& h) {
    int n = P.n();
    Trapezoid<T> q;
    q.side = i;
    q.base0 = P.verts[i];
    q.base1 = P.verts[(i + 1) % n];
    Pt<T> e = P.unit_dir(i);
    Pt<T> d0 = bisector_dir(P, i);
    Pt<T> d1 = bisector_dir(P, (i + 1) % n);
    T c0 = cross(e, d0), c1 = cross(e, d1);
    if (sign_tol(c0) <= 0 || sign_tol(c1) <= 0) fail(Errc::InvalidHeight, "bisector degenerate");
    q.top0 = q.base0 + d0 * T(h / c0);
    q.top1 = q.base1 + d1 * T(h / c1);
    q.top_len = dot(Pt<T>(q.top1 - q.top0), e);
    return q;
}

template <class T> bool quad_contains(const Trapezoid<T>& q, const Pt<T>& p, bool strict) {
    const Pt<T>* c[4] = {&q.base0, &q.base1, &q.top1, &q.top0};
    for (int k = 0; k < 4; ++k) {
        int o = orient(*c[k], *c[(k + 1) % 4], p);
        if (strict ? o <= 0 : o < 0) return false;
    }
    return true;
}

template <class T>
bool quads_conflict(const Trapezoid<T>& a, const Trapezoid<T>& b, bool adjacent) {
    const Pt<T>* ca[4] = {&a.base0, &a.base1, &a.top1, &a.top0};
    const Pt<T>* cb[4] = {&b.base0, &b.base1, &b.top1, &b.top0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (segments_cross_properly(*ca[i], *ca[(i + 1) % 4], *cb[j], *cb[(j + 1) % 4])) return true;
    for (int i = 0; i < 4; ++i) {
        if (quad_contains(b, *ca[i], true)) return true;
        if (quad_contains(a, *cb[i], true)) return true;
    }
    if (!adjacent) {
        // non-adjacent trapezoids may not touch at all
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (segments_intersect(*ca[i], *ca[(i + 1) % 4], *cb[j], *cb[(j + 1) % 4])) return true;
    }
    return false;
}

}  // namespace collar_detail

// eq-K ratios plus pairwise disjointness, decided exactly.
template <class T> bool collar_height_valid(const Polygon<T>& P, const T& h) {
    if (!(h > 0)) return false;
    const int n = P.n();
    std::vector<Trapezoid<T>> traps;
    for (int i = 0; i < n; ++i) {
        Trapezoid<T> q;
        try {
            q = collar_detail::make_trapezoid(P, i, h);
        } catch (const Error&) {
            return false;
        }
        // 1/2 <= |top| / |base| <= 2
        if (sign_tol(q.top_len) <= 0) return false;
        if (q.top_len * T(2) < P.side_len[i]) return false;
        if (q.top_len > P.side_len[i] * T(2)) return false;
        traps.push_back(std::move(q));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (collar_detail::quads_conflict(traps[i], traps[j], adjacent)) return false;
        }
    return true;
}

// Largest height of the form |dP| / 2^k (k >= 3) passing the predicate.
template <class T> T choose_collar_height(const Polygon<T>& P) {
    T h = P.boundary_len;
    for (int k = 1; k <= 64; ++k) {
        h = T(h / T(2));
        if (k >= 3 && collar_height_valid(P, h)) return h;
    }
    fail(Errc::NoValidHeight, "no collaring height of the form |dP|/2^k with k <= 64");
}

template <class T> class Collar {
  public:
    Polygon<T> poly;
    T h{};
    std::vector<Trapezoid<T>> traps;

    // point on the vertical leaf through boundary parameter t at height hh
    Pt<T> gamma(const T& t, const T& hh) const {
        auto [side, off] = poly.locate(t);
        const auto& q = traps[side];
        Pt<T> base = poly.verts[side] + poly.unit_dir(side) * off;
        T frac = off / poly.side_len[side];
        Pt<T> top = q.top0 + Pt<T>(q.top1 - q.top0) * frac;
        return base + Pt<T>(top - base) * T(hh / h);
    }

    struct PsiResult {
        T t{};       // boundary parameter of the leaf
        T height{};  // height of the input point
        int side = -1;
    };

    // retraction along vertical leaves; p must lie in the collar
    PsiResult psi(const Pt<T>& p) const {
        for (int i = 0; i < static_cast<int>(traps.size()); ++i) {
            if (!collar_detail::quad_contains(traps[i], p, false)) continue;
            const auto& q = traps[i];
            Pt<T> e = poly.unit_dir(i);
            T hp = cross(e, Pt<T>(p - q.base0));
            Pt<T> foot;
            if (q.top_len == poly.side_len[i]) {
                // parallelogram: slide back along the constant leaf vector
                Pt<T> w = Pt<T>(q.top0 - q.base0);
                foot = p - w * T(hp / h);
            } else {
                // leaves pass through the apex of the extended vertical sides
                Pt<T> d0 = Pt<T>(q.top0 - q.base0), d1 = Pt<T>(q.top1 - q.base1);
                T den = cross(d0, d1);
                T s = cross(Pt<T>(q.base1 - q.base0), d1) / den;
                Pt<T> apex = q.base0 + d0 * s;
                // intersect the line apex->p with the base line
                Pt<T> dir = Pt<T>(p - apex);
                T den2 = cross(e, dir);
                if (sign_tol(den2) == 0) fail(Errc::OutOfRange, "leaf parallel to base");
                T u = cross(Pt<T>(apex - q.base0), dir) / den2;
                foot = q.base0 + e * u;
            }
            T off = dot(Pt<T>(foot - q.base0), e);
            if (off < -scalar_traits<T>::tol() || off > poly.side_len[i] + scalar_traits<T>::tol())
                continue;  // leaf foot outside this trapezoid's base: try the neighbor
            PsiResult r;
            r.side = i;
            r.t = poly.wrap(T(poly.cum_len[i] + off));
            r.height = hp;
            return r;
        }
        fail(Errc::OutOfRange, "point not in the collar");
    }

    real_t<T> leaf_length(const T& t) const {
        auto [side, off] = poly.locate(t);
        const auto& q = traps[side];
        Pt<T> base = poly.verts[side] + poly.unit_dir(side) * off;
        T frac = off / poly.side_len[side];
        Pt<T> top = q.top0 + Pt<T>(q.top1 - q.top0) * frac;
        return euclid_dist(base, top);
    }
};

template <class T> Collar<T> build_collar(const Polygon<T>& P, const T& h) {
    if (!collar_height_valid(P, h)) fail(Errc::InvalidHeight, "height fails the collaring conditions");
    Collar<T> c;
    c.poly = P;
    c.h = h;
    for (int i = 0; i < P.n(); ++i) c.traps.push_back(collar_detail::make_trapezoid(P, i, h));
    return c;
}

// ---------------------------------------------------------------------------
// Polygon constants.
// ---------------------------------------------------------------------------

template <class T> struct PolygonConstants {
    T hbar{}, rbar{};
    T boundary_len{};
    T M{};      // (1/5) min(rbar/hbar, hbar/rbar)
    T delta{};  // (1/4) min(hbar, rbar, 2 hbar rbar / |dP|)
    T A{};      // rbar / (2 delta)
    T R{};      // 8 / hbar, from the quarter theorem on B(p_inf; hbar/2)
    double kappa_log = 0;       // ln kappa, coarse bound 2 exp(32 |dP| / delta)
    double kappa_diam_log = 0;  // ln kappa via a computed diameter bound
};

template <class T>
PolygonConstants<T> compute_constants(const T& boundary_len, const T& hbar,
                                      const std::optional<T>& injectivity) {
    PolygonConstants<T> pc;
    pc.hbar = hbar;
    pc.rbar = injectivity ? std::min(hbar, *injectivity) : hbar;  // plain case: rbar = hbar
    pc.boundary_len = boundary_len;
    pc.M = T(std::min(T(pc.rbar / pc.hbar), T(pc.hbar / pc.rbar)) / T(5));
    pc.delta = T(std::min({pc.hbar, pc.rbar, T(T(2) * pc.hbar * pc.rbar / boundary_len)}) / T(4));
    pc.A = T(pc.rbar / (T(2) * pc.delta));
    pc.R = T(T(8) / pc.hbar);
    pc.kappa_log = std::log(2.0) + 32.0 * to_double(boundary_len) / to_double(pc.delta);
    pc.kappa_diam_log = pc.kappa_log;
    return pc;
}

template <class T>
PolygonConstants<T> compute_constants(const Polygon<T>& P, const T& hbar, const ScarGraph<T>& g) {
    auto pc = compute_constants(P.boundary_len, hbar, g.injectivity);
    // diameter form: any two points of P_{delta/2} join through the
    // horizontal leaf at height delta/2, giving an explicit upper bound on
    // the intrinsic diameter
    double half_top = 0;
    double max_leaf = 0;
    for (int i = 0; i < P.n(); ++i) {
        double cot0 = to_double(P.cot_semi[i]), cot1 = to_double(P.cot_semi[(i + 1) % P.n()]);
        double len_h = to_double(P.side_len[i]) - to_double(pc.delta) / 2 * (cot0 + cot1);
        half_top += std::max(len_h, 0.0) / 2;
        double s2 = to_double(P.sin2_semi[i]);
        if (s2 > 0) max_leaf = std::max(max_leaf, to_double(pc.delta) / 2 / std::sqrt(s2));
    }
    double diam_bound = 2 * max_leaf + half_top;
    pc.kappa_diam_log = std::log(2.0) + 16.0 * diam_bound / to_double(pc.delta);
    return pc;
}

// ---------------------------------------------------------------------------
// Local modulus bound at a point of divergent class:
//   |u(x)| <= 4 / exp(2 pi int_{A d}^{r0} iota(q;t) dt),  d = d_S(q, x),
// with r0 the largest planar radius <= rbar/2.
// ---------------------------------------------------------------------------

template <class T> T largest_planar_radius_below(const GoodnessProfile<T>& gp, const T& cap) {
    if (gp.profile.is_planar_radius(cap)) return cap;
    auto bad = gp.profile.nonplanar_radii(T(cap / T(1024)), cap);
    T lo(0);
    for (auto& b : bad)
        if (b < cap) lo = std::max(lo, b);
    T cand = T((lo + cap) / T(2));
    for (int guard = 0; guard < 64 && !gp.profile.is_planar_radius(cand); ++guard)
        cand = T((cand + cap) / T(2));
    if (!gp.profile.is_planar_radius(cand)) fail(Errc::OutOfRange, "no planar radius below cap");
    return cand;
}

template <class T>
double local_modulus_bound(const PolygonConstants<T>& pc, const GoodnessProfile<T>& gp, const T& d) {
    auto dv = divergence_test(*gp.profile.g, gp.profile.center);
    if (dv.verdict == Verdict::RefusedNonIsolated) fail(Errc::RefusedNonIsolated, dv.rationale);
    if (!(d > 0) || d >= std::min(pc.delta, T(pc.rbar / pc.A)))
        fail(Errc::TooFar, "local modulus bound needs 0 < d < min(delta, rbar/A)");
    T r0 = largest_planar_radius_below(gp, T(pc.rbar / T(2)));
    T lo = T(pc.A * d);
    if (lo >= r0) return 4.0;
    auto iv = goodness_integral(gp, lo, r0);
    return 4.0 / std::exp(2 * M_PI * iv.value);
}

// ---------------------------------------------------------------------------
// Modulus of continuity rho(q, t) for q in the collar at height h_q above
// the scar base point, and the sampled global modulus rho_bar.
// ---------------------------------------------------------------------------

// Prefix-integral cache over the goodness profile of one base point, for
// fast evaluation of I(x) = int_x^rbar iota.
template <class T> class GoodnessIntegralCache {
  public:
    GoodnessIntegralCache() = default;
    GoodnessIntegralCache(const GoodnessProfile<T>& gp, double lo) : M_(gp.M) {
        rbar_ = to_double(gp.rbar);
        auto ps = criterion_detail::build_pieces(gp.profile, T(lo), gp.rbar);
        events_ = ps.events;
        piece_.resize(events_.size() > 0 ? events_.size() - 1 : 0);
        prefix_.assign(events_.size(), 0.0);
        for (std::size_t i = 0; i + 1 < events_.size(); ++i) {
            double x1 = events_[i], x2 = events_[i + 1];
            auto& pc = piece_[i];
            pc.sliver = false;
            for (auto& sl : ps.slivers)
                if (x1 >= sl.lo - 1e-18 && x2 <= sl.hi + 1e-18) pc.sliver = true;
            double xm = (x1 + x2) / 2;
            pc.mm = to_double(gp.profile.m(T(xm)));
            auto nn = gp.profile.n_right(T(xm));
            pc.n = nn ? static_cast<double>(*nn) : -1;
            prefix_[i + 1] = prefix_[i] + piece_value(i, x1, x2);
        }
    }

    // int_x^rbar iota(s) ds
    double tail_from(double x) const {
        if (events_.empty() || x >= rbar_) return 0.0;
        x = std::max(x, events_.front());
        auto it = std::upper_bound(events_.begin(), events_.end(), x);
        std::size_t i = it == events_.begin() ? 0 : static_cast<std::size_t>(it - events_.begin()) - 1;
        if (i + 1 >= events_.size()) return 0.0;
        double total = prefix_.back();
        return total - prefix_[i] - piece_value(i, events_[i], x);
    }

  private:
    struct Piece {
        double mm = 0, n = 0;
        bool sliver = false;
    };
    std::vector<double> events_;
    std::vector<Piece> piece_;
    std::vector<double> prefix_;
    double M_ = 0.2, rbar_ = 0;

    double piece_value(std::size_t i, double x1, double x2) const {
        if (x2 <= x1) return 0.0;
        const auto& pc = piece_[i];
        double xm = (events_[i] + events_[i + 1]) / 2;
        if (pc.sliver || pc.n < 0) return M_ * (x2 - x1) / pc.mm / 2;
        if (pc.n == 0) return M_ * (x2 - x1) / pc.mm;
        double B = 3 * pc.n, A = pc.mm - 2 * pc.n * xm;
        return M_ / B * std::log((A + B * x2) / (A + B * x1));
    }
};

template <class T> struct ModulusPoint {
    ScarPoint<T> base;
    GoodnessIntegralCache<T> cache;
};

template <class T> class ModulusProfile {
  public:
    PolygonConstants<T> pc;
    const ScarGraph<T>* g = nullptr;
    std::vector<ModulusPoint<T>> samples;
    std::vector<T> heights;
    T pitch{};

    double rho(std::size_t sample, const T& h_q, const T& t) const {
        return rho_from_cache(samples[sample].cache, h_q, t);
    }

    double rho_from_cache(const GoodnessIntegralCache<T>& cache, const T& h_q, const T& t) const {
        if (!(t >= 0) || t >= pc.delta) fail(Errc::OutOfRange, "rho needs 0 <= t < delta");
        if (!(h_q >= 0) || h_q > pc.delta) fail(Errc::OutOfRange, "rho needs 0 <= h_q <= delta");
        if (t == 0) return 0.0;
        double R = to_double(pc.R), A = to_double(pc.A);
        if (t <= h_q) {
            double mu = A * 2 * to_double(h_q);
            double I = cache.tail_from(mu);
            return 8 * R * to_double(t) / (to_double(h_q) * std::exp(2 * M_PI * I));
        }
        double mu = A * (to_double(t) + to_double(h_q));
        double I = cache.tail_from(mu);
        return 8 * R / std::exp(2 * M_PI * I);
    }

    struct GlobalValue {
        double rho_hat = 0;      // 2 max over samples of rho(q, t)
        LogVal kappa_t{};        // kappa * t in log form (kappa is astronomically large)
        LogVal rho_bar{};        // max(rho_hat, kappa t)
        double pitch = 0;
    };

    GlobalValue global(const T& t) const {
        GlobalValue out;
        for (auto& s : samples)
            for (auto& h : heights) out.rho_hat = std::max(out.rho_hat, 2 * rho_from_cache(s.cache, h, t));
        out.kappa_t = LogVal::from_log(pc.kappa_log + std::log(to_double(t)));
        out.rho_bar = log_max(LogVal::from_value(out.rho_hat), out.kappa_t);
        out.pitch = to_double(pitch);
        return out;
    }
};

// Sampling set: all scar vertices, edge midpoints, a grid of pitch rbar/64
// on edges and tail branches (branches shorter than 1e-9 |dP| merge into the
// centre), crossed with heights {0, delta/8, delta/4, delta/2, delta}.
template <class T>
ModulusProfile<T> build_modulus_profile(const ScarGraph<T>& g, const PolygonConstants<T>& pc,
                                        double M_override = -1) {
    ModulusProfile<T> mp;
    mp.pc = pc;
    mp.g = &g;
    mp.pitch = T(pc.rbar / T(64));
    mp.heights = {T(0), T(pc.delta / T(8)), T(pc.delta / T(4)), T(pc.delta / T(2)), pc.delta};
    double M = M_override > 0 ? M_override : to_double(pc.M);
    double lo = to_double(pc.A) * to_double(pc.delta) / (1 << 22);

    auto add = [&](const ScarPoint<T>& q) {
        auto gp = goodness_profile(g, q, pc.rbar, M);
        mp.samples.push_back({q, GoodnessIntegralCache<T>(gp, lo)});
    };
    for (std::size_t v = 0; v < g.verts.size(); ++v) add(ScarPoint<T>::vertex(static_cast<int>(v)));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        long steps = std::max(2L, static_cast<long>(std::ceil(to_double(ed.len) / to_double(mp.pitch))));
        for (long j = 1; j < steps; ++j)
            add(ScarPoint<T>::on_edge(static_cast<int>(e),
                                      T(ed.len * T(static_cast<double>(j)) / T(static_cast<double>(steps)))));
        if (steps == 2) add(ScarPoint<T>::on_edge(static_cast<int>(e), T(ed.len / T(2))));
    }
    T cutoff = T(g.total_measure * T(1e-9));
    for (std::size_t si = 0; si < g.stars.size(); ++si) {
        const auto& f = g.stars[si].fam;
        for (long n = 1; n < 256; ++n) {
            auto a = tail_a_exact(f, n);
            real_t<T> an = a ? to_real(*a) : tail_a(f, n);
            if (an < to_real(cutoff)) break;
            long steps = std::max(1L, static_cast<long>(std::ceil(to_double(an) / to_double(mp.pitch))));
            for (long j = 1; j <= steps; ++j)
                add(ScarPoint<T>::on_star(static_cast<int>(si), n,
                                          T(T(to_double(an)) * T(static_cast<double>(j)) /
                                            T(static_cast<double>(steps + 1)))));
        }
    }
    return mp;
}

}  // namespace paperfold

#endif  // PAPERFOLD_COLLAR_HPP
