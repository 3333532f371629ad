#ifndef PAPERFOLD_BALL_PROFILE_HPP
#define PAPERFOLD_BALL_PROFILE_HPP

#include "paperfold/scar.hpp"

namespace paperfold {

// How many fold lengths of the family are >= rho, how many tie exactly.
template <class T> long tail_tie_count(const TailFamily<T>& f, const T& rho) {
    if (f.kind == TailKind::Geometric) {
        auto bd = tail_ball(f, rho);
        if (bd.N >= 1) {
            auto a = tail_a_exact(f, bd.N);
            if (a && near(*a, rho)) return 1;
        }
        return 0;
    }
    if (f.kind == TailKind::MiddleThirdsCantor) {
        // a whole level of 2^k folds can tie
        T c = f.cantor_scale();
        T p(1);
        for (int k = 0; k <= 64; ++k) {
            if (near(T(c / p), rho)) return 1L << k;
            if (T(c / p) < rho) return 0;
            p *= T(3);
        }
        return 0;
    }
    return 0;  // PowerLaw: float data, exact ties are not meaningful
}

// Piecewise-exact profile of r |-> (m(q;r), n(q;r)) around a scar point.
// Graph material is handled combinatorially (per-edge interval unions of the
// covered set), tail stars analytically through tail_ball.
template <class T> class BallProfile {
  public:
    using R = real_t<T>;

    const ScarGraph<T>* g = nullptr;
    ScarPoint<T> center;
    T rmax{};
    std::vector<std::optional<T>> vdist;

    struct StarView {
        int star = -1;
        std::optional<T> D;    // distance from q to the star centre
        bool on_branch = false;
        long branch0 = 0;
        T off0{};
    };
    std::vector<StarView> stars;

    struct IntervalT {
        T lo, hi;
    };

    // Covered subset of edge e at radius r, as a merged interval union.
    std::vector<IntervalT> edge_cover(int e, const T& r) const {
        const auto& ed = g->edges[e];
        std::vector<IntervalT> iv;
        auto push = [&](T lo, T hi) {
            lo = std::max(lo, T(0));
            hi = std::min(hi, ed.len);
            if (hi >= lo) iv.push_back({lo, hi});
        };
        if (vdist[ed.u] && r >= *vdist[ed.u]) push(T(0), T(r - *vdist[ed.u]));
        if (vdist[ed.v] && r >= *vdist[ed.v]) push(T(ed.len - (r - *vdist[ed.v])), ed.len);
        if (center.loc == ScarPoint<T>::Loc::Edge && center.id == e) push(T(center.offset - r), T(center.offset + r));
        std::sort(iv.begin(), iv.end(), [](const IntervalT& a, const IntervalT& b) { return a.lo < b.lo; });
        std::vector<IntervalT> merged;
        for (auto& x : iv) {
            if (!merged.empty() && x.lo <= merged.back().hi) merged.back().hi = std::max(merged.back().hi, x.hi);
            else merged.push_back(x);
        }
        return merged;
    }

    // measure of the closed metric ball (exact when no PowerLaw star intrudes)
    std::optional<T> m_exact(const T& r) const {
        T acc(0);
        for (std::size_t e = 0; e < g->edges.size(); ++e)
            for (auto& iv : edge_cover(static_cast<int>(e), r)) acc += T(iv.hi - iv.lo);
        for (auto& sv : stars) {
            auto contrib = star_cover_exact(sv, r);
            if (!contrib) return std::nullopt;
            acc += *contrib;
        }
        return T(acc * T(2));
    }

    R m(const T& r) const {
        auto ex = m_exact(r);
        if (ex) return to_real(*ex);
        R acc(0);
        for (std::size_t e = 0; e < g->edges.size(); ++e)
            for (auto& iv : edge_cover(static_cast<int>(e), r)) acc += to_real(T(iv.hi - iv.lo));
        for (auto& sv : stars) acc += star_cover(sv, r);
        return acc * R(2);
    }

    // n(q; r+): the right-limit count; nullopt when the circle collapses onto
    // a star centre (infinitely many branch fronts open at once).
    std::optional<long> n_right(const T& r) const {
        long count = 0;
        for (std::size_t ei = 0; ei < g->edges.size(); ++ei) {
            const auto& ed = g->edges[ei];
            bool ce = center.loc == ScarPoint<T>::Loc::Edge && center.id == static_cast<int>(ei);
            std::optional<T> du = vdist[ed.u], dv = vdist[ed.v];
            // meeting radii with the facing fronts
            auto meet = [&](const T& a, const T& b, const T& gaplen) { return T((a + b + gaplen) / T(2)); };
            if (du) {
                T death = dv ? meet(*du, *dv, ed.len) : T(rmax + r + T(1));
                if (ce) death = std::min(death, T((*du + center.offset) / T(2)));
                if (*du <= r && r < death) ++count;
            }
            if (dv) {
                T death = du ? meet(*du, *dv, ed.len) : T(rmax + r + T(1));
                if (ce) death = std::min(death, T((*dv + (ed.len - center.offset)) / T(2)));
                if (*dv <= r && r < death) ++count;
            }
            if (ce) {
                T death_l = du ? T((*du + center.offset) / T(2)) : center.offset;
                if (r < death_l) ++count;
                T death_r = dv ? T((*dv + (ed.len - center.offset)) / T(2)) : T(ed.len - center.offset);
                if (r < death_r) ++count;
            }
        }
        for (auto& sv : stars) {
            if (sv.on_branch) {
                const auto& f = g->stars[sv.star].fam;
                auto a0 = tail_a_exact(f, sv.branch0);
                T tip = a0 ? *a0 : T(0);
                if (!a0) tip = T(tail_a_approx_as_T(f, sv.branch0));
                if (T(sv.off0 + r) < tip) ++count;   // front running to the tip
                if (r < sv.off0) ++count;            // front running to the centre
            }
            if (!sv.D) continue;
            if (near(*sv.D, r)) return std::nullopt;  // circle at the centre: infinitely many fronts open
            if (r > *sv.D) {
                T rho = T(r - *sv.D);
                auto bd = tail_ball(g->stars[sv.star].fam, rho);
                long strict = bd.N - tail_tie_count(g->stars[sv.star].fam, rho);
                if (sv.on_branch) {
                    // own branch handled above
                    auto a0 = tail_a_exact(g->stars[sv.star].fam, sv.branch0);
                    if (a0 && *a0 > rho + scalar_traits<T>::tol()) --strict;
                }
                count += strict;
            }
        }
        return count;
    }

    // n(q;r) with the closed-ball convention: right limit plus tangency
    // multiplicity (dead ends and exact tip hits).
    std::optional<long> n_at(const T& r) const {
        auto base = n_right(r);
        if (!base) return std::nullopt;
        long count = *base;
        // vertices at distance exactly r with no live front beyond them
        for (std::size_t v = 0; v < g->verts.size(); ++v) {
            if (!vdist[v] || !near(*vdist[v], r)) continue;
            long live = 0;
            for (int ei : g->adj[static_cast<int>(v)]) {
                const auto& ed = g->edges[ei];
                for (int side = 0; side < 2; ++side) {
                    int w = side ? ed.v : ed.u;
                    if (w != static_cast<int>(v)) continue;
                    std::optional<T> dw = vdist[w], dx = vdist[side ? ed.u : ed.v];
                    if (!dw || !near(*dw, r)) continue;
                    T death = dx ? T((*dw + *dx + ed.len) / T(2)) : T(r + ed.len);
                    if (r < death && ed.len > 0) ++live;
                }
            }
            if (live == 0) ++count;
        }
        // star tips exactly at distance r
        for (auto& sv : stars) {
            if (sv.D && r > *sv.D) count += tail_tie_count(g->stars[sv.star].fam, T(r - *sv.D));
            if (sv.on_branch) {
                auto a0 = tail_a_exact(g->stars[sv.star].fam, sv.branch0);
                if (a0 && near(T(sv.off0 + r), *a0)) ++count;
            }
        }
        return count;
    }

    bool is_planar_radius(const T& r) const {
        if (!(r > 0)) return false;
        for (std::size_t v = 0; v < g->verts.size(); ++v)
            if (g->verts[v].kind != VertexKind::Planar && vdist[v] && near(*vdist[v], r)) return false;
        for (auto& sv : stars) {
            const auto& st = g->stars[sv.star];
            if (sv.D) {
                if (near(*sv.D, r)) return false;
                if (r > *sv.D) {
                    if (tail_tie_count(st.fam, T(r - *sv.D)) > 0) return false;
                    for (auto& mk : st.marks)
                        if (near(T(*sv.D + mk.offset), r)) return false;
                }
            }
            if (sv.on_branch) {
                auto a0 = tail_a_exact(st.fam, sv.branch0);
                if (a0 && near(T(sv.off0 + r), *a0)) return false;
                for (auto& mk : st.marks)
                    if (mk.n == sv.branch0 && near(abs_val(T(mk.offset - sv.off0)), r)) return false;
            }
        }
        return true;
    }

    // Non-planar radii in [lo, hi].  Near a star centre the tip radii
    // accumulate; enumeration stops after max_per_star entries and reports
    // truncation through `complete`.
    std::vector<T> nonplanar_radii(const T& lo, const T& hi, bool* complete = nullptr,
                                   long max_per_star = 4096) const {
        std::vector<T> out;
        if (complete) *complete = true;
        for (std::size_t v = 0; v < g->verts.size(); ++v)
            if (g->verts[v].kind != VertexKind::Planar && vdist[v] && *vdist[v] >= lo && *vdist[v] <= hi)
                out.push_back(*vdist[v]);
        for (auto& sv : stars) {
            const auto& f = g->stars[sv.star].fam;
            if (sv.D) {
                if (*sv.D >= lo && *sv.D <= hi) out.push_back(*sv.D);
                if (*sv.D < hi) {  // tips sit at D + a_n, shrinking towards D
                    long emitted = 0;
                    for (long n = 1;; ++n) {
                        auto a = tail_a_exact(f, n);
                        T an = a ? *a : T(tail_a_approx_as_T(f, n));
                        T rad = T(*sv.D + an);
                        if (rad < lo) break;
                        if (rad <= hi) {
                            out.push_back(rad);
                            if (++emitted >= max_per_star) {
                                if (complete) *complete = false;
                                break;
                            }
                        }
                        if (!(an > 0)) break;
                    }
                }
                for (auto& mk : g->stars[sv.star].marks) {
                    T rad = T(*sv.D + mk.offset);
                    if (rad >= lo && rad <= hi) out.push_back(rad);
                }
            }
            if (sv.on_branch) {
                auto a0 = tail_a_exact(f, sv.branch0);
                if (a0) {
                    T rad = T(*a0 - sv.off0);
                    if (rad >= lo && rad <= hi) out.push_back(rad);
                }
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end(), [](const T& a, const T& b) { return near(a, b); }),
                  out.end());
        return out;
    }

  private:
    static double tail_a_approx_as_T(const TailFamily<T>& f, long n) { return to_double(tail_a(f, n)); }

    std::optional<T> star_cover_exact(const StarView& sv, const T& r) const {
        const auto& f = g->stars[sv.star].fam;
        T acc(0);
        if (sv.on_branch) {
            auto a0 = tail_a_exact(f, sv.branch0);
            if (!a0) return std::nullopt;
            T lo = std::max(T(sv.off0 - r), T(0));
            T hi = std::min(T(sv.off0 + r), *a0);
            if (hi > lo) acc += T(hi - lo);
            if (r > sv.off0) {
                T rho = T(r - sv.off0);
                auto rest = star_sum_exact(f, rho);
                if (!rest) return std::nullopt;
                acc += *rest - std::min(*a0, rho);
            }
            return acc;
        }
        if (!sv.D || r <= *sv.D) return T(0);
        return star_sum_exact(f, T(r - *sv.D));
    }

    // sum over branches of min(a_n, rho)
    static std::optional<T> star_sum_exact(const TailFamily<T>& f, const T& rho) {
        if (f.kind == TailKind::PowerLaw) return std::nullopt;
        auto bd = tail_ball(f, rho);
        return T(rho * T(static_cast<double>(bd.N)) + bd.remainder);
    }

    R star_cover(const StarView& sv, const T& r) const {
        auto ex = star_cover_exact(sv, r);
        if (ex) return to_real(*ex);
        const auto& f = g->stars[sv.star].fam;
        R acc(0);
        T D = sv.on_branch ? sv.off0 : *sv.D;
        if (sv.on_branch) {
            R a0 = R(tail_a_approx_as_T(f, sv.branch0));
            R lo = std::max(to_real(T(sv.off0 - r)), R(0));
            R hi = std::min(to_real(T(sv.off0 + r)), a0);
            if (hi > lo) acc += hi - lo;
            if (r > D) {
                T rho = T(r - D);
                auto bd = tail_ball(f, rho);
                acc += to_real(rho) * R(static_cast<double>(bd.N)) + bd.remainder_approx;
                acc -= std::min(a0, to_real(rho));
            }
            return acc;
        }
        if (r <= D) return R(0);
        T rho = T(r - D);
        auto bd = tail_ball(f, rho);
        return to_real(rho) * R(static_cast<double>(bd.N)) + bd.remainder_approx;
    }
};

template <class T>
BallProfile<T> ball_profile_unchecked(const ScarGraph<T>& g, const ScarPoint<T>& q, const T& rmax) {
    BallProfile<T> bp;
    bp.g = &g;
    bp.center = q;
    bp.rmax = rmax;
    bp.vdist = scar_detail::dijkstra(g, scar_detail::seeds_of(g, q));
    for (std::size_t s = 0; s < g.stars.size(); ++s) {
        typename BallProfile<T>::StarView sv;
        sv.star = static_cast<int>(s);
        sv.D = bp.vdist[g.stars[s].center];
        if (q.loc == ScarPoint<T>::Loc::Star && q.id == static_cast<int>(s)) {
            sv.on_branch = true;
            sv.branch0 = q.branch;
            sv.off0 = q.offset;
        }
        bp.stars.push_back(sv);
    }
    return bp;
}

template <class T>
BallProfile<T> ball_profile(const ScarGraph<T>& g, const ScarPoint<T>& q, const T& rmax) {
    if (g.injectivity && rmax > *g.injectivity + scalar_traits<T>::tol())
        fail(Errc::BeyondInjectivityRadius, "profile radius exceeds the injectivity radius");
    return ball_profile_unchecked(g, q, rmax);
}

// Does the closed ball of radius r contain a simple closed curve?  A cycle
// must consist of fully covered edges.
template <class T>
bool is_dendrite_ball(const ScarGraph<T>& g, const ScarPoint<T>& q, const T& r) {
    auto bp = ball_profile_unchecked(g, q, r);
    UnionFind uf(static_cast<int>(g.verts.size()));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto cov = bp.edge_cover(static_cast<int>(e), r);
        T total(0);
        for (auto& iv : cov) total += T(iv.hi - iv.lo);
        if (!near(total, g.edges[e].len)) continue;  // not fully covered
        if (g.edges[e].u == g.edges[e].v) return false;
        if (!uf.unite(g.edges[e].u, g.edges[e].v)) return false;
    }
    return true;
}

}  // namespace paperfold

#endif  // PAPERFOLD_BALL_PROFILE_HPP
