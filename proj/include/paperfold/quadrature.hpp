#ifndef PAPERFOLD_QUADRATURE_HPP
#define PAPERFOLD_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace paperfold {

struct QuadResult {
    double value = 0;
    double error = 0;
};

namespace quad_detail {

// Gauss(7)/Kronrod(15) nodes and weights on [-1, 1].
inline const double gk_nodes[8] = {
    0.000000000000000, 0.405845151377397, 0.741531185599394, 0.949107912342759,
    0.207784955007898, 0.586087235467691, 0.864864423359769, 0.991455371120813};
inline const double g7_w[8] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870, 0, 0, 0, 0};
inline const double k15_w[8] = {
    0.209482141084728, 0.190350578064785, 0.140653259715525, 0.063092092629979,
    0.204432940075298, 0.169004726639267, 0.104790010322250, 0.022935322010529};

template <class F> QuadResult gk15(const F& f, double a, double b) {
    const double mid = (a + b) / 2, half = (b - a) / 2;
    double y0 = f(mid);
    double g7 = g7_w[0] * y0, k15 = k15_w[0] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = half * gk_nodes[i];
        double yi = f(mid + dx) + f(mid - dx);
        g7 += g7_w[i] * yi;
        k15 += k15_w[i] * yi;
    }
    g7 *= half;
    k15 *= half;
    double err = 200 * std::fabs(g7 - k15);
    err = std::min(std::fabs(g7 - k15), err * std::sqrt(err));
    return {k15, err};
}

}  // namespace quad_detail

// Adaptive Gauss-Kronrod integration with an interval heap.
template <class F>
QuadResult adaptive_quadrature(const F& f, double a, double b, double abs_tol = 1e-10,
                               int max_intervals = 20000) {
    struct Seg {
        double a, b, value, error;
    };
    std::vector<Seg> segs;
    auto push = [&](double lo, double hi) {
        auto r = quad_detail::gk15(f, lo, hi);
        segs.push_back({lo, hi, r.value, r.error});
    };
    push(a, b);
    while (static_cast<int>(segs.size()) < max_intervals) {
        double total_err = 0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total_err += segs[i].error;
            if (segs[i].error > segs[worst].error) worst = i;
        }
        if (total_err <= abs_tol) break;
        Seg s = segs[worst];
        segs.erase(segs.begin() + worst);
        double mid = (s.a + s.b) / 2;
        if (mid <= s.a || mid >= s.b) {  // interval at rounding resolution
            segs.push_back(s);
            break;
        }
        push(s.a, mid);
        push(mid, s.b);
    }
    QuadResult out;
    for (auto& s : segs) {
        out.value += s.value;
        out.error += s.error;
    }
    return out;
}

}  // namespace paperfold

#endif  // PAPERFOLD_QUADRATURE_HPP
