#ifndef PAPERFOLD_NUMERIC_HPP
#define PAPERFOLD_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace paperfold {

using BigInt = boost::multiprecision::cpp_int;
using Rat    = boost::multiprecision::cpp_rational;
using Big50  = boost::multiprecision::cpp_bin_float_50;

enum class Errc {
    SelfIntersecting,
    NotCounterclockwise,
    DegenerateVertex,
    NotRationalLength,
    OutOfRange,
    DifferentComponents,
    PointOutside,
    NotFull,
    OverlappingInteriors,
    LengthMismatch,
    DisconnectedUnion,
    NonTilingGaps,
    BeyondInjectivityRadius,
    TooFar,
    RefusedNonIsolated,
    NoValidHeight,
    InvalidHeight,
    NoFloorFound,
    NotOnScheme,
    ParseError,
    Unsupported,
};

struct Error : std::runtime_error {
    Errc code;
    Error(Errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& what) { throw Error(c, what); }

// ---------------------------------------------------------------------------
// Scalar traits.  The geometric kernel is generic over the coordinate type:
//   Rat    -- exact rational arithmetic, predicates decided exactly
//   double -- hardware floats, incidence tolerance 1e-10
//   Big50  -- 50-digit floats, used where doubles cannot separate the data
// real_t is the type used for transcendental quantities (angles, geodesic
// lengths, integrals) computed from T-valued data.
// ---------------------------------------------------------------------------

template <class T> struct scalar_traits;

template <> struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    using real_t = double;
    static Rat tol() { return Rat(0); }
    static std::string name() { return "exact"; }
};

template <> struct scalar_traits<double> {
    static constexpr bool exact = false;
    using real_t = double;
    static double tol() { return 1e-10; }
    static std::string name() { return "double"; }
};

template <> struct scalar_traits<Big50> {
    static constexpr bool exact = false;
    using real_t = Big50;
    static Big50 tol() { return Big50("1e-30"); }
    static std::string name() { return "big50"; }
};

template <class T> using real_t = typename scalar_traits<T>::real_t;

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }
inline double to_double(double x) { return x; }
inline double to_double(const Big50& x) { return x.template convert_to<double>(); }

// Convert a coordinate value to the real type used for derived quantities.
inline double to_real_of(const Rat& x, double*) { return to_double(x); }
inline double to_real_of(double x, double*) { return x; }
inline Big50 to_real_of(const Big50& x, Big50*) { return x; }

template <class T> typename scalar_traits<T>::real_t to_real(const T& x) {
    return to_real_of(x, static_cast<typename scalar_traits<T>::real_t*>(nullptr));
}

template <class T> T abs_val(const T& x) { return x < 0 ? T(-x) : x; }

template <class T> bool near(const T& a, const T& b) {
    return abs_val(T(a - b)) <= scalar_traits<T>::tol();
}

template <class T> int sign_tol(const T& x) {
    if (x > scalar_traits<T>::tol()) return 1;
    if (x < -scalar_traits<T>::tol()) return -1;
    return 0;
}

// sqrt of a scalar.  For Rat the square root must itself be rational: the
// boundary coordinate system needs exact side lengths, so polygons in exact
// mode are restricted to rational-length sides (axis-aligned boxes,
// Pythagorean slopes, ...).
inline std::optional<Rat> rational_sqrt(const Rat& x) {
    using boost::multiprecision::numerator;
    using boost::multiprecision::denominator;
    if (x < 0) return std::nullopt;
    BigInt n = numerator(x), d = denominator(x);
    BigInt sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rat(sn, sd);
}

inline Rat sqrt_scalar(const Rat& x) {
    auto r = rational_sqrt(x);
    if (!r) fail(Errc::NotRationalLength, "irrational length in exact mode");
    return *r;
}
inline double sqrt_scalar(double x) { return std::sqrt(x); }
inline Big50 sqrt_scalar(const Big50& x) { return sqrt(x); }

template <class T> T from_int(long v) { return T(v); }

// Rational parsing/formatting for scheme files: canonical "p/q" or "p".
inline Rat parse_rat(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) {
            if (s.find('.') != std::string::npos) {
                // decimal literal: use exact binary expansion of the string
                std::size_t pos = 0;
                bool neg = false;
                if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
                BigInt num = 0, den = 1;
                bool frac = false, any = false;
                for (; pos < s.size(); ++pos) {
                    if (s[pos] == '.') { if (frac) fail(Errc::ParseError, s); frac = true; continue; }
                    if (s[pos] < '0' || s[pos] > '9') fail(Errc::ParseError, "bad rational: " + s);
                    num = num * 10 + (s[pos] - '0');
                    if (frac) den *= 10;
                    any = true;
                }
                if (!any) fail(Errc::ParseError, "bad rational: " + s);
                Rat r(num, den);
                return neg ? Rat(-r) : r;
            }
            return Rat(BigInt(s));
        }
        BigInt p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) fail(Errc::ParseError, "zero denominator: " + s);
        return Rat(p, q);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(Errc::ParseError, "bad rational: " + s);
    }
}

inline std::string format_rat(const Rat& x) {
    using boost::multiprecision::numerator;
    using boost::multiprecision::denominator;
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

// Logarithmic value for quantities like kappa*t that overflow doubles.
struct LogVal {
    double ln;  // natural log of a positive quantity
    static LogVal from_value(double v) { return {std::log(v)}; }
    static LogVal from_log(double l) { return {l}; }
    double value() const { return std::exp(ln); }  // may overflow to inf
    bool operator<(const LogVal& o) const { return ln < o.ln; }
    bool operator>(const LogVal& o) const { return ln > o.ln; }
};

inline LogVal log_max(LogVal a, LogVal b) { return a.ln >= b.ln ? a : b; }

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n = 0) : parent(n) { for (int i = 0; i < n; ++i) parent[i] = i; }
    int find(int x) {
        while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace paperfold

#endif  // PAPERFOLD_NUMERIC_HPP
