#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "flype/bigint.hpp"
#include "flype/weight.hpp"

namespace flype {

struct Estimate {
    double value = 0;
    double err = 0;
};

// Fixed estimator constants: Richardson depth and the error bar defined as
// the spread of the last three extrapolants.
inline constexpr int kRichardsonDepth = 7;

namespace detail {

// Neville tableau evaluated at x = 0; returns the diagonal (deepest entries).
inline std::vector<double> neville_to_zero(const std::vector<double>& xs,
                                           const std::vector<double>& ys, int max_depth) {
    size_t n = xs.size();
    std::vector<std::vector<double>> T(n);
    for (size_t i = 0; i < n; ++i) {
        T[i].resize(i + 1);
        T[i][0] = ys[i];
        size_t depth = std::min(i, size_t(max_depth));
        for (size_t m = 1; m <= depth; ++m)
            T[i][m] = (xs[i - m] * T[i][m - 1] - xs[i] * T[i - 1][m - 1]) / (xs[i - m] - xs[i]);
    }
    std::vector<double> diag;
    for (size_t i = 0; i < n; ++i) diag.push_back(T[i][std::min(i, size_t(max_depth))]);
    return diag;
}

inline Estimate from_diagonal(const std::vector<double>& diag) {
    if (diag.empty()) throw std::invalid_argument("estimator: empty tableau");
    Estimate e;
    e.value = diag.back();
    double lo = e.value, hi = e.value;
    size_t take = std::min<size_t>(3, diag.size());
    for (size_t i = diag.size() - take; i < diag.size(); ++i) {
        lo = std::min(lo, diag[i]);
        hi = std::max(hi, diag[i]);
    }
    e.err = hi - lo;
    return e;
}

}  // namespace detail

// Evaluate a_p(n) = sum_k a_{k,p,0} n^k from a two-leg tensor.
inline std::vector<double> series_at_n(const CountTensor& tensor, double n) {
    std::vector<std::vector<BigInt>> rows = tensor.rows_p2zero();
    std::vector<double> out;
    for (auto& row : rows) {
        double v = 0, pw = 1;
        for (auto& c : row) {
            if (c != 0) v += c.convert_to<double>() * pw;
            pw *= n;
        }
        out.push_back(v);
    }
    return out;
}

// Ratio-method growth-rate estimate with Richardson extrapolation in 1/p.
inline Estimate entropy_estimate(const std::vector<double>& a) {
    size_t positive = 0;
    for (double v : a)
        if (v > 0) ++positive;
    if (positive < 8 || positive != a.size())
        throw std::invalid_argument("entropy_estimate: need at least 8 positive terms");
    std::vector<double> xs, ys;
    for (size_t p = 1; p + 1 < a.size(); ++p) {
        xs.push_back(1.0 / double(p));
        ys.push_back(std::log(a[p + 1] / a[p]));
    }
    return detail::from_diagonal(detail::neville_to_zero(xs, ys, kRichardsonDepth));
}

inline Estimate entropy_estimate(const std::vector<BigInt>& a) {
    std::vector<double> v;
    for (auto& c : a) {
        if (c <= 0) throw std::invalid_argument("entropy_estimate: nonpositive term");
        v.push_back(c.convert_to<double>());
    }
    return entropy_estimate(v);
}

// Growth rate per order on one parity class (odd/even orders separately),
// for fugacities where the two interleave differently.
inline Estimate entropy_estimate_parity(const std::vector<double>& a, int parity) {
    std::vector<double> xs, ys;
    for (size_t p = size_t(parity); p + 2 < a.size(); p += 2) {
        if (p == 0 || a[p] <= 0 || a[p + 2] <= 0) continue;
        xs.push_back(1.0 / double(p));
        ys.push_back(0.5 * std::log(a[p + 2] / a[p]));
    }
    if (xs.size() < 4) throw std::invalid_argument("entropy_estimate_parity: too few terms");
    return detail::from_diagonal(detail::neville_to_zero(xs, ys, kRichardsonDepth));
}

// Power-law correction exponent: alpha from second differences of the log
// ratios, extrapolated in 1/p. A positive sequence is required; signed data
// (n < 0) is refused since the dominant singularity need not be real there.
inline Estimate critical_exponent_ratio(const std::vector<double>& a) {
    for (double v : a)
        if (v <= 0) throw std::invalid_argument("critical_exponent: nonpositive term");
    std::vector<double> r, xs, ys;
    for (size_t p = 1; p + 1 < a.size(); ++p) r.push_back(std::log(a[p + 1] / a[p]));
    for (size_t i = 0; i + 1 < r.size(); ++i) {
        size_t p = i + 1;
        double lp = std::log(double(p + 1) / double(p));
        double lp1 = std::log(double(p + 2) / double(p + 1));
        xs.push_back(1.0 / double(p));
        ys.push_back((r[i] - r[i + 1]) / (lp - lp1));
    }
    return detail::from_diagonal(detail::neville_to_zero(xs, ys, kRichardsonDepth));
}

// Compositional inverse of 1 + sum a_p g^p in floating point; returns the
// absolute coefficients of the reverted series. Removes the logarithmic
// singularity corrections of the direct series for 1 <= n <= 2.
inline std::vector<double> invert_series_numeric(const std::vector<double>& a) {
    if (a.size() < 3 || a[0] == 0) throw std::invalid_argument("invert_series: bad input");
    size_t N = a.size() - 1;
    // normalize to h(g) = sum_{p>=1} (a_p/a_0) g^p, then solve h(b(w)) = w
    std::vector<double> h(N + 1, 0.0);
    for (size_t p = 1; p <= N; ++p) h[p] = a[p] / a[1];  // scale so h'(0) = 1
    std::vector<double> b(N + 1, 0.0);
    b[1] = 1.0;
    std::vector<double> comp(N + 1), tmp(N + 1);
    for (size_t k = 2; k <= N; ++k) {
        // comp = h(b) truncated at N
        std::fill(comp.begin(), comp.end(), 0.0);
        comp[0] = h[N];
        for (size_t i = N; i-- > 0;) {
            std::fill(tmp.begin(), tmp.end(), 0.0);
            for (size_t x = 0; x <= N; ++x) {
                if (comp[x] == 0) continue;
                for (size_t y = 1; x + y <= N; ++y) tmp[x + y] += comp[x] * b[y];
            }
            tmp[0] += h[i];
            comp = tmp;
        }
        b[k] -= comp[k];
    }
    std::vector<double> out;
    for (size_t p = 0; p <= N; ++p) out.push_back(std::fabs(b[p]));
    return out;
}

enum class ExponentMethod { Ratio, Inversion };

inline Estimate critical_exponent(const std::vector<double>& a, ExponentMethod method) {
    if (method == ExponentMethod::Ratio) return critical_exponent_ratio(a);
    std::vector<double> b = invert_series_numeric(a);
    b.erase(b.begin());  // b_0 = 0 slot
    return critical_exponent_ratio(b);
}

// Legendre pair: x(n) = d s^/d log n by central differences on a log grid,
// s(x) = s^ - x log n.
struct LegendrePoint {
    double n, s_hat, x, s;
};

template <typename SeqAtN>  // SeqAtN: double n -> std::vector<double>
std::vector<LegendrePoint> legendre_curve(const SeqAtN& seq, const std::vector<double>& n_grid,
                                          double h = 0.1) {
    std::vector<LegendrePoint> out;
    for (double n : n_grid) {
        if (n <= 0) throw std::invalid_argument("legendre_curve: n must be positive");
        double up = entropy_estimate(seq(n * std::exp(h))).value;
        double dn = entropy_estimate(seq(n * std::exp(-h))).value;
        LegendrePoint pt;
        pt.n = n;
        pt.s_hat = entropy_estimate(seq(n)).value;
        pt.x = (up - dn) / (2 * h);
        pt.s = pt.s_hat - pt.x * std::log(n);
        out.push_back(pt);
    }
    return out;
}

}  // namespace flype
