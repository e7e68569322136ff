#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "flype/npoly.hpp"

namespace flype {

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated power series in one expansion symbol, exact NRat coefficients.
// The truncation order is part of the value; mixing orders is an error.
class Series1 {
  public:
    Series1() : order_(-1) {}
    explicit Series1(int order) : order_(order), c_(size_t(order) + 1) {
        if (order < 0) throw SeriesError("Series1: negative order");
    }
    static Series1 constant(int order, const NRat& v) {
        Series1 s(order);
        s.c_[0] = v;
        return s;
    }
    static Series1 identity(int order) {  // the expansion symbol itself
        Series1 s(order);
        if (order >= 1) s.c_[1] = NRat(1);
        return s;
    }

    int order() const { return order_; }
    const NRat& operator[](int k) const { return c_.at(size_t(k)); }
    NRat& operator[](int k) { return c_.at(size_t(k)); }

    bool operator==(const Series1& o) const { return order_ == o.order_ && c_ == o.c_; }

    int valuation() const {
        for (int k = 0; k <= order_; ++k)
            if (!c_[size_t(k)].is_zero()) return k;
        return order_ + 1;
    }

    Series1 truncated(int new_order) const {
        if (new_order > order_) throw SeriesError("Series1::truncated: cannot extend");
        Series1 r(new_order);
        for (int k = 0; k <= new_order; ++k) r.c_[size_t(k)] = c_[size_t(k)];
        return r;
    }

    friend Series1 operator+(const Series1& a, const Series1& b) {
        a.check_same(b);
        Series1 r(a.order_);
        for (int k = 0; k <= a.order_; ++k) r.c_[size_t(k)] = a.c_[size_t(k)] + b.c_[size_t(k)];
        return r;
    }
    friend Series1 operator-(const Series1& a, const Series1& b) {
        a.check_same(b);
        Series1 r(a.order_);
        for (int k = 0; k <= a.order_; ++k) r.c_[size_t(k)] = a.c_[size_t(k)] - b.c_[size_t(k)];
        return r;
    }
    Series1 operator-() const {
        Series1 r(order_);
        for (int k = 0; k <= order_; ++k) r.c_[size_t(k)] = -c_[size_t(k)];
        return r;
    }
    friend Series1 operator*(const Series1& a, const Series1& b) {
        a.check_same(b);
        Series1 r(a.order_);
        for (int i = 0; i <= a.order_; ++i) {
            if (a.c_[size_t(i)].is_zero()) continue;
            for (int j = 0; i + j <= a.order_; ++j) {
                if (b.c_[size_t(j)].is_zero()) continue;
                r.c_[size_t(i + j)] += a.c_[size_t(i)] * b.c_[size_t(j)];
            }
        }
        return r;
    }
    friend Series1 operator*(const NRat& s, const Series1& a) {
        Series1 r(a.order_);
        for (int k = 0; k <= a.order_; ++k) r.c_[size_t(k)] = s * a.c_[size_t(k)];
        return r;
    }
    Series1& operator+=(const Series1& o) { return *this = *this + o; }
    Series1& operator-=(const Series1& o) { return *this = *this - o; }
    Series1& operator*=(const Series1& o) { return *this = *this * o; }

    // Multiplicative inverse; requires a unit constant term.
    Series1 inverse() const {
        if (c_[0].is_zero()) throw SeriesError("Series1::inverse: constant term is zero");
        Series1 r(order_);
        NRat inv0 = NRat(1) / c_[0];
        r.c_[0] = inv0;
        for (int k = 1; k <= order_; ++k) {
            NRat acc;
            for (int j = 1; j <= k; ++j) acc += c_[size_t(j)] * r.c_[size_t(k - j)];
            r.c_[size_t(k)] = -inv0 * acc;
        }
        return r;
    }
    friend Series1 operator/(const Series1& a, const Series1& b) { return a * b.inverse(); }

    Series1 derivative() const {  // same truncation order, top coefficient unknown -> drop
        Series1 r(order_);
        for (int k = 1; k <= order_; ++k) r.c_[size_t(k - 1)] = NRat(BigInt(k)) * c_[size_t(k)];
        r.c_[size_t(order_)] = NRat();
        return r;
    }

    // Composition a(inner); the inner series must have zero constant term.
    Series1 substitute(const Series1& inner) const {
        check_same(inner);
        if (!inner.c_[0].is_zero())
            throw SeriesError("Series1::substitute: inner constant term nonzero");
        Series1 r = Series1::constant(order_, c_[size_t(order_)]);
        for (int k = order_ - 1; k >= 0; --k) {
            r = r * inner;
            r.c_[0] += c_[size_t(k)];
        }
        return r;
    }

    // Compositional inverse h with (*this)(h(g)) = g; needs zero constant
    // term and an invertible linear coefficient.
    Series1 reversion() const {
        if (!c_[0].is_zero()) throw SeriesError("Series1::reversion: constant term nonzero");
        if (order_ < 1 || c_[1].is_zero())
            throw SeriesError("Series1::reversion: linear coefficient is zero");
        Series1 h(order_);
        NRat inv1 = NRat(1) / c_[1];
        if (order_ >= 1) h.c_[1] = inv1;
        for (int k = 2; k <= order_; ++k) {
            Series1 trial = substitute(h);
            h.c_[size_t(k)] = -inv1 * trial.c_[size_t(k)];
        }
        return h;
    }

    Series1 pow(int e) const {
        Series1 r = Series1::constant(order_, NRat(1));
        for (int i = 0; i < e; ++i) r *= *this;
        return r;
    }

  private:
    int order_;
    std::vector<NRat> c_;
    void check_same(const Series1& o) const {
        if (order_ != o.order_) throw SeriesError("Series1: mixed truncation orders");
    }
};

// Truncated series in two symbols, kept to total degree <= order.
class Series2 {
  public:
    Series2() : order_(-1) {}
    explicit Series2(int order) : order_(order) {
        if (order < 0) throw SeriesError("Series2: negative order");
        c_.resize(size_t(order) + 1);
        for (int i = 0; i <= order; ++i) c_[size_t(i)].resize(size_t(order - i) + 1);
    }

    int order() const { return order_; }
    const NRat& at(int i, int j) const { return c_.at(size_t(i)).at(size_t(j)); }
    NRat& at(int i, int j) { return c_.at(size_t(i)).at(size_t(j)); }

    bool operator==(const Series2& o) const { return order_ == o.order_ && c_ == o.c_; }

    friend Series2 operator+(const Series2& a, const Series2& b) {
        a.check_same(b);
        Series2 r(a.order_);
        for (int i = 0; i <= a.order_; ++i)
            for (int j = 0; i + j <= a.order_; ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
        return r;
    }
    friend Series2 operator-(const Series2& a, const Series2& b) {
        a.check_same(b);
        Series2 r(a.order_);
        for (int i = 0; i <= a.order_; ++i)
            for (int j = 0; i + j <= a.order_; ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
        return r;
    }
    friend Series2 operator*(const Series2& a, const Series2& b) {
        a.check_same(b);
        Series2 r(a.order_);
        for (int i = 0; i <= a.order_; ++i)
            for (int j = 0; i + j <= a.order_; ++j) {
                if (a.at(i, j).is_zero()) continue;
                for (int k = 0; i + j + k <= a.order_; ++k)
                    for (int l = 0; i + j + k + l <= a.order_; ++l) {
                        if (b.at(k, l).is_zero()) continue;
                        r.at(i + k, j + l) += a.at(i, j) * b.at(k, l);
                    }
            }
        return r;
    }
    friend Series2 operator*(const NRat& s, const Series2& a) {
        Series2 r(a.order_);
        for (int i = 0; i <= a.order_; ++i)
            for (int j = 0; i + j <= a.order_; ++j) r.at(i, j) = s * a.at(i, j);
        return r;
    }
    Series2& operator+=(const Series2& o) { return *this = *this + o; }
    Series2& operator-=(const Series2& o) { return *this = *this - o; }

    Series2 d_dg1() const {
        Series2 r(order_);
        for (int i = 1; i <= order_; ++i)
            for (int j = 0; i + j <= order_; ++j) r.at(i - 1, j) = NRat(BigInt(i)) * at(i, j);
        return r;
    }
    Series2 d_dg2() const {
        Series2 r(order_);
        for (int i = 0; i <= order_; ++i)
            for (int j = 1; i + j <= order_; ++j) r.at(i, j - 1) = NRat(BigInt(j)) * at(i, j);
        return r;
    }

    // Evaluate at one-symbol series arguments of valuation >= 1.
    Series1 substitute(const Series1& a, const Series1& b) const {
        if (a.order() != b.order()) throw SeriesError("Series2::substitute: mixed orders");
        int R = a.order();
        if (a.valuation() < 1 || b.valuation() < 1)
            throw SeriesError("Series2::substitute: arguments need valuation >= 1");
        if (R > order_) throw SeriesError("Series2::substitute: result order exceeds data");
        std::vector<Series1> apow(size_t(order_) + 1, Series1::constant(R, NRat(1)));
        std::vector<Series1> bpow(size_t(order_) + 1, Series1::constant(R, NRat(1)));
        for (int k = 1; k <= order_; ++k) {
            apow[size_t(k)] = apow[size_t(k - 1)] * a;
            bpow[size_t(k)] = bpow[size_t(k - 1)] * b;
        }
        Series1 r(R);
        for (int i = 0; i <= order_; ++i)
            for (int j = 0; i + j <= order_; ++j) {
                if (at(i, j).is_zero()) continue;
                r += at(i, j) * (apow[size_t(i)] * bpow[size_t(j)]);
            }
        return r;
    }

  private:
    int order_;
    std::vector<std::vector<NRat>> c_;
    void check_same(const Series2& o) const {
        if (order_ != o.order_) throw SeriesError("Series2: mixed truncation orders");
    }
};

struct FixedPointError : SeriesError {
    int first_failing_order;
    FixedPointError(const std::string& msg, int ord)
        : SeriesError(msg), first_failing_order(ord) {}
};

// Order-by-order fixed point of a coupled series system: iterate the sweep
// until every unknown reproduces itself, with an order+2 iteration cap.
inline std::vector<Series1> solve_fixed_point(
    const std::function<std::vector<Series1>(const std::vector<Series1>&)>& system,
    std::vector<Series1> seeds, int order) {
    for (int iter = 0; iter <= order + 2; ++iter) {
        std::vector<Series1> next = system(seeds);
        if (next.size() != seeds.size()) throw SeriesError("solve_fixed_point: arity changed");
        if (next == seeds) return seeds;
        seeds = std::move(next);
    }
    std::vector<Series1> next = system(seeds);
    int bad = order + 1;
    for (int k = 0; k <= order && bad > order; ++k)
        for (size_t u = 0; u < seeds.size(); ++u)
            if (!(seeds[u][k] == next[u][k])) {
                bad = k;
                break;
            }
    throw FixedPointError("solve_fixed_point: no convergence within order+2 sweeps", bad);
}

}  // namespace flype
