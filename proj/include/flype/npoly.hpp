#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "flype/bigint.hpp"

namespace flype {

// Polynomial in the loop-fugacity symbol n with integer coefficients,
// densely stored, no trailing zeros.
class NPoly {
  public:
    NPoly() = default;
    NPoly(const BigInt& c) {
        if (c != 0) c_.push_back(c);
    }
    NPoly(long c) : NPoly(BigInt(c)) {}
    static NPoly variable() { return NPoly(std::vector<BigInt>{0, 1}); }
    explicit NPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    const std::vector<BigInt>& coeffs() const { return c_; }
    BigInt coeff(int k) const { return k >= 0 && k < int(c_.size()) ? c_[size_t(k)] : BigInt(0); }
    const BigInt& leading() const {
        if (c_.empty()) throw std::logic_error("NPoly::leading on zero");
        return c_.back();
    }

    friend NPoly operator+(const NPoly& a, const NPoly& b) {
        std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < a.c_.size()) r[i] += a.c_[i];
            if (i < b.c_.size()) r[i] += b.c_[i];
        }
        return NPoly(std::move(r));
    }
    friend NPoly operator-(const NPoly& a, const NPoly& b) {
        std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < a.c_.size()) r[i] += a.c_[i];
            if (i < b.c_.size()) r[i] -= b.c_[i];
        }
        return NPoly(std::move(r));
    }
    NPoly operator-() const {
        std::vector<BigInt> r(c_);
        for (auto& x : r) x = -x;
        return NPoly(std::move(r));
    }
    friend NPoly operator*(const NPoly& a, const NPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return NPoly(std::move(r));
    }

    NPoly& operator+=(const NPoly& o) { return *this = *this + o; }
    NPoly& operator-=(const NPoly& o) { return *this = *this - o; }
    NPoly& operator*=(const NPoly& o) { return *this = *this * o; }

    bool operator==(const NPoly& o) const { return c_ == o.c_; }

    BigInt content() const {
        BigInt g = 0;
        for (auto& x : c_) g = boost::multiprecision::gcd(g, x);
        return g;  // nonnegative
    }

    NPoly divided_by_int(const BigInt& d) const {
        std::vector<BigInt> r(c_);
        for (auto& x : r) x = exact_div(x, d);
        return NPoly(std::move(r));
    }

    // Exact polynomial division; throws if the remainder is nonzero.
    NPoly divided_by(const NPoly& d) const {
        if (d.is_zero()) throw std::domain_error("NPoly division by zero");
        NPoly q, r = *this;
        std::vector<BigInt> qc(c_.size(), BigInt(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            BigInt f = r.leading() / d.leading();
            if (f * d.leading() != r.leading())
                throw std::logic_error("NPoly::divided_by: inexact leading term");
            qc[size_t(k)] = f;
            NPoly sub;
            std::vector<BigInt> s(size_t(k) + d.c_.size());
            for (size_t i = 0; i < d.c_.size(); ++i) s[size_t(k) + i] = f * d.c_[i];
            r = r - NPoly(std::move(s));
        }
        if (!r.is_zero()) throw std::logic_error("NPoly::divided_by: remainder nonzero");
        return NPoly(std::move(qc));
    }

    double eval(double n) const {
        double r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = r * n + c_[i].convert_to<double>();
        return r;
    }
    BigRat eval(const BigRat& n) const {
        BigRat r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = r * n + BigRat(c_[i]);
        return r;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!out.empty()) out += c_[i] > 0 ? " + " : " - ";
            BigInt a = out.empty() ? c_[i] : BigInt(boost::multiprecision::abs(c_[i]));
            if (i == 0)
                out += a.str();
            else {
                if (a != 1 && a != -1)
                    out += a.str() + "*";
                else if (a == -1)
                    out += "-";
                out += i == 1 ? "n" : "n^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }

  private:
    std::vector<BigInt> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

namespace detail {

// Scaled remainder of a by b: equals lc(b)^j * (a mod b) for some j >= 0,
// which is all the primitive PRS below needs.
inline NPoly pseudo_rem(NPoly a, const NPoly& b) {
    const int db = b.degree();
    const BigInt lb = b.leading();
    while (!a.is_zero() && a.degree() >= db) {
        int k = a.degree() - db;
        BigInt la = a.leading();
        std::vector<BigInt> s(size_t(k + db) + 1);
        for (int i = 0; i <= db; ++i) s[size_t(k + i)] = la * b.coeff(i);
        a = a * NPoly(lb) - NPoly(std::move(s));
    }
    return a;
}

}  // namespace detail

inline NPoly primitive_part(const NPoly& p) {
    if (p.is_zero()) return p;
    BigInt c = p.content();
    NPoly pp = p.divided_by_int(c);
    return pp;
}

// Greatest common divisor over Z[n], primitive with positive leading
// coefficient.
inline NPoly poly_gcd(NPoly a, NPoly b) {
    if (a.is_zero() && b.is_zero()) return {};
    if (a.is_zero() || b.is_zero()) {
        NPoly r = a.is_zero() ? std::move(b) : std::move(a);
        return r.leading() > 0 ? r : -r;
    }
    BigInt ca = a.content(), cb = b.content();
    BigInt cg = boost::multiprecision::gcd(ca, cb);
    a = a.divided_by_int(ca);
    b = b.divided_by_int(cb);
    while (!b.is_zero()) {
        if (a.degree() < b.degree()) std::swap(a, b);
        NPoly r = detail::pseudo_rem(a, b);
        a = std::move(b);
        b = r.is_zero() ? NPoly() : primitive_part(r);
    }
    if (a.leading() < 0) a = -a;
    return NPoly(BigInt(cg)) * a;
}

// Rational function in n: reduced fraction of integer polynomials with a
// positive-leading-coefficient denominator.
class NRat {
  public:
    NRat() : num_(), den_(BigInt(1)) {}
    NRat(const BigInt& c) : num_(c), den_(BigInt(1)) {}
    NRat(long c) : num_(BigInt(c)), den_(BigInt(1)) {}
    NRat(const NPoly& p) : num_(p), den_(BigInt(1)) {}
    NRat(NPoly num, NPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
    static NRat variable() { return NRat(NPoly::variable()); }
    static NRat fraction(const BigInt& a, const BigInt& b) { return NRat(NPoly(a), NPoly(b)); }

    const NPoly& num() const { return num_; }
    const NPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0 && den_.coeff(0) == 1; }

    // The polynomial value; throws when the denominator has not cancelled.
    NPoly as_polynomial() const {
        if (den_.degree() != 0) throw std::logic_error("NRat: denominator is not constant");
        return num_.divided_by_int(den_.coeff(0));
    }

    friend NRat operator+(const NRat& a, const NRat& b) {
        return NRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend NRat operator-(const NRat& a, const NRat& b) {
        return NRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend NRat operator*(const NRat& a, const NRat& b) {
        if (a.is_zero() || b.is_zero()) return NRat();
        return NRat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend NRat operator/(const NRat& a, const NRat& b) {
        if (b.is_zero()) throw std::domain_error("NRat division by zero");
        return NRat(a.num_ * b.den_, a.den_ * b.num_);
    }
    NRat operator-() const {
        NRat r = *this;
        r.num_ = -r.num_;
        return r;
    }
    NRat& operator+=(const NRat& o) { return *this = *this + o; }
    NRat& operator-=(const NRat& o) { return *this = *this - o; }
    NRat& operator*=(const NRat& o) { return *this = *this * o; }
    NRat& operator/=(const NRat& o) { return *this = *this / o; }

    bool operator==(const NRat& o) const { return num_ == o.num_ && den_ == o.den_; }

    double eval(double n) const { return num_.eval(n) / den_.eval(n); }
    BigRat eval(const BigRat& n) const {
        BigRat d = den_.eval(n);
        if (d == 0) throw std::domain_error("NRat::eval: pole");
        return num_.eval(n) / d;
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

  private:
    NPoly num_, den_;
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("NRat: zero denominator");
        if (num_.is_zero()) {
            den_ = NPoly(BigInt(1));
            return;
        }
        NPoly g = poly_gcd(num_, den_);
        if (g.degree() > 0 || g.coeff(0) != 1) {
            num_ = num_.divided_by(g);
            den_ = den_.divided_by(g);
        }
        BigInt cn = num_.content(), cd = den_.content();
        BigInt c = boost::multiprecision::gcd(cn, cd);
        if (c > 1) {
            num_ = num_.divided_by_int(c);
            den_ = den_.divided_by_int(c);
        }
        if (den_.leading() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }
};

}  // namespace flype
