#pragma once

#include "htype/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace htype {

using Exponent = std::vector<int>;

/// Sparse polynomial in d variables; map from exponent vector to coefficient.
template <class T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(int dim) : dim_(dim) {
        if (dim < 1) throw InvalidArgument("Polynomial: dimension must be >= 1");
    }

    static Polynomial constant(int dim, T c) {
        Polynomial p(dim);
        p.add_term(Exponent(dim, 0), c);
        return p;
    }
    static Polynomial variable(int dim, int i) {
        Polynomial p(dim);
        Exponent e(dim, 0);
        e.at(i) = 1;
        p.add_term(e, T(1));
        return p;
    }
    /// sum_i w_i x_i
    template <class V>
    static Polynomial linear(const V& w) {
        Polynomial p(static_cast<int>(w.size()));
        for (int i = 0; i < p.dim_; ++i) {
            Exponent e(p.dim_, 0);
            e[i] = 1;
            p.add_term(e, T(w[i]));
        }
        return p;
    }
    /// |x|^2
    static Polynomial norm2(int dim) {
        Polynomial p(dim);
        for (int i = 0; i < dim; ++i) {
            Exponent e(dim, 0);
            e[i] = 2;
            p.add_term(e, T(1));
        }
        return p;
    }

    int dim() const { return dim_; }
    const std::map<Exponent, T>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent& e, T c) {
        if (static_cast<int>(e.size()) != dim_) throw DimensionMismatch("Polynomial: exponent length");
        if (c == T(0)) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == T(0)) terms_.erase(it);
        }
    }

    /// -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total(e));
        return d;
    }
    bool is_homogeneous() const {
        int d = -2;
        for (const auto& [e, c] : terms_) {
            if (d == -2) d = total(e);
            else if (total(e) != d) return false;
        }
        return true;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& [e, c] : terms_) m = std::max(m, static_cast<double>(std::abs(c)));
        return m;
    }

    /// Removes coefficients with |c| <= tol.
    Polynomial pruned(double tol) const {
        Polynomial out(dim_);
        for (const auto& [e, c] : terms_)
            if (std::abs(c) > tol) out.terms_.emplace(e, c);
        return out;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(T s) {
        if (s == T(0)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, T s) { return a *= s; }
    friend Polynomial operator*(T s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        Polynomial out(a.dim_);
        Exponent e(a.dim_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.dim_; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    Polynomial pow(int n) const {
        Polynomial out = constant(dim_, T(1));
        for (int i = 0; i < n; ++i) out = out * *this;
        return out;
    }

    Polynomial derivative(int i) const {
        Polynomial out(dim_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponent f = e;
            f[i] -= 1;
            out.add_term(f, c * T(e[i]));
        }
        return out;
    }

    Polynomial laplacian() const {
        Polynomial out(dim_);
        for (const auto& [e, c] : terms_)
            for (int i = 0; i < dim_; ++i) {
                if (e[i] < 2) continue;
                Exponent f = e;
                f[i] -= 2;
                out.add_term(f, c * T(e[i] * (e[i] - 1)));
            }
        return out;
    }

    template <class S>
    auto evaluate(const S& x) const {
        using R = decltype(T() * x[0]);
        R sum = R(0);
        for (const auto& [e, c] : terms_) {
            R m = R(c);
            for (int i = 0; i < dim_; ++i)
                for (int p = 0; p < e[i]; ++p) m = m * x[i];
            sum = sum + m;
        }
        return sum;
    }

    /// Random homogeneous polynomial with standard normal coefficients on all monomials.
    static Polynomial random_homogeneous(int dim, int degree, std::mt19937_64& rng) {
        Polynomial out(dim);
        std::normal_distribution<double> normal;
        Exponent e(dim, 0);
        enumerate(dim, degree, 0, e, [&](const Exponent& m) { out.add_term(m, T(normal(rng))); });
        return out;
    }

    template <class F>
    static void for_each_monomial(int dim, int degree, F&& f) {
        Exponent e(dim, 0);
        enumerate(dim, degree, 0, e, f);
    }

private:
    static int total(const Exponent& e) {
        int s = 0;
        for (int v : e) s += v;
        return s;
    }
    template <class F>
    static void enumerate(int dim, int remaining, int i, Exponent& e, F&& f) {
        if (i == dim - 1) {
            e[i] = remaining;
            f(e);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            e[i] = v;
            enumerate(dim, remaining - v, i + 1, e, f);
        }
    }
    void check(const Polynomial& o) const {
        if (o.dim_ != dim_) throw DimensionMismatch("Polynomial: dimension mismatch");
    }

    int dim_ = 1;
    std::map<Exponent, T> terms_;
};

using RealPolynomial = Polynomial<double>;
using ComplexPolynomial = Polynomial<std::complex<double>>;

}  // namespace htype
