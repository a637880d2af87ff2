#pragma once

#include "htype/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace htype {

/// Second-order forward jet of a complex function of n real variables:
/// value, gradient and Hessian.  Used to apply differential operators exactly.
class Jet {
public:
    using Scalar = std::complex<double>;

    Jet() = default;
    explicit Jet(int n, Scalar v = 0.0)
        : v_(v), g_(Eigen::VectorXcd::Zero(n)), h_(Eigen::MatrixXcd::Zero(n, n)) {}

    static Jet variable(int n, int i, double value) {
        Jet j(n, value);
        j.g_(i) = 1.0;
        return j;
    }
    static std::vector<Jet> variables(const Eigen::VectorXd& x) {
        std::vector<Jet> out;
        out.reserve(x.size());
        for (int i = 0; i < x.size(); ++i) out.push_back(variable(static_cast<int>(x.size()), i, x(i)));
        return out;
    }

    static Jet from_parts(Scalar v, Eigen::VectorXcd g, Eigen::MatrixXcd h) {
        if (h.rows() != g.size() || h.cols() != g.size()) throw DimensionMismatch("Jet: Hessian/gradient size");
        Jet j;
        j.v_ = v;
        j.g_ = std::move(g);
        j.h_ = std::move(h);
        return j;
    }
    /// Same jet in n >= dim() variables; the extra variables do not enter.
    Jet embedded(int n) const {
        if (n < dim()) throw DimensionMismatch("Jet: cannot embed into fewer variables");
        Jet j(n, v_);
        j.g_.head(dim()) = g_;
        j.h_.topLeftCorner(dim(), dim()) = h_;
        return j;
    }

    int dim() const { return static_cast<int>(g_.size()); }
    Scalar value() const { return v_; }
    Scalar d(int i) const { return g_(i); }
    Scalar d2(int i, int j) const { return h_(i, j); }
    const Eigen::VectorXcd& grad() const { return g_; }
    const Eigen::MatrixXcd& hess() const { return h_; }

    /// f(u) with f(v), f'(v), f''(v) supplied.
    Jet chain(Scalar f, Scalar f1, Scalar f2) const {
        Jet r;
        r.v_ = f;
        r.g_ = f1 * g_;
        r.h_ = f1 * h_ + f2 * (g_ * g_.transpose());
        return r;
    }

    Jet& operator+=(const Jet& o) {
        v_ += o.v_;
        g_ += o.g_;
        h_ += o.h_;
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        v_ -= o.v_;
        g_ -= o.g_;
        h_ -= o.h_;
        return *this;
    }
    Jet& operator*=(const Jet& o) {
        h_ = o.v_ * h_ + v_ * o.h_ + g_ * o.g_.transpose() + o.g_ * g_.transpose();
        g_ = o.v_ * g_ + v_ * o.g_;
        v_ *= o.v_;
        return *this;
    }
    Jet& operator*=(Scalar s) {
        v_ *= s;
        g_ *= s;
        h_ *= s;
        return *this;
    }
    Jet& operator+=(Scalar s) {
        v_ += s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator*(Jet a, Scalar s) { return a *= s; }
    friend Jet operator*(Scalar s, Jet a) { return a *= s; }
    friend Jet operator*(Jet a, double s) { return a *= Scalar(s); }
    friend Jet operator*(double s, Jet a) { return a *= Scalar(s); }
    friend Jet operator+(Jet a, Scalar s) { return a += s; }
    friend Jet operator+(Scalar s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, Scalar s) { return a += -s; }
    friend Jet operator-(const Jet& a) { return a * Scalar(-1.0); }
    friend Jet operator/(const Jet& a, const Jet& b) {
        const Scalar v = b.v_;
        return a * b.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
    }

    friend Jet exp(const Jet& a) {
        const Scalar e = std::exp(a.v_);
        return a.chain(e, e, e);
    }
    friend Jet sin(const Jet& a) { return a.chain(std::sin(a.v_), std::cos(a.v_), -std::sin(a.v_)); }
    friend Jet cos(const Jet& a) { return a.chain(std::cos(a.v_), -std::sin(a.v_), -std::cos(a.v_)); }
    friend Jet sqrt(const Jet& a) {
        const Scalar s = std::sqrt(a.v_);
        return a.chain(s, 0.5 / s, -0.25 / (s * a.v_));
    }
    friend Jet pow(const Jet& a, int n) {
        if (n < 0) throw InvalidArgument("Jet pow: negative exponent");
        if (n == 0) return Jet(a.dim(), 1.0);
        const Scalar v = a.v_;
        const Scalar f1 = double(n) * std::pow(v, n - 1);
        const Scalar f2 = n <= 1 ? Scalar(0) : double(n) * (n - 1) * std::pow(v, n - 2);
        return a.chain(std::pow(v, n), f1, f2);
    }
    /// Complex conjugate; valid because the variables are real.
    friend Jet conj(const Jet& a) {
        Jet r;
        r.v_ = std::conj(a.v_);
        r.g_ = a.g_.conjugate();
        r.h_ = a.h_.conjugate();
        return r;
    }

private:
    Scalar v_ = 0.0;
    Eigen::VectorXcd g_;
    Eigen::MatrixXcd h_;
};

/// A complex field on R^n written once against jets.
using JetField = std::function<Jet(const std::vector<Jet>&)>;

inline Jet evaluate_jet(const JetField& f, const Eigen::VectorXd& x) { return f(Jet::variables(x)); }

/// sum_ij A_ij d_i d_j f + sum_i b_i d_i f at a jet.
inline Jet::Scalar second_order_apply(const Jet& f, const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    if (A.rows() != f.dim() || b.size() != f.dim()) throw DimensionMismatch("second_order_apply: size mismatch");
    Jet::Scalar s = 0.0;
    for (int i = 0; i < f.dim(); ++i) {
        s += b(i) * f.d(i);
        for (int j = 0; j < f.dim(); ++j) s += A(i, j) * f.d2(i, j);
    }
    return s;
}

}  // namespace htype
