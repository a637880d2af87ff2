#pragma once

#include "htype/polynomial.hpp"

#include <utility>
#include <vector>

namespace htype {

/// c_0..c_{floor(n/2)} with Pi(P) = sum_s c_s |K|^{2s} Delta^s P harmonic for
/// every homogeneous P of degree n in dimension d.  Solved from the bidiagonal
/// harmonicity system c_s + 2(s+1)(d + 2n - 2s - 4) c_{s+1} = 0.
std::vector<double> projection_coefficients(int d, int n);

/// Coefficients from the recursion 2s(2(s+n)-1) C_s + C_{s-1} = 0, C_0 = 1.
/// Diagnostic only: it carries no ambient dimension.
std::vector<double> projection_coefficients_recursion(int n);

template <class T>
Polynomial<T> harmonic_projection(const Polynomial<T>& P) {
    const int d = P.dim();
    if (d < 2) throw InvalidArgument("harmonic_projection: dimension must be >= 2");
    if (!P.is_homogeneous()) throw InvalidArgument("harmonic_projection: polynomial must be homogeneous");
    const int n = P.degree();
    if (n < 0) return P;
    const std::vector<double> c = projection_coefficients(d, n);
    const Polynomial<T> r2 = Polynomial<T>::norm2(d);
    Polynomial<T> lap = P;
    Polynomial<T> r2s = Polynomial<T>::constant(d, T(1));
    Polynomial<T> out = P;
    for (std::size_t s = 1; s < c.size(); ++s) {
        lap = lap.laplacian();
        r2s = r2s * r2;
        if (lap.is_zero()) break;
        out += (r2s * lap) * T(c[s]);
    }
    return out;
}

/// P = sum_i |K|^{2i} HP_{n-2i}; returns (i, HP_{n-2i}) for every i, including zero terms.
template <class T>
std::vector<std::pair<int, Polynomial<T>>> harmonic_decomposition(const Polynomial<T>& P) {
    const int d = P.dim();
    if (d < 2) throw InvalidArgument("harmonic_decomposition: dimension must be >= 2");
    if (!P.is_homogeneous()) throw InvalidArgument("harmonic_decomposition: polynomial must be homogeneous");
    std::vector<std::pair<int, Polynomial<T>>> out;
    Polynomial<T> rest = P;
    int n = P.degree();
    if (n < 0) return out;
    const Polynomial<T> r2 = Polynomial<T>::norm2(d);
    for (int i = 0; n >= 0; ++i, n -= 2) {
        // rest = Pi(rest) + |K|^2 * rest', rest' = -sum_{s>=1} c_s |K|^{2s-2} Delta^s rest
        const std::vector<double> c = projection_coefficients(d, n);
        Polynomial<T> lap = rest;
        Polynomial<T> harm = rest;
        Polynomial<T> next(d);
        Polynomial<T> r2s = Polynomial<T>::constant(d, T(1));
        for (std::size_t s = 1; s < c.size(); ++s) {
            lap = lap.laplacian();
            if (lap.is_zero()) break;
            next -= (r2s * lap) * T(c[s]);
            r2s = r2s * r2;
            harm += (r2s * lap) * T(c[s]);
        }
        out.emplace_back(i, harm);
        rest = next;
        if (rest.is_zero()) {
            // Remaining strata are zero; keep the list explicit up to n/2.
            for (int j = i + 1, m = n - 2; m >= 0; ++j, m -= 2) out.emplace_back(j, Polynomial<T>(d));
            break;
        }
    }
    return out;
}

template <class T>
Polynomial<T> harmonic_reconstruct(const std::vector<std::pair<int, Polynomial<T>>>& parts, int dim) {
    Polynomial<T> out(dim);
    const Polynomial<T> r2 = Polynomial<T>::norm2(dim);
    for (const auto& [i, hp] : parts) out += r2.pow(i) * hp;
    return out;
}

}  // namespace htype
