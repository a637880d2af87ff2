#include "htype/harmonic.hpp"

namespace htype {

std::vector<double> projection_coefficients(int d, int n) {
    if (d < 2) throw InvalidArgument("projection_coefficients: dimension must be >= 2");
    if (n < 0) throw InvalidArgument("projection_coefficients: degree must be >= 0");
    std::vector<double> c{1.0};
    for (int s = 0; 2 * (s + 1) <= n; ++s) {
        const int denom = 2 * (s + 1) * (d + 2 * n - 2 * s - 4);
        c.push_back(-c.back() / denom);
    }
    return c;
}

std::vector<double> projection_coefficients_recursion(int n) {
    std::vector<double> c{1.0};
    for (int s = 1; 2 * s <= n; ++s) c.push_back(-c.back() / (2.0 * s * (2.0 * (s + n) - 1.0)));
    return c;
}

}  // namespace htype
