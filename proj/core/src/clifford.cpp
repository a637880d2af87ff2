#include "htype/clifford.hpp"

#include "htype/errors.hpp"

#include <array>
#include <string>

namespace htype {

namespace {

// e_i e_j = e_k on each cyclic triple.
constexpr std::array<std::array<int, 3>, 7> kOctonionTriples{{
    {1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5}}};

struct Unit {
    int sign;
    int index;
};

Unit octonion_product(int a, int b) {
    if (a == 0) return {1, b};
    if (b == 0) return {1, a};
    if (a == b) return {-1, 0};
    for (const auto& t : kOctonionTriples) {
        for (int r = 0; r < 3; ++r) {
            int i = t[r], j = t[(r + 1) % 3], k = t[(r + 2) % 3];
            if (a == i && b == j) return {1, k};
            if (a == j && b == i) return {-1, k};
        }
    }
    return {0, 0};  // unreachable for valid indices
}

// Left multiplication by the imaginary unit e_a on R^8 = span(e_0..e_7).
IntMatrix octonion_left(int a) {
    IntMatrix L = IntMatrix::Zero(8, 8);
    for (int b = 0; b < 8; ++b) {
        Unit u = octonion_product(a, b);
        L(u.index, b) = u.sign;
    }
    return L;
}

// Left multiplication by i, j, k on the quaternion basis (1, i, j, k).
IntMatrix quaternion_left(int a) {
    static const int table[3][4][2] = {
        // i*1 = i, i*i = -1, i*j = k, i*k = -j
        {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
        // j*1 = j, j*i = -k, j*j = -1, j*k = i
        {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
        // k*1 = k, k*i = j, k*j = -i, k*k = -1
        {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},
    };
    IntMatrix L = IntMatrix::Zero(4, 4);
    for (int b = 0; b < 4; ++b) L(table[a][b][1], b) = table[a][b][0];
    return L;
}

std::vector<IntMatrix> base_generators(int l) {
    std::vector<IntMatrix> g;
    if (l == 0) return g;
    if (l == 1) {
        IntMatrix j(2, 2);
        j << 0, -1, 1, 0;
        g.push_back(j);
        return g;
    }
    if (l <= 3) {
        for (int a = 0; a < l; ++a) g.push_back(quaternion_left(a));
        return g;
    }
    if (l <= 7) {
        for (int a = 1; a <= l; ++a) g.push_back(octonion_left(a));
        return g;
    }
    // l == 8: L_a (x) diag(1,-1) for the seven octonion units, plus I_8 (x) eps.
    IntMatrix sigma(2, 2), eps(2, 2);
    sigma << 1, 0, 0, -1;
    eps << 0, -1, 1, 0;
    for (int a = 1; a <= 7; ++a) g.push_back(kron(octonion_left(a), sigma));
    g.push_back(kron(IntMatrix::Identity(8, 8), eps));
    return g;
}

}  // namespace

IntMatrix kron(const IntMatrix& A, const IntMatrix& B) {
    IntMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

long long irreducible_dimension(int l) {
    if (l < 0) throw InvalidArgument("irreducible_dimension: l must be non-negative");
    static constexpr int offsets[8] = {0, 1, 2, 2, 3, 3, 3, 3};
    const int p = l / 8;
    const int shift = 4 * p + offsets[l % 8];
    if (shift >= 62) throw ResourceError("irreducible_dimension: 2^" + std::to_string(shift) + " overflows");
    return 1LL << shift;
}

CliffordModule build_generators(int l, int size_cap) {
    if (l < 1) throw InvalidArgument("build_generators: l must be >= 1");
    const long long n = irreducible_dimension(l);
    if (n > size_cap)
        throw ResourceError("build_generators: n_l = " + std::to_string(n) + " exceeds size cap " +
                            std::to_string(size_cap));

    CliffordModule m;
    m.l = l;
    m.n = static_cast<int>(n);

    const int r = l % 8;
    const int p = l / 8;
    std::vector<IntMatrix> gens = base_generators(r);
    int dim = r == 0 ? 1 : static_cast<int>(irreducible_dimension(r));

    if (p > 0) {
        const std::vector<IntMatrix> e8 = base_generators(8);
        IntMatrix omega = IntMatrix::Identity(16, 16);
        for (const auto& e : e8) omega = omega * e;
        // omega^2 = +I and omega anticommutes with every e_beta, so
        // {j (x) omega} u {I (x) e_beta} generates Cl_{0, l+8}.
        for (int step = 0; step < p; ++step) {
            std::vector<IntMatrix> next;
            next.reserve(gens.size() + 8);
            for (const auto& j : gens) next.push_back(kron(j, omega));
            const IntMatrix I = IntMatrix::Identity(dim, dim);
            for (const auto& e : e8) next.push_back(kron(I, e));
            gens = std::move(next);
            dim *= 16;
        }
    }
    m.generators = std::move(gens);
    return m;
}

CliffordDefects check_clifford(const CliffordModule& module) {
    CliffordDefects d;
    const int n = module.n;
    const IntMatrix I = IntMatrix::Identity(n, n);
    for (std::size_t a = 0; a < module.generators.size(); ++a) {
        const IntMatrix& ja = module.generators[a];
        d.skewness = std::max<long long>(d.skewness, (ja + ja.transpose()).cwiseAbs().maxCoeff());
        d.orthogonality = std::max<long long>(d.orthogonality, (ja.transpose() * ja - I).cwiseAbs().maxCoeff());
        for (std::size_t b = a; b < module.generators.size(); ++b) {
            const IntMatrix& jb = module.generators[b];
            IntMatrix ac = ja * jb + jb * ja;
            if (a == b) ac += 2 * I;
            d.anticommutation = std::max<long long>(d.anticommutation, ac.cwiseAbs().maxCoeff());
        }
    }
    return d;
}

EndomorphismSpace::EndomorphismSpace(int l_, int a_, int b_, int size_cap) : l(l_), a(a_), b(b_) {
    if (a < 0 || b < 0 || a + b == 0) throw InvalidArgument("EndomorphismSpace: need a, b >= 0 and a + b >= 1");
    module_ = build_generators(l, size_cap);
    if (static_cast<long long>(a + b) * module_.n > size_cap)
        throw ResourceError("EndomorphismSpace: k exceeds size cap");
}

IntMatrix EndomorphismSpace::basis_matrix(int alpha) const {
    if (alpha < 0 || alpha >= l) throw DimensionMismatch("EndomorphismSpace::basis_matrix: index out of range");
    const int n = module_.n;
    IntMatrix J = IntMatrix::Zero(k(), k());
    for (int blk = 0; blk < a + b; ++blk) {
        const int sign = blk < a ? 1 : -1;
        J.block(blk * n, blk * n, n, n) = sign * module_.generators[alpha];
    }
    return J;
}

std::vector<Eigen::MatrixXd> EndomorphismSpace::basis() const {
    std::vector<Eigen::MatrixXd> out;
    out.reserve(l);
    for (int alpha = 0; alpha < l; ++alpha) out.push_back(basis_matrix(alpha).cast<double>());
    return out;
}

Eigen::MatrixXd EndomorphismSpace::J(const Eigen::VectorXd& Z) const {
    if (Z.size() != l) throw DimensionMismatch("EndomorphismSpace::J: Z has wrong length");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k(), k());
    for (int alpha = 0; alpha < l; ++alpha)
        if (Z(alpha) != 0.0) out += Z(alpha) * basis_matrix(alpha).cast<double>();
    return out;
}

}  // namespace htype
