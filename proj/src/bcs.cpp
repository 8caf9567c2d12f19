#include "bmz/bcs.hpp"

#include <cmath>
#include <sstream>

namespace bmz {

AntisymmetricMatrix build_bcs_matrix(const BcsSpec& spec, const ComplexMatrix* u) {
    const int half = static_cast<int>(spec.pairs.size());
    const int n = 2 * half;
    for (const auto& p : spec.pairs) {
        if (!std::isfinite(p.c) || (!spec.relaxed_signs && p.c < 0.0))
            throw ParseError("build_bcs_matrix: invalid amplitude c_m");
        if (std::abs(std::abs(p.s) - 1.0) > 1e-12)
            throw ParseError("build_bcs_matrix: phase s_m not unit modulus");
    }
    // Canonical pattern of the classic theorem: entry (p~, p) = s*_p c_p with
    // partners (p, p + N/2).
    ComplexMatrix k = ComplexMatrix::Zero(n, n);
    for (int p = 0; p < half; ++p) {
        const Complex val = std::conj(spec.pairs[p].s) * spec.pairs[p].c;
        k(p + half, p) = val;
        k(p, p + half) = -val;
    }
    if (u == nullptr) return AntisymmetricMatrix(k);

    if (u->rows() != n || u->cols() != n)
        throw DimensionError("build_bcs_matrix: rotation dimension mismatch");
    const double unit_dev = linalg::max_abs(
        u->adjoint() * (*u) - ComplexMatrix::Identity(n, n));
    if (unit_dev > 1e-10) {
        std::ostringstream os;
        os << "build_bcs_matrix: rotation not unitary (deviation " << unit_dev << ")";
        throw ParseError(os.str());
    }
    return AntisymmetricMatrix(u->conjugate() * k * u->adjoint());
}

std::pair<double, double> uv_amplitudes(double c_m) {
    if (!std::isfinite(c_m)) throw ParseError("uv_amplitudes: non-finite amplitude");
    const double norm = std::sqrt(1.0 + c_m * c_m);
    return {1.0 / norm, c_m / norm};
}

TimeReversalStructure time_reversal_matrix(int half_dim) {
    if (half_dim < 1) throw DimensionError("time_reversal_matrix: half_dim < 1");
    const int n = 2 * half_dim;
    ComplexMatrix u_t = ComplexMatrix::Zero(n, n);
    u_t.block(0, half_dim, half_dim, half_dim) =
        ComplexMatrix::Identity(half_dim, half_dim);
    u_t.block(half_dim, 0, half_dim, half_dim) =
        -ComplexMatrix::Identity(half_dim, half_dim);
    return {u_t, half_dim};
}

TimeEvenCheck is_time_even(const AntisymmetricMatrix& c,
                           const TimeReversalStructure& t, double tol) {
    if (c.dim() != t.u_t.rows())
        throw DimensionError("is_time_even: dimension mismatch");
    const ComplexMatrix lhs = c.adjoint();
    const ComplexMatrix rhs = t.u_t * c.mat().transpose() * t.u_t.transpose();
    TimeEvenCheck out;
    out.deviation = linalg::max_abs(lhs - rhs);
    out.time_even = out.deviation <= tol * (1.0 + linalg::max_abs(c.mat()));
    return out;
}

CTildeResult c_tilde(const AntisymmetricMatrix& c, const TimeReversalStructure& t,
                     double tol) {
    if (c.dim() != t.u_t.rows())
        throw DimensionError("c_tilde: dimension mismatch");
    CTildeResult out;
    out.c_tilde = -t.u_t * c.mat();
    out.hermiticity_deviation =
        linalg::max_abs(out.c_tilde - out.c_tilde.adjoint());
    const ComplexMatrix herm = 0.5 * (out.c_tilde + out.c_tilde.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
    const double thr = tol * (1.0 + linalg::max_abs(herm));
    out.positive_definite =
        solver.eigenvalues().size() > 0 && solver.eigenvalues().minCoeff() > thr;
    return out;
}

AntisymmetricMatrix time_even_from_block(const ComplexMatrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("time_even_from_block: block not square");
    const int half = static_cast<int>(a.rows());
    ComplexMatrix c = ComplexMatrix::Zero(2 * half, 2 * half);
    c.block(0, half, half, half) = a;
    c.block(half, 0, half, half) = -a.transpose();
    return AntisymmetricMatrix(c);
}

std::pair<AntisymmetricMatrix, AntisymmetricMatrix> example_pair(Complex a) {
    ComplexMatrix blk_a(2, 2), blk_ap(2, 2);
    blk_a << 1.0, a, std::conj(a), 0.0;
    blk_ap << 0.0, 1.0, 1.0, 0.0;
    return {time_even_from_block(blk_a), time_even_from_block(blk_ap)};
}

}  // namespace bmz
