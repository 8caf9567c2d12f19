#include "bmz/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bmz {
namespace linalg {

double max_abs(const ComplexMatrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
                return false;
    return true;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        std::ostringstream os;
        os << "multiply: inner dimensions differ (" << a.cols() << " vs "
           << b.rows() << ")";
        throw DimensionError(os.str());
    }
    return a * b;
}

ComplexMatrix inverse(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols())
        throw DimensionError("inverse: matrix not square");
    const double scale = max_abs(a);
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    double min_pivot = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        min_pivot = std::min(min_pivot, std::abs(lu.matrixLU()(i, i)));
    if (a.rows() > 0 && min_pivot <= tol * scale) {
        std::ostringstream os;
        os << "inverse: singular to tolerance (pivot " << min_pivot
           << ", threshold " << tol * scale << ")";
        throw SingularMatrixError(os.str(), min_pivot);
    }
    return lu.inverse();
}

SvdRank svd_rank(const ComplexMatrix& a, double rel_tol) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    SvdRank out;
    const auto& sv = svd.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double largest = sv.size() > 0 ? sv(0) : 0.0;
    for (double s : out.singular_values)
        if (s > rel_tol * largest) ++out.rank;
    if (largest == 0.0) out.rank = 0;
    return out;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("eigenvalues: matrix not square");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, false);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eigenvalues: QR iteration did not converge");
    std::vector<Complex> eigs(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + a.rows());
    std::sort(eigs.begin(), eigs.end(), [](const Complex& x, const Complex& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return eigs;
}

double condition_estimate(const ComplexMatrix& a) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 1.0;
    const double smallest = sv(sv.size() - 1);
    if (smallest == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smallest;
}

}  // namespace linalg

AntisymmetricMatrix::AntisymmetricMatrix(ComplexMatrix m, double tol_antisym)
    : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols())
        throw DimensionError("AntisymmetricMatrix: matrix not square");
    if (!linalg::all_finite(mat_))
        throw ParseError("AntisymmetricMatrix: non-finite entry");
    const double scale = linalg::max_abs(mat_);
    const double bound = tol_antisym * (1.0 + scale);
    const double dev = linalg::max_abs(mat_ + mat_.transpose());
    if (dev > bound) {
        std::ostringstream os;
        os << "AntisymmetricMatrix: |C + C^T| = " << dev << " exceeds " << bound;
        throw ParseError(os.str());
    }
    // Diagonal entries are pure numerical noise for antisymmetric input.
    for (Eigen::Index i = 0; i < mat_.rows(); ++i)
        if (std::abs(mat_(i, i)) > bound)
            throw ParseError("AntisymmetricMatrix: nonzero diagonal entry");
}

}  // namespace bmz
