#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bmz/errors.hpp"

namespace bmz {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace linalg {

inline constexpr double kDefaultAntisymTol = 1e-12;
inline constexpr double kDefaultRankTol = 1e-10;

/// Max-abs entry; 0 for empty matrices.
double max_abs(const ComplexMatrix& a);

/// True if every entry is finite.
bool all_finite(const ComplexMatrix& a);

/// Standard product with the usual dimension check.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

/// Inverse via partial-pivot LU. Throws SingularMatrixError when the
/// smallest pivot magnitude drops below tol times the max-abs entry.
ComplexMatrix inverse(const ComplexMatrix& a, double tol = kDefaultRankTol);

struct SvdRank {
    int rank = 0;
    std::vector<double> singular_values;  // non-negative, descending
};

/// Numerical rank: count of singular values above rel_tol times the largest.
SvdRank svd_rank(const ComplexMatrix& a, double rel_tol = kDefaultRankTol);

/// All eigenvalues with algebraic multiplicity, sorted lexicographically by
/// (real, imag) so repeated runs cluster identically downstream.
std::vector<Complex> eigenvalues(const ComplexMatrix& a);

/// Condition estimate sigma_max / sigma_min; +inf when singular.
double condition_estimate(const ComplexMatrix& a);

}  // namespace linalg

/// Dense complex square matrix with C^T = -C, validated on construction.
class AntisymmetricMatrix {
  public:
    explicit AntisymmetricMatrix(ComplexMatrix m,
                                 double tol_antisym = linalg::kDefaultAntisymTol);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const ComplexMatrix& mat() const { return mat_; }
    ComplexMatrix adjoint() const { return mat_.adjoint(); }

  private:
    ComplexMatrix mat_;
};

}  // namespace bmz
