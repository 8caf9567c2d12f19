#pragma once

#include <vector>

#include "bmz/linalg.hpp"

namespace bmz {

inline constexpr double kDefaultClusterTol = 1e-7;

struct EigenvalueCluster {
    Complex representative;  // arithmetic mean of the cluster members
    int multiplicity = 0;
};

/// Single-linkage clustering of computed eigenvalues; the linking distance is
/// cluster_tol * (1 + max |eig|).
std::vector<EigenvalueCluster> cluster_eigenvalues(
    const std::vector<Complex>& eigs, double cluster_tol = kDefaultClusterTol);

struct JordanBlock {
    int id = 0;
    Complex eigenvalue;   // D_I
    int length = 1;       // L_I
    int start_column = 0; // offset of the block's first basis vector in W
};

struct JordanDecomposition {
    ComplexMatrix basis;             // W, columns are chain vectors
    std::vector<JordanBlock> blocks;
    double residual = 0.0;           // max-abs of M W - W D

    /// Assembles D: eigenvalue on each block diagonal, ones just above it.
    ComplexMatrix block_diagonal() const;
};

/// Chains for one eigenvalue cluster. Each chain is stored eigenvector-first,
/// so within W the series head is the last column of its block. Chains are
/// returned sorted by descending length.
///
/// Chain counts come from the null-space dimensions of (M - lambda I)^k;
/// heads are picked in the null space of the highest power, orthogonal to the
/// lower one and to the matching-height vectors of longer chains, then each
/// chain is generated downward by repeated application of (M - lambda I).
std::vector<std::vector<ComplexVector>> jordan_chains(
    const ComplexMatrix& m, Complex lambda, int multiplicity,
    double rank_tol = linalg::kDefaultRankTol);

/// Full numerical Jordan decomposition. Blocks are ordered by descending
/// |D_I|, then descending length, then ascending arg(D_I).
JordanDecomposition jordan_decompose(const ComplexMatrix& m,
                                     double cluster_tol = kDefaultClusterTol,
                                     double rank_tol = linalg::kDefaultRankTol);

/// Upper-triangular Toeplitz series-head transform: alpha[0] on the diagonal,
/// alpha[1] on the first superdiagonal, and so on. alpha[0] must not vanish.
ComplexMatrix series_head_transform(const std::vector<Complex>& alpha_params);

}  // namespace bmz
