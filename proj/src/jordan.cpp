#include "bmz/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bmz {

namespace {

// Orthonormal basis of the column space of a, dropping directions with
// singular value below drop_tol times the largest.
ComplexMatrix orthonormal_columns(const ComplexMatrix& a, double drop_tol = 1e-12) {
    if (a.cols() == 0) return ComplexMatrix(a.rows(), 0);
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double largest = sv.size() > 0 ? sv(0) : 0.0;
    int keep = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > drop_tol * largest) ++keep;
    return svd.matrixU().leftCols(keep);
}

}  // namespace

std::vector<EigenvalueCluster> cluster_eigenvalues(
    const std::vector<Complex>& eigs, double cluster_tol) {
    const int n = static_cast<int>(eigs.size());
    std::vector<EigenvalueCluster> out;
    if (n == 0) return out;
    double max_mag = 0.0;
    for (const Complex& e : eigs) max_mag = std::max(max_mag, std::abs(e));
    const double link = cluster_tol * (1.0 + max_mag);

    // Single linkage via breadth-first walk over the proximity graph.
    std::vector<bool> visited(n, false);
    for (int i = 0; i < n; ++i) {
        if (visited[i]) continue;
        std::vector<int> members{i};
        visited[i] = true;
        for (size_t head = 0; head < members.size(); ++head) {
            for (int j = 0; j < n; ++j) {
                if (!visited[j] && std::abs(eigs[members[head]] - eigs[j]) <= link) {
                    visited[j] = true;
                    members.push_back(j);
                }
            }
        }
        Complex mean = 0.0;
        for (int idx : members) mean += eigs[idx];
        mean /= static_cast<double>(members.size());
        out.push_back({mean, static_cast<int>(members.size())});
    }
    return out;
}

std::vector<std::vector<ComplexVector>> jordan_chains(const ComplexMatrix& m,
                                                      Complex lambda,
                                                      int multiplicity,
                                                      double rank_tol) {
    if (m.rows() != m.cols())
        throw DimensionError("jordan_chains: matrix not square");
    const int n = static_cast<int>(m.rows());
    if (multiplicity < 1 || multiplicity > n)
        throw DimensionError("jordan_chains: bad multiplicity");

    const ComplexMatrix b = m - lambda * ComplexMatrix::Identity(n, n);
    const double b_scale = linalg::max_abs(b) == 0.0
                               ? 0.0
                               : Eigen::JacobiSVD<ComplexMatrix>(b).singularValues()(0);

    if (b_scale <= rank_tol) {
        // m is lambda times identity to tolerance: all chains are length 1.
        std::vector<std::vector<ComplexVector>> chains;
        for (int i = 0; i < multiplicity; ++i)
            chains.push_back({ComplexVector::Unit(n, i)});
        return chains;
    }

    // Null-space dimensions of b^k give the Weyr sequence.
    std::vector<int> null_dim{0};                 // null_dim[k], k = 0
    std::vector<ComplexMatrix> null_basis{ComplexMatrix(n, 0)};
    ComplexMatrix bk = ComplexMatrix::Identity(n, n);
    int k_max = 0;
    for (int k = 1; k <= multiplicity; ++k) {
        bk = bk * b;
        Eigen::JacobiSVD<ComplexMatrix> svd(bk, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double threshold = rank_tol * std::pow(b_scale, k);
        int nk = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) <= threshold) ++nk;
        null_dim.push_back(nk);
        null_basis.push_back(svd.matrixV().rightCols(nk));
        k_max = k;
        if (nk >= multiplicity) break;
    }
    if (null_dim[k_max] != multiplicity) {
        std::ostringstream os;
        os << "jordan_chains: null space of (M - lambda I)^" << k_max
           << " has dimension " << null_dim[k_max] << ", expected "
           << multiplicity << "; try a different rank_tol";
        throw DegeneracyError(os.str());
    }

    // blocks_ge[k] = number of chains of length >= k.
    std::vector<int> blocks_ge(k_max + 2, 0);
    for (int k = 1; k <= k_max; ++k) blocks_ge[k] = null_dim[k] - null_dim[k - 1];
    for (int k = 1; k < k_max; ++k)
        if (blocks_ge[k + 1] > blocks_ge[k])
            throw DegeneracyError(
                "jordan_chains: non-monotone Weyr sequence; try a different rank_tol");

    std::vector<std::vector<ComplexVector>> chains;
    std::vector<std::vector<ComplexVector>> level_vectors(k_max + 1);
    for (int len = k_max; len >= 1; --len) {
        const int count = blocks_ge[len] - blocks_ge[len + 1];
        if (count == 0) continue;

        // Space the new heads must avoid: the lower null space plus the
        // height-len vectors of the longer chains.
        int avoid_cols = static_cast<int>(level_vectors[len].size()) +
                         static_cast<int>(null_basis[len - 1].cols());
        ComplexMatrix avoid(n, avoid_cols);
        int col = 0;
        for (Eigen::Index j = 0; j < null_basis[len - 1].cols(); ++j)
            avoid.col(col++) = null_basis[len - 1].col(j);
        for (const auto& v : level_vectors[len]) avoid.col(col++) = v;
        const ComplexMatrix p = orthonormal_columns(avoid);

        ComplexMatrix candidates = null_basis[len];
        if (p.cols() > 0) candidates -= p * (p.adjoint() * candidates);
        Eigen::JacobiSVD<ComplexMatrix> svd(candidates, Eigen::ComputeThinU);
        if (svd.singularValues().size() < count ||
            svd.singularValues()(count - 1) < 1e-8)
            throw DegeneracyError(
                "jordan_chains: could not separate chain heads; try a different rank_tol");

        for (int c = 0; c < count; ++c) {
            std::vector<ComplexVector> chain(len);
            chain[len - 1] = svd.matrixU().col(c);
            for (int k = len - 1; k >= 1; --k) chain[k - 1] = b * chain[k];
            const double eig_norm = chain[0].norm();
            if (eig_norm < 1e-14)
                throw DegeneracyError(
                    "jordan_chains: degenerate chain (vanishing eigenvector)");
            for (auto& v : chain) v /= eig_norm;
            for (int k = 1; k <= len; ++k) level_vectors[k].push_back(chain[k - 1]);
            chains.push_back(std::move(chain));
        }
    }
    std::stable_sort(chains.begin(), chains.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return chains;
}

ComplexMatrix JordanDecomposition::block_diagonal() const {
    const int n = static_cast<int>(basis.rows());
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    for (const JordanBlock& blk : blocks) {
        for (int k = 0; k < blk.length; ++k) {
            d(blk.start_column + k, blk.start_column + k) = blk.eigenvalue;
            if (k + 1 < blk.length)
                d(blk.start_column + k, blk.start_column + k + 1) = 1.0;
        }
    }
    return d;
}

JordanDecomposition jordan_decompose(const ComplexMatrix& m, double cluster_tol,
                                     double rank_tol) {
    if (m.rows() != m.cols())
        throw DimensionError("jordan_decompose: matrix not square");
    const int n = static_cast<int>(m.rows());
    const auto eigs = linalg::eigenvalues(m);
    const auto clusters = cluster_eigenvalues(eigs, cluster_tol);

    // Eigenvalues of defective clusters are perturbed by O(eps^(1/L)), so the
    // rank decisions inside a multiple cluster must use the cluster scale.
    const double chain_tol = std::max(rank_tol, cluster_tol);

    struct RawBlock {
        Complex eigenvalue;
        std::vector<ComplexVector> chain;
    };
    std::vector<RawBlock> raw;
    for (const auto& cl : clusters) {
        const double tol = cl.multiplicity > 1 ? chain_tol : rank_tol;
        auto chains = jordan_chains(m, cl.representative, cl.multiplicity, tol);
        for (auto& ch : chains) raw.push_back({cl.representative, std::move(ch)});
    }

    std::stable_sort(raw.begin(), raw.end(), [](const RawBlock& a, const RawBlock& b) {
        const double ma = std::abs(a.eigenvalue), mb = std::abs(b.eigenvalue);
        if (ma != mb) return ma > mb;
        if (a.chain.size() != b.chain.size()) return a.chain.size() > b.chain.size();
        return std::arg(a.eigenvalue) < std::arg(b.eigenvalue);
    });

    JordanDecomposition out;
    out.basis.resize(n, n);
    int col = 0, id = 0;
    for (const RawBlock& rb : raw) {
        JordanBlock blk;
        blk.id = id++;
        blk.eigenvalue = rb.eigenvalue;
        blk.length = static_cast<int>(rb.chain.size());
        blk.start_column = col;
        for (const auto& v : rb.chain) out.basis.col(col++) = v;
        out.blocks.push_back(blk);
    }
    if (col != n)
        throw DegeneracyError("jordan_decompose: chain vectors do not span the space");

    auto rank = linalg::svd_rank(out.basis, rank_tol);
    if (rank.rank < n)
        throw DegeneracyError(
            "jordan_decompose: Jordan basis singular to tolerance; try a different rank_tol");

    out.residual = linalg::max_abs(m * out.basis - out.basis * out.block_diagonal());
    return out;
}

ComplexMatrix series_head_transform(const std::vector<Complex>& alpha_params) {
    if (alpha_params.empty())
        throw DimensionError("series_head_transform: empty parameter list");
    if (alpha_params[0] == Complex(0.0))
        throw Error("series_head_transform: alpha_1 must not vanish");
    const int len = static_cast<int>(alpha_params.size());
    ComplexMatrix t = ComplexMatrix::Zero(len, len);
    for (int k = 0; k < len; ++k)
        for (int kp = k; kp < len; ++kp) t(k, kp) = alpha_params[kp - k];
    return t;
}

}  // namespace bmz
