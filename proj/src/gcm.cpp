#include "bmz/gcm.hpp"

#include <cmath>

namespace bmz {

OverlapResult overlap(const AntisymmetricMatrix& c, const AntisymmetricMatrix& cp,
                      const Tolerances& tols) {
    if (c.dim() != cp.dim())
        throw DimensionError("overlap: dimensions differ");
    OverlapResult out;
    out.value = 1.0;
    out.det_check = 1.0;
    const int n = c.dim();
    if (n == 0) return out;

    const ComplexMatrix m = c.adjoint() * cp.mat();
    const ComplexMatrix one_plus = ComplexMatrix::Identity(n, n) + m;
    out.det_check = one_plus.determinant();

    const JordanDecomposition decomp =
        jordan_decompose(m, tols.cluster_tol, tols.rank_tol);
    const BlockPairing pairing = pair_blocks(c, decomp, tols);
    out.null_sector_dimension = static_cast<int>(pairing.null_sector.size());
    out.ill_conditioned =
        linalg::condition_estimate(decomp.basis) > kIllConditionedThreshold;

    for (const auto& [ida, idb] : pairing.pairs) {
        const JordanBlock* blk = nullptr;
        for (const auto& b : decomp.blocks)
            if (b.id == ida) blk = &b;
        PairFactor pf;
        pf.eigenvalue = blk->eigenvalue;
        pf.length = blk->length;
        pf.factor = std::pow(Complex(1.0) + pf.eigenvalue, pf.length);
        if (std::abs(Complex(1.0) + pf.eigenvalue) <= 1e-12) {
            pf.factor = 0.0;
            out.orthogonal = true;
        }
        out.per_pair_factors.push_back(pf);
        out.value *= pf.factor;
    }
    out.det_rel_discrepancy = std::abs(out.value * out.value - out.det_check) /
                              std::max(1.0, std::abs(out.det_check));
    return out;
}

ComplexMatrix transition_density(const AntisymmetricMatrix& c,
                                 const AntisymmetricMatrix& cp,
                                 const Tolerances& tols) {
    if (c.dim() != cp.dim())
        throw DimensionError("transition_density: dimensions differ");
    const int n = c.dim();
    const ComplexMatrix m = c.adjoint() * cp.mat();
    const ComplexMatrix one_plus = ComplexMatrix::Identity(n, n) + m;
    try {
        return linalg::inverse(one_plus, tols.rank_tol) * m;
    } catch (const SingularMatrixError& e) {
        throw OrthogonalStatesError(
            "transition_density: states orthogonal to tolerance (1 + C+C' singular)",
            e.pivot_magnitude);
    }
}

}  // namespace bmz
