#pragma once

#include <vector>

#include "bmz/canonical.hpp"

namespace bmz {

struct PairFactor {
    Complex eigenvalue;  // D_I
    int length = 1;      // L_I
    Complex factor;      // (1 + D_I)^L_I
};

struct OverlapResult {
    Complex value;  // <C'|C>, product of the per-pair factors
    std::vector<PairFactor> per_pair_factors;
    int null_sector_dimension = 0;
    bool ill_conditioned = false;
    bool orthogonal = false;
    Complex det_check;               // det(1 + C+C'), independent route
    double det_rel_discrepancy = 0;  // |value^2 - det| / max(1, |det|)
};

/// Phase-resolved overlap <C'|C>: the paired Jordan blocks of C+C' make the
/// square root of det(1 + C+C') single-valued.
OverlapResult overlap(const AntisymmetricMatrix& c, const AntisymmetricMatrix& cp,
                      const Tolerances& tols = {});

/// Transition density rho = (1 + C+C')^-1 C+C', with
/// rho_mn = <C'|a+_n a_m|C> / <C'|C>.
ComplexMatrix transition_density(const AntisymmetricMatrix& c,
                                 const AntisymmetricMatrix& cp,
                                 const Tolerances& tols = {});

}  // namespace bmz
