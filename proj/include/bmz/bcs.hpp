#pragma once

#include <utility>
#include <vector>

#include "bmz/linalg.hpp"

namespace bmz {

/// One canonical pair of a BCS-form condensate: amplitude c_m >= 0 and the
/// unit-modulus phase s_m. Pair p occupies modes (p, p + N/2).
struct BcsSpec {
    struct Pair {
        double c = 0.0;
        Complex s = Complex(0.0, 1.0);
    };
    std::vector<Pair> pairs;
    // Allows c_m of either sign, to reach the regime where the tilde matrix
    // is not positive definite.
    bool relaxed_signs = false;
};

/// Condensate matrix C = U* K U+ with K the canonical pattern carrying the
/// (c_m, s_m) amplitudes; u defaults to the identity.
AntisymmetricMatrix build_bcs_matrix(const BcsSpec& spec,
                                     const ComplexMatrix* u = nullptr);

/// Quasiparticle amplitudes u = 1/sqrt(1+c^2), v = c/sqrt(1+c^2).
std::pair<double, double> uv_amplitudes(double c_m);

/// Unitary antisymmetric time-reversal matrix [[0, I], [-I, 0]].
struct TimeReversalStructure {
    ComplexMatrix u_t;
    int half_dim = 0;
};

TimeReversalStructure time_reversal_matrix(int half_dim);

struct TimeEvenCheck {
    bool time_even = false;
    double deviation = 0.0;  // max-abs of C+ - U_T C^T U_T^T
};

/// Checks C+ = U_T C^T U_T^T within tol scaled by the matrix magnitude.
TimeEvenCheck is_time_even(const AntisymmetricMatrix& c,
                           const TimeReversalStructure& t, double tol = 1e-10);

struct CTildeResult {
    ComplexMatrix c_tilde;  // -U_T C
    double hermiticity_deviation = 0.0;
    bool positive_definite = false;
};

/// The tilde matrix -U_T C; positive definiteness of its hermitian part is a
/// sufficient condition for full diagonalizability of C+C'.
CTildeResult c_tilde(const AntisymmetricMatrix& c, const TimeReversalStructure& t,
                     double tol = 1e-10);

/// The 4x4 pair with A = [[1, a], [a*, 0]], A' = [[0, 1], [1, 0]]: defective
/// product for real a, diagonalizable for any nonzero imaginary part, and
/// increasingly ill-conditioned as Im a -> 0.
std::pair<AntisymmetricMatrix, AntisymmetricMatrix> example_pair(Complex a);

/// Block matrix [[0, A], [-A^T, 0]]; time-even with hermitian A.
AntisymmetricMatrix time_even_from_block(const ComplexMatrix& a);

}  // namespace bmz
