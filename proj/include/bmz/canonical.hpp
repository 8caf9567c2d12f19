#pragma once

#include <utility>
#include <vector>

#include "bmz/jordan.hpp"
#include "bmz/linalg.hpp"

namespace bmz {

struct Tolerances {
    double cluster_tol = kDefaultClusterTol;
    double rank_tol = linalg::kDefaultRankTol;
    double residual_tol = 1e-8;
};

inline constexpr double kIllConditionedThreshold = 1e10;

/// How the freedom beta * beta'^* = D is resolved.
enum class Convention {
    BetaEqD,  // beta = D, beta'^* = I
    SqrtD,    // beta = beta'^* = principal square root of D
};

struct BlockPairing {
    // (I, I~) by block id; the first block of each pair has the smaller
    // start column.
    std::vector<std::pair<int, int>> pairs;
    // L = 1 blocks with D_I = 0, set aside before pairing.
    std::vector<int> null_sector;
};

/// Canonical content of one pair of degenerate Jordan blocks.
struct CanonicalPairBlock {
    int block_i = 0;  // smaller start column; carries phase s_I
    int block_j = 0;  // partner, carries -s_I
    Complex eigenvalue;
    int length = 1;
    Complex phase;                       // s_I, unit modulus
    ComplexMatrix c_block;               // C^I, symmetric, skew diagonal real positive
    ComplexMatrix cp_block;              // C'^I, symmetric
    std::vector<Complex> beta;           // Toeplitz parameters of beta
    std::vector<Complex> beta_prime;     // Toeplitz parameters of beta'^*
};

struct PairedCanonicalForm {
    ComplexMatrix basis;  // final common basis W
    std::vector<JordanBlock> blocks;
    BlockPairing pairing;
    std::vector<CanonicalPairBlock> pair_data;
    Convention convention = Convention::BetaEqD;
    double residual_c = 0.0;    // |W^-1 C+ W^-T - assembly| relative
    double residual_cp = 0.0;   // |W^T C' W - assembly| relative
    // Conditioning of the congruence by W (kappa_2(W)^2): the factor by
    // which input errors can be amplified in the reconstructed block forms.
    double condition_estimate = 1.0;
    bool ill_conditioned = false;
};

struct ClassicCanonicalForm {
    ComplexMatrix u;  // unitary
    std::vector<double> c_values;   // per column, c_n = c_n~ >= 0
    std::vector<Complex> phases;    // s_n, opposite signs for partners
    std::vector<int> partner;       // column map m <-> m~; -1 for an unpaired zero mode
};

struct CouplingData {
    struct PairCoupling {
        int block_i = 0;
        int block_j = 0;
        std::vector<Complex> beta;  // raw Toeplitz parameters before re-heading
    };
    std::vector<PairCoupling> pairs;
    double max_within_block = 0.0;   // alpha / epsilon deviation
    double max_off_structure = 0.0;  // deviation from the exact paired form
};

struct VerificationReport {
    double residual_c = 0.0;
    double residual_cp = 0.0;
    double max_beta_constraint_dev = 0.0;  // |beta beta'^* - D| per pair, max
    double max_phase_dev = 0.0;            // ||s_I| - 1|
    double max_symmetry_dev = 0.0;         // block symmetry
    bool convention_ok = true;
};

/// Block-diagonal skew flip J: ones on each block's anti-diagonal.
ComplexMatrix skew_flip(const std::vector<JordanBlock>& blocks, int dim);

/// The dual Jordan basis V = C+ W^-T J of the product matrix C+C'.
ComplexMatrix dual_basis(const AntisymmetricMatrix& c,
                         const JordanDecomposition& decomp,
                         const Tolerances& tols = {});

/// Pair degenerate Jordan blocks of C+C' using the head couplings of
/// S = W^-1 C+ W^-T; L = 1 zero-eigenvalue blocks land in the null sector.
BlockPairing pair_blocks(const AntisymmetricMatrix& c,
                         const JordanDecomposition& decomp,
                         const Tolerances& tols = {});

/// Raw coupling parameters of S restricted to each pair, plus the deviation
/// of the within-block couplings from zero.
CouplingData extract_couplings(const AntisymmetricMatrix& c,
                               const JordanDecomposition& decomp,
                               const BlockPairing& pairing,
                               const Tolerances& tols = {});

/// Full pipeline: Jordan decomposition of C+C', block pairing, series
/// re-heading to the chosen convention, phase fixing.
PairedCanonicalForm canonical_pair_form(const AntisymmetricMatrix& c,
                                        const AntisymmetricMatrix& cp,
                                        Convention convention = Convention::BetaEqD,
                                        const Tolerances& tols = {});

/// Canonical form of a single antisymmetric matrix under a unitary
/// congruence, via the hermitian eigendecomposition of C+C.
ClassicCanonicalForm classic_bloch_messiah(const AntisymmetricMatrix& c,
                                           double tol = 1e-10);

/// Recompute every invariant of a paired canonical form; report-only.
VerificationReport verify_canonical(const AntisymmetricMatrix& c,
                                    const AntisymmetricMatrix& cp,
                                    const PairedCanonicalForm& form);

/// Target matrices in the Jordan basis: what W^-1 C+ W^-T and W^T C' W
/// should equal.
ComplexMatrix assemble_c_form(const PairedCanonicalForm& form);
ComplexMatrix assemble_cp_form(const PairedCanonicalForm& form);

}  // namespace bmz
