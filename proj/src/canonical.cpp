#include "bmz/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bmz {

namespace {

using Params = std::vector<Complex>;

ComplexMatrix small_flip(int len) {
    ComplexMatrix j = ComplexMatrix::Zero(len, len);
    for (int k = 0; k < len; ++k) j(k, len - 1 - k) = 1.0;
    return j;
}

// Upper-triangular Toeplitz matrix from its first row; alpha[0] may vanish.
ComplexMatrix toeplitz(const Params& p) {
    const int len = static_cast<int>(p.size());
    ComplexMatrix t = ComplexMatrix::Zero(len, len);
    for (int k = 0; k < len; ++k)
        for (int kp = k; kp < len; ++kp) t(k, kp) = p[kp - k];
    return t;
}

// Project a near-Toeplitz upper-triangular matrix onto exact Toeplitz form
// by averaging its diagonals.
Params toeplitz_params(const ComplexMatrix& t) {
    const int len = static_cast<int>(t.rows());
    Params p(len, 0.0);
    for (int d = 0; d < len; ++d) {
        Complex sum = 0.0;
        for (int k = 0; k + d < len; ++k) sum += t(k, k + d);
        p[d] = sum / static_cast<double>(len - d);
    }
    return p;
}

Params toeplitz_mul(const Params& a, const Params& b) {
    const int len = static_cast<int>(a.size());
    Params c(len, 0.0);
    for (int d = 0; d < len; ++d)
        for (int j = 0; j <= d; ++j) c[d] += a[j] * b[d - j];
    return c;
}

Params toeplitz_inv(const Params& a) {
    const int len = static_cast<int>(a.size());
    if (a[0] == Complex(0.0))
        throw SingularMatrixError("toeplitz_inv: leading parameter vanishes", 0.0);
    Params c(len, 0.0);
    c[0] = 1.0 / a[0];
    for (int d = 1; d < len; ++d) {
        Complex acc = 0.0;
        for (int j = 1; j <= d; ++j) acc += a[j] * c[d - j];
        c[d] = -acc / a[0];
    }
    return c;
}

// Principal square root of an upper-triangular Toeplitz matrix given by its
// parameters; requires the diagonal off the negative real axis.
Params toeplitz_sqrt(const Params& d) {
    const int len = static_cast<int>(d.size());
    Params s(len, 0.0);
    s[0] = std::sqrt(d[0]);
    for (int k = 1; k < len; ++k) {
        Complex acc = d[k];
        for (int j = 1; j < k; ++j) acc -= s[j] * s[k - j];
        s[k] = acc / (2.0 * s[0]);
    }
    return s;
}

Params d_block_params(Complex eigenvalue, int len) {
    Params p(len, 0.0);
    p[0] = eigenvalue;
    if (len > 1) p[1] = 1.0;
    return p;
}

const JordanBlock& block_by_id(const std::vector<JordanBlock>& blocks, int id) {
    for (const auto& b : blocks)
        if (b.id == id) return b;
    throw DimensionError("unknown block id");
}

struct PairingWork {
    BlockPairing pairing;
    ComplexMatrix w;  // basis after decoupling updates
    ComplexMatrix s;  // W^-1 C+ W^-T, kept in sync with w
    std::vector<JordanBlock> blocks;
};

PairingWork pair_and_decouple(const AntisymmetricMatrix& c,
                              const JordanDecomposition& decomp,
                              const Tolerances& tols) {
    PairingWork work;
    work.w = decomp.basis;
    work.blocks = decomp.blocks;
    const ComplexMatrix winv = linalg::inverse(work.w, tols.rank_tol);
    work.s = winv * c.adjoint() * winv.transpose();

    double max_d = 0.0;
    for (const auto& b : work.blocks) max_d = std::max(max_d, std::abs(b.eigenvalue));
    const double null_thr = tols.cluster_tol * (1.0 + max_d);

    std::vector<int> active;
    for (const auto& b : work.blocks) {
        if (b.length == 1 && std::abs(b.eigenvalue) <= null_thr)
            work.pairing.null_sector.push_back(b.id);
        else
            active.push_back(b.id);
    }

    // Degeneracy classes: equal length and equal eigenvalue within tolerance.
    std::vector<std::vector<int>> classes;
    std::vector<bool> assigned(active.size(), false);
    for (size_t i = 0; i < active.size(); ++i) {
        if (assigned[i]) continue;
        const JordanBlock& bi = block_by_id(work.blocks, active[i]);
        std::vector<int> cls{active[i]};
        assigned[i] = true;
        for (size_t j = i + 1; j < active.size(); ++j) {
            if (assigned[j]) continue;
            const JordanBlock& bj = block_by_id(work.blocks, active[j]);
            if (bj.length == bi.length &&
                std::abs(bj.eigenvalue - bi.eigenvalue) <= null_thr) {
                cls.push_back(active[j]);
                assigned[j] = true;
            }
        }
        classes.push_back(std::move(cls));
    }

    const double coupling_thr = tols.rank_tol * (1.0 + linalg::max_abs(work.s));
    ComplexMatrix& s = work.s;
    ComplexMatrix& w = work.w;

    auto coupling = [&](const JordanBlock& a, const JordanBlock& b) {
        return std::abs(s(a.start_column + a.length - 1, b.start_column));
    };

    for (auto& cls : classes) {
        std::vector<int> remaining = cls;
        while (!remaining.empty()) {
            if (remaining.size() == 1) {
                std::ostringstream os;
                const JordanBlock& b = block_by_id(work.blocks, remaining[0]);
                os << "pair_blocks: block (D = " << b.eigenvalue << ", L = "
                   << b.length << ") has no degenerate partner";
                throw TheoremViolationError(os.str());
            }
            size_t best_a = 0, best_b = 1;
            double best = -1.0;
            for (size_t a = 0; a < remaining.size(); ++a)
                for (size_t bidx = a + 1; bidx < remaining.size(); ++bidx) {
                    const double mag =
                        coupling(block_by_id(work.blocks, remaining[a]),
                                 block_by_id(work.blocks, remaining[bidx]));
                    if (mag > best) {
                        best = mag;
                        best_a = a;
                        best_b = bidx;
                    }
                }
            if (best <= coupling_thr)
                throw TheoremViolationError(
                    "pair_blocks: vanishing head coupling inside a degeneracy class");

            const JordanBlock* bi = &block_by_id(work.blocks, remaining[best_a]);
            const JordanBlock* bj = &block_by_id(work.blocks, remaining[best_b]);
            if (bi->start_column > bj->start_column) std::swap(bi, bj);
            work.pairing.pairs.emplace_back(bi->id, bj->id);

            const int li = bi->start_column, lj = bj->start_column, len = bi->length;
            // Decouple every other block of the class from the resolved pair:
            // a congruence E S E^T with E = I + E_KI + E_KJ zeroes the
            // couplings, and W absorbs E^-1 = I - E_KI - E_KJ.
            std::vector<int> rest;
            for (size_t r = 0; r < remaining.size(); ++r)
                if (r != best_a && r != best_b) rest.push_back(remaining[r]);
            for (int kid : rest) {
                const JordanBlock& bk = block_by_id(work.blocks, kid);
                const int lk = bk.start_column;
                const ComplexMatrix s_ij = s.block(li, lj, len, len);
                const ComplexMatrix s_ji = s.block(lj, li, len, len);
                const ComplexMatrix e_ki = toeplitz(toeplitz_params(
                    -s.block(lk, lj, len, len) * linalg::inverse(s_ij, tols.rank_tol)));
                const ComplexMatrix e_kj = toeplitz(toeplitz_params(
                    -s.block(lk, li, len, len) * linalg::inverse(s_ji, tols.rank_tol)));
                s.middleRows(lk, len) +=
                    (e_ki * s.middleRows(li, len) + e_kj * s.middleRows(lj, len)).eval();
                s.middleCols(lk, len) +=
                    (s.middleCols(li, len) * e_ki.transpose() +
                     s.middleCols(lj, len) * e_kj.transpose()).eval();
                w.middleCols(li, len) -= w.middleCols(lk, len) * e_ki;
                w.middleCols(lj, len) -= w.middleCols(lk, len) * e_kj;
            }
            remaining = rest;
        }
    }
    return work;
}

// Residual of a computed transform against its assembly, max-abs relative to
// the assembly scale. With a nonempty null sector only the paired rows and
// columns are claimed by the canonical form.
double masked_relative_residual(const ComplexMatrix& computed,
                                const ComplexMatrix& assembly,
                                const std::vector<bool>& paired_col) {
    double dev = 0.0, scale = 0.0;
    for (Eigen::Index j = 0; j < computed.cols(); ++j) {
        if (!paired_col[j]) continue;
        for (Eigen::Index i = 0; i < computed.rows(); ++i) {
            if (!paired_col[i]) continue;
            dev = std::max(dev, std::abs(computed(i, j) - assembly(i, j)));
            scale = std::max(scale, std::abs(assembly(i, j)));
        }
    }
    if (scale == 0.0) return dev;
    return dev / scale;
}

std::vector<bool> paired_mask(const PairedCanonicalForm& form) {
    std::vector<bool> mask(form.basis.rows(), false);
    for (const auto& pd : form.pair_data) {
        const JordanBlock& bi = block_by_id(form.blocks, pd.block_i);
        const JordanBlock& bj = block_by_id(form.blocks, pd.block_j);
        for (int k = 0; k < bi.length; ++k) mask[bi.start_column + k] = true;
        for (int k = 0; k < bj.length; ++k) mask[bj.start_column + k] = true;
    }
    return mask;
}

}  // namespace

ComplexMatrix skew_flip(const std::vector<JordanBlock>& blocks, int dim) {
    ComplexMatrix j = ComplexMatrix::Zero(dim, dim);
    for (const auto& b : blocks)
        for (int k = 0; k < b.length; ++k)
            j(b.start_column + k, b.start_column + b.length - 1 - k) = 1.0;
    return j;
}

ComplexMatrix dual_basis(const AntisymmetricMatrix& c,
                         const JordanDecomposition& decomp,
                         const Tolerances& tols) {
    const int n = static_cast<int>(decomp.basis.rows());
    const ComplexMatrix winv = linalg::inverse(decomp.basis, tols.rank_tol);
    return c.adjoint() * winv.transpose() * skew_flip(decomp.blocks, n);
}

BlockPairing pair_blocks(const AntisymmetricMatrix& c,
                         const JordanDecomposition& decomp,
                         const Tolerances& tols) {
    return pair_and_decouple(c, decomp, tols).pairing;
}

CouplingData extract_couplings(const AntisymmetricMatrix& c,
                               const JordanDecomposition& decomp,
                               const BlockPairing& pairing,
                               const Tolerances& tols) {
    const ComplexMatrix winv = linalg::inverse(decomp.basis, tols.rank_tol);
    const ComplexMatrix s = winv * c.adjoint() * winv.transpose();
    const int n = static_cast<int>(s.rows());

    CouplingData out;
    ComplexMatrix expected = ComplexMatrix::Zero(n, n);
    std::vector<bool> paired(n, false);
    for (const auto& [ida, idb] : pairing.pairs) {
        const JordanBlock& bi = block_by_id(decomp.blocks, ida);
        const JordanBlock& bj = block_by_id(decomp.blocks, idb);
        const int len = bi.length;
        const ComplexMatrix jf = small_flip(len);
        const ComplexMatrix s_ij = s.block(bi.start_column, bj.start_column, len, len);
        const Params t = toeplitz_params(s_ij * jf);
        const Complex lead = t[0];
        if (std::abs(lead) == 0.0)
            throw DegeneracyError("extract_couplings: vanishing head coupling");
        const Complex phase = lead / std::abs(lead);
        Params beta(len);
        for (int k = 0; k < len; ++k) beta[k] = std::conj(phase) * std::conj(phase) * t[k];
        out.pairs.push_back({bi.id, bj.id, beta});

        const ComplexMatrix proj = toeplitz(t) * jf;
        expected.block(bi.start_column, bj.start_column, len, len) = proj;
        expected.block(bj.start_column, bi.start_column, len, len) = -proj.transpose();
        out.max_within_block = std::max(
            out.max_within_block,
            std::max(linalg::max_abs(s.block(bi.start_column, bi.start_column, len, len)),
                     linalg::max_abs(s.block(bj.start_column, bj.start_column, len, len))));
        for (int k = 0; k < len; ++k) {
            paired[bi.start_column + k] = true;
            paired[bj.start_column + k] = true;
        }
    }
    for (int j = 0; j < n; ++j) {
        if (!paired[j]) continue;
        for (int i = 0; i < n; ++i) {
            if (!paired[i]) continue;
            out.max_off_structure =
                std::max(out.max_off_structure, std::abs(s(i, j) - expected(i, j)));
        }
    }
    const double thr = tols.residual_tol * (1.0 + linalg::max_abs(s));
    if (out.max_within_block > thr) {
        std::ostringstream os;
        os << "extract_couplings: within-block couplings of magnitude "
           << out.max_within_block << " do not vanish (threshold " << thr << ")";
        throw DegeneracyError(os.str());
    }
    return out;
}

PairedCanonicalForm canonical_pair_form(const AntisymmetricMatrix& c,
                                        const AntisymmetricMatrix& cp,
                                        Convention convention,
                                        const Tolerances& tols) {
    if (c.dim() != cp.dim())
        throw DimensionError("canonical_pair_form: dimensions differ");
    const int n = c.dim();
    const ComplexMatrix m = c.adjoint() * cp.mat();
    const JordanDecomposition decomp = jordan_decompose(m, tols.cluster_tol, tols.rank_tol);
    PairingWork work = pair_and_decouple(c, decomp, tols);

    PairedCanonicalForm form;
    form.blocks = work.blocks;
    form.pairing = work.pairing;
    form.convention = convention;

    double max_d = 0.0;
    for (const auto& b : work.blocks) max_d = std::max(max_d, std::abs(b.eigenvalue));
    const double null_thr = tols.cluster_tol * (1.0 + max_d);

    ComplexMatrix& w = work.w;
    for (const auto& [ida, idb] : work.pairing.pairs) {
        const JordanBlock& bi = block_by_id(work.blocks, ida);
        const JordanBlock& bj = block_by_id(work.blocks, idb);
        const int len = bi.length;
        const ComplexMatrix jf = small_flip(len);
        const Complex d_rep = 0.5 * (bi.eigenvalue + bj.eigenvalue);
        const Params d_params = d_block_params(d_rep, len);

        Params beta_t, betap_t;
        if (convention == Convention::BetaEqD) {
            if (std::abs(d_rep) <= null_thr && len > 1) {
                // Nilpotent pair: D is not invertible, so the roles swap.
                beta_t = Params(len, 0.0);
                beta_t[0] = 1.0;
                betap_t = d_params;
            } else {
                beta_t = d_params;
                betap_t = Params(len, 0.0);
                betap_t[0] = 1.0;
            }
        } else {
            const bool on_cut =
                std::abs(d_rep) <= null_thr ||
                (d_rep.real() < 0.0 && std::abs(d_rep.imag()) <= null_thr);
            if (on_cut)
                throw BranchCutError(
                    "canonical_pair_form: eigenvalue on the square-root branch cut; "
                    "use the BETA_EQ_D convention");
            beta_t = toeplitz_sqrt(d_params);
            betap_t = beta_t;
        }

        const Complex s_phase = std::conj(beta_t[0]) / std::abs(beta_t[0]);

        // Re-head series I so that S_IJ = s^2 * toeplitz(beta_t) * J.
        const ComplexMatrix s_ij =
            work.s.block(bi.start_column, bj.start_column, len, len);
        const Params t_raw = toeplitz_params(s_ij * jf);
        const Params x_params = [&] {
            Params p = toeplitz_mul(t_raw, toeplitz_inv(beta_t));
            const Complex f = std::conj(s_phase) * std::conj(s_phase);
            for (auto& v : p) v *= f;
            return p;
        }();
        w.middleCols(bi.start_column, len) =
            (w.middleCols(bi.start_column, len) * toeplitz(x_params)).eval();

        CanonicalPairBlock pd;
        pd.block_i = bi.id;
        pd.block_j = bj.id;
        pd.eigenvalue = d_rep;
        pd.length = len;
        pd.phase = s_phase;
        pd.beta = beta_t;
        pd.c_block = s_phase * toeplitz(beta_t) * jf;
        pd.beta_prime = betap_t;  // refined below from the actual transform
        form.pair_data.push_back(std::move(pd));
    }

    form.basis = w;
    // Read beta'^* off the final basis and collect residuals.
    const ComplexMatrix winv = linalg::inverse(w, tols.rank_tol);
    const ComplexMatrix s_final = winv * c.adjoint() * winv.transpose();
    const ComplexMatrix tp_final = w.transpose() * cp.mat() * w;
    for (auto& pd : form.pair_data) {
        const JordanBlock& bi = block_by_id(form.blocks, pd.block_i);
        const JordanBlock& bj = block_by_id(form.blocks, pd.block_j);
        const int len = pd.length;
        const ComplexMatrix jf = small_flip(len);
        const ComplexMatrix tp_ji =
            tp_final.block(bj.start_column, bi.start_column, len, len);
        pd.beta_prime = toeplitz_params(jf * tp_ji * (pd.phase * pd.phase));
        pd.cp_block = std::conj(pd.phase) * jf * toeplitz(pd.beta_prime);
    }

    const auto mask = paired_mask(form);
    form.residual_c = masked_relative_residual(s_final, assemble_c_form(form), mask);
    form.residual_cp = masked_relative_residual(tp_final, assemble_cp_form(form), mask);
    // Conditioning of the congruence W X W^T: input errors are amplified by
    // up to kappa(W)^2 in the reconstructed block forms.
    const double kappa = linalg::condition_estimate(w);
    form.condition_estimate = kappa * kappa;
    form.ill_conditioned = form.condition_estimate > kIllConditionedThreshold;
    return form;
}

ComplexMatrix assemble_c_form(const PairedCanonicalForm& form) {
    const int n = static_cast<int>(form.basis.rows());
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (const auto& pd : form.pair_data) {
        const JordanBlock& bi = block_by_id(form.blocks, pd.block_i);
        const JordanBlock& bj = block_by_id(form.blocks, pd.block_j);
        a.block(bi.start_column, bj.start_column, pd.length, pd.length) =
            pd.phase * pd.c_block;
        a.block(bj.start_column, bi.start_column, pd.length, pd.length) =
            -pd.phase * pd.c_block;
    }
    return a;
}

ComplexMatrix assemble_cp_form(const PairedCanonicalForm& form) {
    const int n = static_cast<int>(form.basis.rows());
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (const auto& pd : form.pair_data) {
        const JordanBlock& bi = block_by_id(form.blocks, pd.block_i);
        const JordanBlock& bj = block_by_id(form.blocks, pd.block_j);
        a.block(bj.start_column, bi.start_column, pd.length, pd.length) =
            std::conj(pd.phase) * pd.cp_block;
        a.block(bi.start_column, bj.start_column, pd.length, pd.length) =
            -std::conj(pd.phase) * pd.cp_block;
    }
    return a;
}

ClassicCanonicalForm classic_bloch_messiah(const AntisymmetricMatrix& c, double tol) {
    const int n = c.dim();
    const ComplexMatrix h = c.adjoint() * c.mat();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("classic_bloch_messiah: eigensolver failed");
    const auto& evals = solver.eigenvalues();
    const double scale = n > 0 ? std::max(evals.cwiseAbs().maxCoeff(), 0.0) : 0.0;
    const double link = tol * (1.0 + scale);

    ClassicCanonicalForm out;
    out.u.resize(n, n);
    out.c_values.assign(n, 0.0);
    out.phases.assign(n, Complex(1.0));
    out.partner.assign(n, -1);

    int col = 0;
    int i = n - 1;
    while (i >= 0) {
        // Degenerate cluster [j+1, i], walked from the top eigenvalue down.
        int j = i;
        while (j - 1 >= 0 && std::abs(evals(j - 1) - evals(j)) <= link) --j;
        const int d = i - j + 1;
        ComplexMatrix q(n, d);
        double mean = 0.0;
        for (int k = 0; k < d; ++k) {
            q.col(k) = solver.eigenvectors().col(j + k);
            mean += evals(j + k);
        }
        mean /= d;
        const double cval = mean > 0.0 ? std::sqrt(mean) : 0.0;

        if (cval * cval <= link) {
            // Zero modes: columns kept as-is, paired among themselves.
            for (int k = 0; k < d; ++k) {
                out.u.col(col + k) = q.col(k);
                out.c_values[col + k] = 0.0;
            }
            for (int k = 0; k + 1 < d; k += 2) {
                out.partner[col + k] = col + k + 1;
                out.partner[col + k + 1] = col + k;
                out.phases[col + k] = 1.0;
                out.phases[col + k + 1] = -1.0;
            }
            col += d;
        } else {
            // g captures the action of C on the eigenspace: C Q = conj(Q) g,
            // and g / c is unitary antisymmetric.
            const ComplexMatrix g = q.transpose() * c.mat() * q;
            const ComplexMatrix a = g / cval;
            ComplexMatrix rem = ComplexMatrix::Identity(d, d);
            while (rem.cols() > 0) {
                const ComplexVector x = rem.col(0);
                ComplexVector y = (a * x).conjugate();
                y = rem * (rem.adjoint() * y);
                const double ynorm = y.norm();
                if (ynorm < 0.5)
                    throw DegeneracyError(
                        "classic_bloch_messiah: canonical partner collapsed");
                y /= ynorm;
                y -= x * (x.adjoint() * y);
                y.normalize();
                out.u.col(col) = q * x;
                out.u.col(col + 1) = q * y;
                out.c_values[col] = cval;
                out.c_values[col + 1] = cval;
                // x^T g y = -c by construction, matching s_m = 1, s_m~ = -1.
                out.phases[col] = 1.0;
                out.phases[col + 1] = -1.0;
                out.partner[col] = col + 1;
                out.partner[col + 1] = col;
                col += 2;
                ComplexMatrix next = rem;
                next -= x * (x.adjoint() * rem);
                next -= y * (y.adjoint() * rem);
                Eigen::JacobiSVD<ComplexMatrix> svd(next, Eigen::ComputeThinU);
                const int keep = static_cast<int>(rem.cols()) - 2;
                rem = svd.matrixU().leftCols(std::max(keep, 0));
            }
        }
        i = j - 1;
    }
    return out;
}

VerificationReport verify_canonical(const AntisymmetricMatrix& c,
                                    const AntisymmetricMatrix& cp,
                                    const PairedCanonicalForm& form) {
    VerificationReport rep;
    const ComplexMatrix winv = linalg::inverse(form.basis, 1e-300);
    const ComplexMatrix s = winv * c.adjoint() * winv.transpose();
    const ComplexMatrix tp = form.basis.transpose() * cp.mat() * form.basis;
    const auto mask = paired_mask(form);
    rep.residual_c = masked_relative_residual(s, assemble_c_form(form), mask);
    rep.residual_cp = masked_relative_residual(tp, assemble_cp_form(form), mask);

    for (const auto& pd : form.pair_data) {
        const Params d_params = d_block_params(pd.eigenvalue, pd.length);
        const Params prod = toeplitz_mul(pd.beta, pd.beta_prime);
        for (int k = 0; k < pd.length; ++k)
            rep.max_beta_constraint_dev =
                std::max(rep.max_beta_constraint_dev, std::abs(prod[k] - d_params[k]));
        rep.max_phase_dev =
            std::max(rep.max_phase_dev, std::abs(std::abs(pd.phase) - 1.0));
        rep.max_symmetry_dev = std::max(
            rep.max_symmetry_dev,
            std::max(linalg::max_abs(pd.c_block - pd.c_block.transpose()),
                     linalg::max_abs(pd.cp_block - pd.cp_block.transpose())));
        // Skew diagonal of C^I must be real, positive, and constant.
        const Complex lead = pd.c_block(0, pd.length - 1);
        if (lead.real() <= 0.0 || std::abs(lead.imag()) > 1e-9 * (1.0 + std::abs(lead)))
            rep.convention_ok = false;
        if (form.convention == Convention::SqrtD) {
            for (int k = 0; k < pd.length; ++k)
                if (std::abs(pd.beta[k] - pd.beta_prime[k]) >
                    1e-7 * (1.0 + std::abs(pd.beta[k])))
                    rep.convention_ok = false;
        }
    }
    return rep;
}

}  // namespace bmz
