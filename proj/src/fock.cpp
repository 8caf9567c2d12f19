#include "bmz/fock.hpp"

#include <bit>
#include <sstream>

namespace bmz {

namespace {

int sign_below(size_t mask, int mode) {
    const size_t below = mask & ((size_t{1} << mode) - 1);
    return (std::popcount(below) & 1) ? -1 : 1;
}

void check_mode(const FockVector& v, int mode) {
    if (mode < 0 || mode >= v.n_modes())
        throw DimensionError("fock: mode index out of range");
}

}  // namespace

FockVector::FockVector(int n_modes) : n_modes_(n_modes) {
    if (n_modes < 0 || n_modes > kMaxFockModes) {
        std::ostringstream os;
        os << "FockVector: n_modes = " << n_modes << " outside [0, "
           << kMaxFockModes << "]";
        throw DimensionError(os.str());
    }
    amplitudes_.assign(size_t{1} << n_modes, Complex(0.0));
}

FockVector apply_creation(const FockVector& v, int mode) {
    check_mode(v, mode);
    FockVector out(v.n_modes());
    const size_t bit = size_t{1} << mode;
    for (size_t mask = 0; mask < v.size(); ++mask) {
        if (v[mask] == Complex(0.0) || (mask & bit)) continue;
        out[mask | bit] += static_cast<double>(sign_below(mask, mode)) * v[mask];
    }
    return out;
}

FockVector apply_annihilation(const FockVector& v, int mode) {
    check_mode(v, mode);
    FockVector out(v.n_modes());
    const size_t bit = size_t{1} << mode;
    for (size_t mask = 0; mask < v.size(); ++mask) {
        if (v[mask] == Complex(0.0) || !(mask & bit)) continue;
        out[mask & ~bit] += static_cast<double>(sign_below(mask & ~bit, mode)) * v[mask];
    }
    return out;
}

FockVector expand_condensate(const AntisymmetricMatrix& c) {
    const int n = c.dim();
    if (n > kMaxFockModes)
        throw DimensionError("expand_condensate: dimension cap exceeded");
    FockVector state(n);
    state[0] = 1.0;

    // P = 1/2 sum_mn C*_mn a+_m a+_n applied repeatedly; division by k! is
    // exact small-integer arithmetic.
    FockVector term = state;
    long factorial = 1;
    for (int k = 1; k <= n / 2; ++k) {
        FockVector next(n);
        for (size_t mask = 0; mask < term.size(); ++mask) {
            if (term[mask] == Complex(0.0)) continue;
            for (int mm = 0; mm < n; ++mm) {
                const size_t bit_m = size_t{1} << mm;
                for (int nn = mm + 1; nn < n; ++nn) {
                    const size_t bit_n = size_t{1} << nn;
                    const Complex coeff = std::conj(c.mat()(mm, nn));
                    if (coeff == Complex(0.0)) continue;
                    if (mask & bit_n) continue;
                    const size_t with_n = mask | bit_n;
                    if (with_n & bit_m) continue;
                    // a+_m a+_n acting on |mask>; factor 2 from the (n, m)
                    // term cancels the 1/2 prefactor.
                    const double sgn = sign_below(mask, nn) * sign_below(with_n, mm);
                    next[with_n | bit_m] += coeff * sgn * term[mask];
                }
            }
        }
        factorial *= k;
        term = next;
        for (size_t mask = 0; mask < state.size(); ++mask)
            state[mask] += term[mask] / static_cast<double>(factorial);
        // The k-th power term feeds the next iteration unscaled.
    }
    return state;
}

Complex fock_overlap(const FockVector& bra, const FockVector& ket) {
    if (bra.n_modes() != ket.n_modes())
        throw DimensionError("fock_overlap: mode counts differ");
    Complex acc = 0.0;
    for (size_t mask = 0; mask < bra.size(); ++mask)
        acc += std::conj(bra[mask]) * ket[mask];
    return acc;
}

Complex fock_one_body(const FockVector& bra, const FockVector& ket, int n, int m) {
    check_mode(ket, n);
    check_mode(ket, m);
    return fock_overlap(bra, apply_creation(apply_annihilation(ket, m), n));
}

}  // namespace bmz
