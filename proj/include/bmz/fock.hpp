#pragma once

#include <vector>

#include "bmz/linalg.hpp"

namespace bmz {

inline constexpr int kMaxFockModes = 12;

/// Dense amplitude vector over the 2^N fermionic occupation states; bit m of
/// the index set means mode m occupied. Exists as an exact desk-scale oracle.
class FockVector {
  public:
    explicit FockVector(int n_modes);

    int n_modes() const { return n_modes_; }
    size_t size() const { return amplitudes_.size(); }
    Complex& operator[](size_t mask) { return amplitudes_[mask]; }
    const Complex& operator[](size_t mask) const { return amplitudes_[mask]; }

  private:
    int n_modes_;
    std::vector<Complex> amplitudes_;
};

/// a+_mode acting on v, with the (-1)^(occupied modes below) sign rule.
FockVector apply_creation(const FockVector& v, int mode);

/// Adjoint of apply_creation, with the identical below-mode sign count.
FockVector apply_annihilation(const FockVector& v, int mode);

/// Expansion of exp(1/2 sum C*_mn a+_m a+_n)|0>; the series terminates at
/// N/2 pairs.
FockVector expand_condensate(const AntisymmetricMatrix& c);

Complex fock_overlap(const FockVector& bra, const FockVector& ket);

/// Exact matrix element <bra| a+_n a_m |ket>.
Complex fock_one_body(const FockVector& bra, const FockVector& ket, int n, int m);

}  // namespace bmz
