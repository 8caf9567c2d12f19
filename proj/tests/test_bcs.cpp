#include <doctest.h>

#include <algorithm>
#include <random>

#include "bmz/bcs.hpp"
#include "bmz/canonical.hpp"

using namespace bmz;
using linalg::max_abs;

namespace {

std::mt19937_64 rng(20240822);

ComplexMatrix random_unitary(int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    const Eigen::HouseholderQR<ComplexMatrix> qr(g);
    return qr.householderQ();
}

}  // namespace

TEST_CASE("BCS matrix construction") {
    BcsSpec spec;
    spec.pairs.push_back({0.6, Complex(0, 1)});
    spec.pairs.push_back({0.3, Complex(0, 1)});
    const auto c = build_bcs_matrix(spec);
    REQUIRE(c.dim() == 4);
    // Pair p couples modes (p, p + 2) with entry s*_p c_p at (p+2, p).
    CHECK(std::abs(c.mat()(2, 0) - Complex(0, -1) * 0.6) < 1e-15);
    CHECK(std::abs(c.mat()(3, 1) - Complex(0, -1) * 0.3) < 1e-15);
    CHECK(std::abs(c.mat()(0, 2) + c.mat()(2, 0)) == 0.0);
    CHECK(std::abs(c.mat()(1, 0)) == 0.0);

    const auto empty = build_bcs_matrix(BcsSpec{});
    CHECK(empty.dim() == 0);

    BcsSpec bad = spec;
    bad.pairs[0].c = -0.1;
    CHECK_THROWS_AS(build_bcs_matrix(bad), Error);
    bad.relaxed_signs = true;
    CHECK_NOTHROW(build_bcs_matrix(bad));
}

TEST_CASE("rotated BCS matrix round-trips through the classic form") {
    BcsSpec spec;
    spec.pairs.push_back({0.8, Complex(0, 1)});
    spec.pairs.push_back({0.45, Complex(1, 0)});
    spec.pairs.push_back({0.2, Complex(0, -1)});
    const ComplexMatrix u = random_unitary(6);
    const auto c = build_bcs_matrix(spec, &u);
    const auto form = classic_bloch_messiah(c);
    std::vector<double> values = form.c_values;
    std::sort(values.begin(), values.end());
    const std::vector<double> expected{0.2, 0.2, 0.45, 0.45, 0.8, 0.8};
    REQUIRE(values.size() == expected.size());
    for (size_t i = 0; i < values.size(); ++i)
        CHECK(values[i] == doctest::Approx(expected[i]).epsilon(1e-10));

    ComplexMatrix not_unitary = u;
    not_unitary(0, 0) += 0.5;
    CHECK_THROWS_AS(build_bcs_matrix(spec, &not_unitary), Error);
}

TEST_CASE("uv amplitudes") {
    auto [u0, v0] = uv_amplitudes(0.0);
    CHECK(u0 == 1.0);
    CHECK(v0 == 0.0);

    auto [u1, v1] = uv_amplitudes(1.0);
    CHECK(u1 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(v1 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    auto [u3, v3] = uv_amplitudes(3.0);
    CHECK(u3 == doctest::Approx(0.31622776601683794).epsilon(1e-15));
    CHECK(v3 == doctest::Approx(0.9486832980505138).epsilon(1e-15));

    std::uniform_real_distribution<double> dist(0.0, 1e6);
    for (int trial = 0; trial < 50; ++trial) {
        auto [u, v] = uv_amplitudes(dist(rng));
        CHECK(std::abs(u * u + v * v - 1.0) < 1e-15);
    }
}

TEST_CASE("time reversal matrix") {
    const auto t = time_reversal_matrix(1);
    ComplexMatrix expected(2, 2);
    expected << 0, 1, -1, 0;
    CHECK(max_abs(t.u_t - expected) == 0.0);

    const auto t3 = time_reversal_matrix(3);
    CHECK(max_abs(t3.u_t.adjoint() * t3.u_t - ComplexMatrix::Identity(6, 6)) == 0.0);
    CHECK(max_abs(t3.u_t.adjoint() + t3.u_t.conjugate()) == 0.0);
    CHECK(max_abs(t3.u_t + t3.u_t.transpose().eval()) == 0.0);
}

TEST_CASE("time-even checks") {
    const auto t = time_reversal_matrix(2);

    const auto [c, cp] = example_pair(Complex(0.5, 0.0));
    CHECK(is_time_even(c, t).time_even);
    CHECK(is_time_even(cp, t).time_even);

    // Breaking the A / A^T block relation breaks time evenness.
    ComplexMatrix m = c.mat();
    m(0, 2) += Complex(0.1, 0.2);
    m(2, 0) -= Complex(0.1, 0.2);
    const auto broken = is_time_even(AntisymmetricMatrix(m), t);
    CHECK_FALSE(broken.time_even);
    CHECK(broken.deviation > 0.05);

    const AntisymmetricMatrix zero(ComplexMatrix::Zero(4, 4));
    const auto z = is_time_even(zero, t);
    CHECK(z.time_even);
    CHECK(z.deviation == 0.0);
}

TEST_CASE("tilde matrix and positive definiteness") {
    const auto t = time_reversal_matrix(2);

    SUBCASE("defective example is hermitian but not positive definite") {
        const auto [c, cp] = example_pair(Complex(0.5, 0.0));
        const auto r = c_tilde(c, t);
        CHECK(r.hermiticity_deviation < 1e-14);
        CHECK_FALSE(r.positive_definite);
        // Block structure: diag(A^T, A) with A = [[1, 0.5], [0.5, 0]].
        CHECK(std::abs(r.c_tilde(0, 0) - Complex(1)) < 1e-14);
        CHECK(std::abs(r.c_tilde(0, 1) - Complex(0.5)) < 1e-14);
        CHECK(std::abs(r.c_tilde(1, 1)) < 1e-14);
        CHECK(std::abs(r.c_tilde(0, 2)) < 1e-14);
        const auto rp = c_tilde(cp, t);
        CHECK_FALSE(rp.positive_definite);
    }
    SUBCASE("BCS with positive amplitudes is positive definite") {
        // Phase -1 aligns the pair structure with the time-reversal basis,
        // making C-tilde the diagonal of the positive amplitudes.
        BcsSpec spec;
        spec.pairs.push_back({0.7, Complex(-1, 0)});
        spec.pairs.push_back({0.2, Complex(-1, 0)});
        const auto r = c_tilde(build_bcs_matrix(spec), t);
        CHECK(r.hermiticity_deviation < 1e-14);
        CHECK(r.positive_definite);
    }
    SUBCASE("zero matrix") {
        const auto r = c_tilde(AntisymmetricMatrix(ComplexMatrix::Zero(4, 4)), t);
        CHECK(r.hermiticity_deviation == 0.0);
        CHECK_FALSE(r.positive_definite);
    }
}

TEST_CASE("example pair structure") {
    SUBCASE("real a is defective") {
        const auto [c, cp] = example_pair(Complex(0.5, 0.0));
        const auto decomp = jordan_decompose(c.adjoint() * cp.mat());
        int max_len = 0;
        for (const auto& b : decomp.blocks) {
            max_len = std::max(max_len, b.length);
            CHECK(std::abs(b.eigenvalue - Complex(0.5)) < 1e-7);
        }
        CHECK(max_len == 2);
    }
    SUBCASE("complex a is diagonalizable but never positive definite") {
        const Complex a(0.5, 0.1);
        const auto [c, cp] = example_pair(a);
        const auto decomp = jordan_decompose(c.adjoint() * cp.mat());
        for (const auto& b : decomp.blocks) CHECK(b.length == 1);
        const auto t = time_reversal_matrix(2);
        CHECK_FALSE(c_tilde(c, t).positive_definite);
        CHECK_FALSE(c_tilde(cp, t).positive_definite);
    }
    SUBCASE("product block structure") {
        const Complex a(0.3, -0.6);
        const auto [c, cp] = example_pair(a);
        const ComplexMatrix m = c.adjoint() * cp.mat();
        // Upper-left block is (A A')^* = [[a, 1], [0, a^*]]^* per construction.
        CHECK(std::abs(m(0, 0) - std::conj(a)) < 1e-14);
        CHECK(std::abs(m(0, 1) - Complex(1)) < 1e-14);
        CHECK(std::abs(m(1, 0)) < 1e-14);
        CHECK(std::abs(m(1, 1) - a) < 1e-14);
        CHECK(max_abs(m.block(0, 2, 2, 2)) < 1e-14);
        CHECK(max_abs(m.block(2, 0, 2, 2)) < 1e-14);
    }
}

TEST_CASE("positive-definite tilde matrices imply diagonalizability") {
    // Random time-even pairs C = [[0, A], [-A^T, 0]] with A hermitian
    // positive definite; the corresponding C-tilde is positive definite and
    // the product C+C' must be semisimple.
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto t = time_reversal_matrix(3);
    for (int trial = 0; trial < 40; ++trial) {
        auto random_pd_block = [&]() {
            ComplexMatrix g(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) g(i, j) = Complex(u(rng), u(rng));
            return ComplexMatrix(g * g.adjoint() + 0.3 * ComplexMatrix::Identity(3, 3));
        };
        const auto c = time_even_from_block(random_pd_block());
        const auto cp = time_even_from_block(random_pd_block());
        REQUIRE(is_time_even(c, t).time_even);
        REQUIRE(c_tilde(c, t).positive_definite);
        const auto decomp = jordan_decompose(c.adjoint() * cp.mat());
        for (const auto& b : decomp.blocks) CHECK(b.length == 1);
    }
}
