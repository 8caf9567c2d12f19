// Python bindings for the condensate canonical-form library.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bmz/bcs.hpp"
#include "bmz/canonical.hpp"
#include "bmz/gcm.hpp"
#include "bmz/jordan.hpp"

namespace py = pybind11;

namespace {

bmz::Tolerances make_tols(double cluster_tol, double rank_tol, double residual_tol) {
    bmz::Tolerances t;
    t.cluster_tol = cluster_tol;
    t.rank_tol = rank_tol;
    t.residual_tol = residual_tol;
    return t;
}

}  // namespace

PYBIND11_MODULE(_bmz, m) {
    m.doc() = "Simultaneous canonical forms of antisymmetric matrix pairs";

    py::register_exception<bmz::Error>(m, "BmzError");

    py::class_<bmz::JordanBlock>(m, "JordanBlock")
        .def_readonly("id", &bmz::JordanBlock::id)
        .def_readonly("eigenvalue", &bmz::JordanBlock::eigenvalue)
        .def_readonly("length", &bmz::JordanBlock::length)
        .def_readonly("start_column", &bmz::JordanBlock::start_column);

    py::class_<bmz::JordanDecomposition>(m, "JordanDecomposition")
        .def_readonly("basis", &bmz::JordanDecomposition::basis)
        .def_readonly("blocks", &bmz::JordanDecomposition::blocks)
        .def_readonly("residual", &bmz::JordanDecomposition::residual)
        .def("block_diagonal", &bmz::JordanDecomposition::block_diagonal);

    py::enum_<bmz::Convention>(m, "Convention")
        .value("BETA_EQ_D", bmz::Convention::BetaEqD)
        .value("SQRT_D", bmz::Convention::SqrtD);

    py::class_<bmz::CanonicalPairBlock>(m, "CanonicalPairBlock")
        .def_readonly("block_i", &bmz::CanonicalPairBlock::block_i)
        .def_readonly("block_j", &bmz::CanonicalPairBlock::block_j)
        .def_readonly("eigenvalue", &bmz::CanonicalPairBlock::eigenvalue)
        .def_readonly("length", &bmz::CanonicalPairBlock::length)
        .def_readonly("phase", &bmz::CanonicalPairBlock::phase)
        .def_readonly("c_block", &bmz::CanonicalPairBlock::c_block)
        .def_readonly("cp_block", &bmz::CanonicalPairBlock::cp_block)
        .def_readonly("beta", &bmz::CanonicalPairBlock::beta)
        .def_readonly("beta_prime", &bmz::CanonicalPairBlock::beta_prime);

    py::class_<bmz::PairedCanonicalForm>(m, "PairedCanonicalForm")
        .def_readonly("basis", &bmz::PairedCanonicalForm::basis)
        .def_readonly("blocks", &bmz::PairedCanonicalForm::blocks)
        .def_readonly("pair_data", &bmz::PairedCanonicalForm::pair_data)
        .def_readonly("residual_c", &bmz::PairedCanonicalForm::residual_c)
        .def_readonly("residual_cp", &bmz::PairedCanonicalForm::residual_cp)
        .def_readonly("condition_estimate", &bmz::PairedCanonicalForm::condition_estimate)
        .def_readonly("ill_conditioned", &bmz::PairedCanonicalForm::ill_conditioned)
        .def_property_readonly("null_sector", [](const bmz::PairedCanonicalForm& f) {
            return f.pairing.null_sector;
        })
        .def_property_readonly("pairs", [](const bmz::PairedCanonicalForm& f) {
            return f.pairing.pairs;
        });

    py::class_<bmz::ClassicCanonicalForm>(m, "ClassicCanonicalForm")
        .def_readonly("u", &bmz::ClassicCanonicalForm::u)
        .def_readonly("c_values", &bmz::ClassicCanonicalForm::c_values)
        .def_readonly("phases", &bmz::ClassicCanonicalForm::phases)
        .def_readonly("partner", &bmz::ClassicCanonicalForm::partner);

    py::class_<bmz::PairFactor>(m, "PairFactor")
        .def_readonly("eigenvalue", &bmz::PairFactor::eigenvalue)
        .def_readonly("length", &bmz::PairFactor::length)
        .def_readonly("factor", &bmz::PairFactor::factor);

    py::class_<bmz::OverlapResult>(m, "OverlapResult")
        .def_readonly("value", &bmz::OverlapResult::value)
        .def_readonly("per_pair_factors", &bmz::OverlapResult::per_pair_factors)
        .def_readonly("null_sector_dimension", &bmz::OverlapResult::null_sector_dimension)
        .def_readonly("ill_conditioned", &bmz::OverlapResult::ill_conditioned)
        .def_readonly("orthogonal", &bmz::OverlapResult::orthogonal)
        .def_readonly("det_check", &bmz::OverlapResult::det_check)
        .def_readonly("det_rel_discrepancy", &bmz::OverlapResult::det_rel_discrepancy);

    m.def(
        "jordan_decompose",
        [](const bmz::ComplexMatrix& mat, double cluster_tol, double rank_tol) {
            return bmz::jordan_decompose(mat, cluster_tol, rank_tol);
        },
        py::arg("m"), py::arg("cluster_tol") = bmz::kDefaultClusterTol,
        py::arg("rank_tol") = bmz::linalg::kDefaultRankTol);

    m.def(
        "canonical_pair_form",
        [](const bmz::ComplexMatrix& c, const bmz::ComplexMatrix& cp,
           bmz::Convention convention, double cluster_tol, double rank_tol,
           double residual_tol) {
            return bmz::canonical_pair_form(
                bmz::AntisymmetricMatrix(c), bmz::AntisymmetricMatrix(cp), convention,
                make_tols(cluster_tol, rank_tol, residual_tol));
        },
        py::arg("c"), py::arg("cp"),
        py::arg("convention") = bmz::Convention::BetaEqD,
        py::arg("cluster_tol") = bmz::kDefaultClusterTol,
        py::arg("rank_tol") = bmz::linalg::kDefaultRankTol,
        py::arg("residual_tol") = 1e-8);

    m.def(
        "classic_bloch_messiah",
        [](const bmz::ComplexMatrix& c, double tol) {
            return bmz::classic_bloch_messiah(bmz::AntisymmetricMatrix(c), tol);
        },
        py::arg("c"), py::arg("tol") = 1e-10);

    m.def(
        "overlap",
        [](const bmz::ComplexMatrix& c, const bmz::ComplexMatrix& cp,
           double cluster_tol, double rank_tol, double residual_tol) {
            return bmz::overlap(bmz::AntisymmetricMatrix(c), bmz::AntisymmetricMatrix(cp),
                                make_tols(cluster_tol, rank_tol, residual_tol));
        },
        py::arg("c"), py::arg("cp"),
        py::arg("cluster_tol") = bmz::kDefaultClusterTol,
        py::arg("rank_tol") = bmz::linalg::kDefaultRankTol,
        py::arg("residual_tol") = 1e-8);

    m.def(
        "transition_density",
        [](const bmz::ComplexMatrix& c, const bmz::ComplexMatrix& cp,
           double cluster_tol, double rank_tol, double residual_tol) {
            return bmz::transition_density(bmz::AntisymmetricMatrix(c),
                                           bmz::AntisymmetricMatrix(cp),
                                           make_tols(cluster_tol, rank_tol, residual_tol));
        },
        py::arg("c"), py::arg("cp"),
        py::arg("cluster_tol") = bmz::kDefaultClusterTol,
        py::arg("rank_tol") = bmz::linalg::kDefaultRankTol,
        py::arg("residual_tol") = 1e-8);

    m.def(
        "build_bcs_matrix",
        [](const std::vector<double>& amplitudes,
           const std::vector<bmz::Complex>& phases, bool relaxed_signs) {
            bmz::BcsSpec spec;
            spec.relaxed_signs = relaxed_signs;
            for (size_t i = 0; i < amplitudes.size(); ++i) {
                bmz::BcsSpec::Pair p;
                p.c = amplitudes[i];
                if (i < phases.size()) p.s = phases[i];
                spec.pairs.push_back(p);
            }
            return bmz::build_bcs_matrix(spec).mat();
        },
        py::arg("amplitudes"), py::arg("phases") = std::vector<bmz::Complex>{},
        py::arg("relaxed_signs") = false);

    m.def("uv_amplitudes", &bmz::uv_amplitudes, py::arg("c"));

    m.def(
        "example_pair",
        [](bmz::Complex a) {
            const auto [c, cp] = bmz::example_pair(a);
            return std::make_pair(c.mat(), cp.mat());
        },
        py::arg("a"));
}
