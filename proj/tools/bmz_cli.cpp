// Command-line front end: load condensate matrices, run the canonical
// machinery, and emit machine-readable reports.
//
// Exit codes: 0 success, 2 theorem/pairing failure, 3 input error,
// 4 orthogonal states.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bmz/bcs.hpp"
#include "bmz/canonical.hpp"
#include "bmz/gcm.hpp"
#include "bmz/io.hpp"
#include "bmz/jordan.hpp"

using nlohmann::json;

namespace {

constexpr int kExitPairing = 2;
constexpr int kExitInput = 3;
constexpr int kExitOrthogonal = 4;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt(const bmz::Complex& z) {
    return "(" + fmt(z.real()) + ", " + fmt(z.imag()) + ")";
}

json cplx(const bmz::Complex& z) { return json::array({z.real(), z.imag()}); }

struct CommonOpts {
    bmz::Tolerances tols;
    bool as_json = false;
};

void add_tolerance_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--cluster-tol", opts.tols.cluster_tol,
                    "Eigenvalue clustering tolerance");
    cmd->add_option("--rank-tol", opts.tols.rank_tol, "Rank-decision tolerance");
    cmd->add_option("--residual-tol", opts.tols.residual_tol,
                    "Residual acceptance tolerance");
    cmd->add_flag("--json", opts.as_json, "Emit the report as JSON");
}

bmz::AntisymmetricMatrix load_antisymmetric(const std::string& path) {
    const auto mf = bmz::io::read_matrix_file(path);
    return bmz::AntisymmetricMatrix(mf.matrix);
}

json tolerances_json(const bmz::Tolerances& t) {
    return {{"cluster_tol", t.cluster_tol},
            {"rank_tol", t.rank_tol},
            {"residual_tol", t.residual_tol}};
}

json input_json(const std::string& c_path, const std::string& cp_path) {
    char ca[32], cb[32];
    std::snprintf(ca, sizeof(ca), "%016llx",
                  static_cast<unsigned long long>(bmz::io::file_digest(c_path)));
    std::snprintf(cb, sizeof(cb), "%016llx",
                  static_cast<unsigned long long>(bmz::io::file_digest(cp_path)));
    return {{"c", {{"path", c_path}, {"digest", ca}}},
            {"cp", {{"path", cp_path}, {"digest", cb}}}};
}

void print_report(const json& rep, bool as_json) {
    if (as_json) {
        std::cout << rep.dump(2) << "\n";
        return;
    }
    // Flat key: value lines, deterministic ordering (nlohmann sorts keys).
    std::function<void(const json&, const std::string&)> walk =
        [&](const json& node, const std::string& prefix) {
            if (node.is_object()) {
                for (auto it = node.begin(); it != node.end(); ++it)
                    walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
            } else if (node.is_array() &&
                       !node.empty() && (node[0].is_object() || node[0].is_array())) {
                int i = 0;
                for (const auto& el : node) walk(el, prefix + "[" + std::to_string(i++) + "]");
            } else if (node.is_number_float()) {
                std::cout << prefix << ": " << fmt(node.get<double>()) << "\n";
            } else {
                std::cout << prefix << ": " << node.dump() << "\n";
            }
        };
    walk(rep, "");
}

json block_table(const std::vector<bmz::JordanBlock>& blocks) {
    json out = json::array();
    for (const auto& b : blocks)
        out.push_back({{"id", b.id},
                       {"D", cplx(b.eigenvalue)},
                       {"L", b.length},
                       {"start_column", b.start_column}});
    return out;
}

bmz::Complex parse_complex_token(std::string tok) {
    // Accepts 1, -0.5, i, -i, 2i, and a+bi / a-bi.
    if (tok.empty()) throw bmz::ParseError("empty complex token");
    auto parse_imag = [](std::string s) -> double {
        if (s == "i" || s == "+i") return 1.0;
        if (s == "-i") return -1.0;
        s.pop_back();  // trailing 'i'
        return std::stod(s);
    };
    try {
        if (tok.back() == 'i') {
            // Split at the last +/- that is not an exponent sign or leading.
            for (size_t p = tok.size() - 1; p > 0; --p) {
                if ((tok[p] == '+' || tok[p] == '-') &&
                    tok[p - 1] != 'e' && tok[p - 1] != 'E') {
                    return {std::stod(tok.substr(0, p)), parse_imag(tok.substr(p))};
                }
            }
            return {0.0, parse_imag(tok)};
        }
        return {std::stod(tok), 0.0};
    } catch (const std::exception&) {
        throw bmz::ParseError("bad complex token: " + tok);
    }
}

bmz::ComplexMatrix random_unitary(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    bmz::ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = bmz::Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<bmz::ComplexMatrix> qr(g);
    bmz::ComplexMatrix q = qr.householderQ();
    const bmz::ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const bmz::Complex d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

json pairs_json(const bmz::PairedCanonicalForm& form) {
    json pairs = json::array();
    for (const auto& pd : form.pair_data) {
        json beta = json::array(), beta_prime = json::array();
        for (const auto& z : pd.beta) beta.push_back(cplx(z));
        for (const auto& z : pd.beta_prime) beta_prime.push_back(cplx(z));
        pairs.push_back({{"blocks", {pd.block_i, pd.block_j}},
                         {"D", cplx(pd.eigenvalue)},
                         {"L", pd.length},
                         {"s", cplx(pd.phase)},
                         {"beta", beta},
                         {"beta_prime", beta_prime}});
    }
    return pairs;
}

int run(int argc, char** argv) {
    CLI::App app{"Simultaneous canonical forms of antisymmetric matrix pairs and "
                 "fermion-pair condensate kernels"};
    app.require_subcommand(1);

    // canonize
    auto* canonize = app.add_subcommand(
        "canonize", "Bring C and C' simultaneously to canonical form");
    std::string c_path, cp_path, save_form, out_path, form_path, out_dir;
    std::string convention_name = "beta-eq-d";
    CommonOpts canonize_opts;
    canonize->add_option("c", c_path, "Matrix file for C")->required();
    canonize->add_option("cp", cp_path, "Matrix file for C'")->required();
    canonize->add_option("--convention", convention_name,
                         "beta-eq-d or sqrt-d")
        ->check(CLI::IsMember({"beta-eq-d", "sqrt-d"}));
    canonize->add_option("--save-form", save_form,
                         "Write the basis W and block data to this file");
    add_tolerance_flags(canonize, canonize_opts);

    // overlap
    auto* overlap_cmd =
        app.add_subcommand("overlap", "Phase-resolved overlap <C'|C>");
    CommonOpts overlap_opts;
    overlap_cmd->add_option("c", c_path, "Matrix file for C")->required();
    overlap_cmd->add_option("cp", cp_path, "Matrix file for C'")->required();
    add_tolerance_flags(overlap_cmd, overlap_opts);

    // density
    auto* density_cmd =
        app.add_subcommand("density", "Transition density matrix");
    CommonOpts density_opts;
    density_cmd->add_option("c", c_path, "Matrix file for C")->required();
    density_cmd->add_option("cp", cp_path, "Matrix file for C'")->required();
    density_cmd->add_option("out", out_path, "Output matrix file for rho")->required();
    add_tolerance_flags(density_cmd, density_opts);

    // jordan
    auto* jordan_cmd = app.add_subcommand(
        "jordan", "Jordan decomposition report for C+C'");
    CommonOpts jordan_opts;
    jordan_cmd->add_option("c", c_path, "Matrix file for C")->required();
    jordan_cmd->add_option("cp", cp_path, "Matrix file for C'")->required();
    add_tolerance_flags(jordan_cmd, jordan_opts);

    // example
    auto* example_cmd = app.add_subcommand(
        "example", "Write the 4x4 defective example pair to a directory");
    double a_real = 0.5, a_imag = 0.0;
    example_cmd->add_option("--a-real", a_real, "Re a");
    example_cmd->add_option("--a-imag", a_imag, "Im a");
    example_cmd->add_option("out_dir", out_dir, "Output directory")->required();

    // gen-bcs
    auto* gen_cmd = app.add_subcommand(
        "gen-bcs", "Write a BCS-form condensate matrix file");
    std::vector<double> amplitudes;
    std::vector<std::string> phase_tokens;
    std::uint64_t seed = 0;
    bool relaxed = false;
    std::string spec_file;
    gen_cmd->add_option("--amplitudes", amplitudes,
                        "Pair amplitudes c_m (one per canonical pair)");
    gen_cmd->add_option("--phases", phase_tokens,
                        "Pair phases s_m (default i), e.g. i -1 0.6+0.8i");
    gen_cmd->add_option("--spec-file", spec_file,
                        "JSON file with {\"amplitudes\": [...], \"phases\": [...]}");
    gen_cmd->add_option("--seed", seed,
                        "Nonzero: rotate by the seeded random unitary");
    gen_cmd->add_flag("--relaxed-signs", relaxed, "Allow negative amplitudes");
    gen_cmd->add_option("out", out_path, "Output matrix file")->required();

    // verify
    auto* verify_cmd = app.add_subcommand(
        "verify", "Re-check a saved canonical form against C and C'");
    CommonOpts verify_opts;
    verify_cmd->add_option("c", c_path, "Matrix file for C")->required();
    verify_cmd->add_option("cp", cp_path, "Matrix file for C'")->required();
    verify_cmd->add_option("form", form_path, "Saved canonical form")->required();
    add_tolerance_flags(verify_cmd, verify_opts);

    CLI11_PARSE(app, argc, argv);

    if (canonize->parsed()) {
        const auto& opts = canonize_opts;
        const auto c = load_antisymmetric(c_path);
        const auto cp = load_antisymmetric(cp_path);
        const auto convention = convention_name == "sqrt-d"
                                    ? bmz::Convention::SqrtD
                                    : bmz::Convention::BetaEqD;
        const auto form = bmz::canonical_pair_form(c, cp, convention, opts.tols);
        const auto check = bmz::verify_canonical(c, cp, form);
        if (!save_form.empty()) bmz::io::write_canonical_form(save_form, form);
        json rep{{"command", "canonize"},
                 {"inputs", input_json(c_path, cp_path)},
                 {"tolerances", tolerances_json(opts.tols)},
                 {"convention", convention_name},
                 {"blocks", block_table(form.blocks)},
                 {"pairs", pairs_json(form)},
                 {"null_sector", form.pairing.null_sector},
                 {"residual_c", form.residual_c},
                 {"residual_cp", form.residual_cp},
                 {"beta_constraint_dev", check.max_beta_constraint_dev},
                 {"condition_estimate", form.condition_estimate},
                 {"ill_conditioned", form.ill_conditioned}};
        print_report(rep, opts.as_json);
        return 0;
    }

    if (overlap_cmd->parsed()) {
        const auto& opts = overlap_opts;
        const auto c = load_antisymmetric(c_path);
        const auto cp = load_antisymmetric(cp_path);
        const auto result = bmz::overlap(c, cp, opts.tols);
        json factors = json::array();
        for (const auto& pf : result.per_pair_factors)
            factors.push_back(
                {{"D", cplx(pf.eigenvalue)}, {"L", pf.length}, {"factor", cplx(pf.factor)}});
        json rep{{"command", "overlap"},
                 {"inputs", input_json(c_path, cp_path)},
                 {"tolerances", tolerances_json(opts.tols)},
                 {"overlap", cplx(result.value)},
                 {"per_pair_factors", factors},
                 {"null_sector_dim", result.null_sector_dimension},
                 {"det_check", cplx(result.det_check)},
                 {"det_rel_discrepancy", result.det_rel_discrepancy},
                 {"orthogonal", result.orthogonal},
                 {"ill_conditioned", result.ill_conditioned}};
        print_report(rep, opts.as_json);
        return 0;
    }

    if (density_cmd->parsed()) {
        const auto& opts = density_opts;
        const auto c = load_antisymmetric(c_path);
        const auto cp = load_antisymmetric(cp_path);
        const auto rho = bmz::transition_density(c, cp, opts.tols);
        bmz::io::write_matrix_file(out_path, rho,
                                   json{{"generator", "density"}}.dump());
        json rep{{"command", "density"},
                 {"inputs", input_json(c_path, cp_path)},
                 {"tolerances", tolerances_json(opts.tols)},
                 {"out", out_path},
                 {"trace", cplx(rho.trace())}};
        print_report(rep, opts.as_json);
        return 0;
    }

    if (jordan_cmd->parsed()) {
        const auto& opts = jordan_opts;
        const auto c = load_antisymmetric(c_path);
        const auto cp = load_antisymmetric(cp_path);
        const auto decomp = bmz::jordan_decompose(c.adjoint() * cp.mat(),
                                                  opts.tols.cluster_tol,
                                                  opts.tols.rank_tol);
        json rep{{"command", "jordan"},
                 {"inputs", input_json(c_path, cp_path)},
                 {"tolerances", tolerances_json(opts.tols)},
                 {"blocks", block_table(decomp.blocks)},
                 {"residual", decomp.residual},
                 {"condition_estimate", bmz::linalg::condition_estimate(decomp.basis)}};
        print_report(rep, opts.as_json);
        return 0;
    }

    if (example_cmd->parsed()) {
        std::filesystem::create_directories(out_dir);
        const auto [c, cp] = bmz::example_pair({a_real, a_imag});
        const json meta{{"generator", "example"}, {"a", {a_real, a_imag}}};
        bmz::io::write_matrix_file(out_dir + "/c.json", c.mat(), meta.dump());
        bmz::io::write_matrix_file(out_dir + "/cp.json", cp.mat(), meta.dump());
        std::cout << "wrote " << out_dir << "/c.json and " << out_dir
                  << "/cp.json for a = " << fmt(bmz::Complex(a_real, a_imag)) << "\n";
        return 0;
    }

    if (gen_cmd->parsed()) {
        bmz::BcsSpec spec;
        spec.relaxed_signs = relaxed;
        if (!spec_file.empty()) {
            std::ifstream in(spec_file);
            if (!in) throw bmz::ParseError("cannot open spec file: " + spec_file);
            json j;
            in >> j;
            for (const auto& a : j.at("amplitudes")) amplitudes.push_back(a.get<double>());
            if (j.contains("phases"))
                for (const auto& p : j.at("phases")) phase_tokens.push_back(p.get<std::string>());
        }
        for (size_t i = 0; i < amplitudes.size(); ++i) {
            bmz::BcsSpec::Pair p;
            p.c = amplitudes[i];
            if (i < phase_tokens.size()) p.s = parse_complex_token(phase_tokens[i]);
            spec.pairs.push_back(p);
        }
        const int n = 2 * static_cast<int>(spec.pairs.size());
        json meta{{"generator", "gen-bcs"},
                  {"amplitudes", amplitudes},
                  {"phases", json::array()},
                  {"seed", seed}};
        for (const auto& p : spec.pairs) meta["phases"].push_back(cplx(p.s));
        if (seed != 0 && n > 0) {
            const auto u = random_unitary(n, seed);
            const auto c = bmz::build_bcs_matrix(spec, &u);
            bmz::io::write_matrix_file(out_path, c.mat(), meta.dump());
        } else {
            const auto c = bmz::build_bcs_matrix(spec);
            bmz::io::write_matrix_file(out_path, c.mat(), meta.dump());
        }
        std::cout << "wrote " << out_path << "\n";
        return 0;
    }

    if (verify_cmd->parsed()) {
        const auto& opts = verify_opts;
        const auto c = load_antisymmetric(c_path);
        const auto cp = load_antisymmetric(cp_path);
        const auto form = bmz::io::read_canonical_form(form_path);
        const auto check = bmz::verify_canonical(c, cp, form);
        const bool ok = check.residual_c <= opts.tols.residual_tol &&
                        check.residual_cp <= opts.tols.residual_tol &&
                        check.max_beta_constraint_dev <= opts.tols.residual_tol &&
                        check.convention_ok;
        json rep{{"command", "verify"},
                 {"inputs", input_json(c_path, cp_path)},
                 {"form", form_path},
                 {"tolerances", tolerances_json(opts.tols)},
                 {"residual_c", check.residual_c},
                 {"residual_cp", check.residual_cp},
                 {"beta_constraint_dev", check.max_beta_constraint_dev},
                 {"phase_dev", check.max_phase_dev},
                 {"symmetry_dev", check.max_symmetry_dev},
                 {"convention_ok", check.convention_ok},
                 {"verified", ok}};
        print_report(rep, opts.as_json);
        return ok ? 0 : kExitPairing;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const bmz::OrthogonalStatesError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOrthogonal;
    } catch (const bmz::TheoremViolationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPairing;
    } catch (const bmz::DegeneracyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPairing;
    } catch (const bmz::BranchCutError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPairing;
    } catch (const bmz::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPairing;
    } catch (const bmz::SingularMatrixError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPairing;
    } catch (const bmz::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const bmz::DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
