#include "bmz/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bmz::io {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("expected a [real, imaginary] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            entries.push_back(complex_to_json(m(i, j)));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const json& j) {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const json& entries = j.at("entries");
    if (rows < 0 || cols < 0 || static_cast<int>(entries.size()) != rows * cols)
        throw ParseError("matrix entry count does not match dimensions");
    ComplexMatrix m(rows, cols);
    int idx = 0;
    for (int i = 0; i < rows; ++i)
        for (int jj = 0; jj < cols; ++jj) m(i, jj) = complex_from_json(entries[idx++]);
    return m;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError("malformed file " + path + ": " + e.what());
    }
    return j;
}

void dump_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace

MatrixFile read_matrix_file(const std::string& path) {
    const json j = load_json(path);
    MatrixFile out;
    try {
        out.dim = j.at("dim").get<int>();
        const json& entries = j.at("entries");
        if (out.dim < 0 || static_cast<int>(entries.size()) != out.dim * out.dim)
            throw ParseError("entries length must equal dim^2 in " + path);
        out.matrix.resize(out.dim, out.dim);
        int idx = 0;
        for (int i = 0; i < out.dim; ++i)
            for (int jj = 0; jj < out.dim; ++jj)
                out.matrix(i, jj) = complex_from_json(entries[idx++]);
        out.metadata_json = j.contains("metadata") ? j["metadata"].dump() : "{}";
    } catch (const json::exception& e) {
        throw ParseError("malformed matrix file " + path + ": " + e.what());
    }
    if (!linalg::all_finite(out.matrix))
        throw ParseError("non-finite entry in " + path);
    return out;
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m,
                       const std::string& metadata_json) {
    if (m.rows() != m.cols()) throw DimensionError("write_matrix_file: not square");
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            entries.push_back(complex_to_json(m(i, j)));
    json j{{"dim", m.rows()}, {"entries", entries}};
    if (metadata_json != "{}" && !metadata_json.empty())
        j["metadata"] = json::parse(metadata_json);
    dump_json(path, j);
}

void write_canonical_form(const std::string& path, const PairedCanonicalForm& form) {
    json blocks = json::array();
    for (const auto& b : form.blocks)
        blocks.push_back({{"id", b.id},
                          {"eigenvalue", complex_to_json(b.eigenvalue)},
                          {"length", b.length},
                          {"start_column", b.start_column}});
    json pairs = json::array();
    for (const auto& [a, b] : form.pairing.pairs) pairs.push_back({a, b});
    json pair_data = json::array();
    for (const auto& pd : form.pair_data) {
        json beta = json::array(), beta_prime = json::array();
        for (const auto& z : pd.beta) beta.push_back(complex_to_json(z));
        for (const auto& z : pd.beta_prime) beta_prime.push_back(complex_to_json(z));
        pair_data.push_back({{"block_i", pd.block_i},
                             {"block_j", pd.block_j},
                             {"eigenvalue", complex_to_json(pd.eigenvalue)},
                             {"length", pd.length},
                             {"phase", complex_to_json(pd.phase)},
                             {"c_block", matrix_to_json(pd.c_block)},
                             {"cp_block", matrix_to_json(pd.cp_block)},
                             {"beta", beta},
                             {"beta_prime", beta_prime}});
    }
    dump_json(path,
              json{{"basis", matrix_to_json(form.basis)},
                   {"blocks", blocks},
                   {"pairs", pairs},
                   {"null_sector", form.pairing.null_sector},
                   {"pair_data", pair_data},
                   {"convention",
                    form.convention == Convention::BetaEqD ? "beta_eq_d" : "sqrt_d"},
                   {"residual_c", form.residual_c},
                   {"residual_cp", form.residual_cp},
                   {"condition_estimate", form.condition_estimate},
                   {"ill_conditioned", form.ill_conditioned}});
}

PairedCanonicalForm read_canonical_form(const std::string& path) {
    const json j = load_json(path);
    PairedCanonicalForm form;
    try {
        form.basis = matrix_from_json(j.at("basis"));
        for (const auto& b : j.at("blocks"))
            form.blocks.push_back({b.at("id").get<int>(),
                                   complex_from_json(b.at("eigenvalue")),
                                   b.at("length").get<int>(),
                                   b.at("start_column").get<int>()});
        for (const auto& p : j.at("pairs"))
            form.pairing.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        for (const auto& id : j.at("null_sector"))
            form.pairing.null_sector.push_back(id.get<int>());
        for (const auto& pd : j.at("pair_data")) {
            CanonicalPairBlock out;
            out.block_i = pd.at("block_i").get<int>();
            out.block_j = pd.at("block_j").get<int>();
            out.eigenvalue = complex_from_json(pd.at("eigenvalue"));
            out.length = pd.at("length").get<int>();
            out.phase = complex_from_json(pd.at("phase"));
            out.c_block = matrix_from_json(pd.at("c_block"));
            out.cp_block = matrix_from_json(pd.at("cp_block"));
            for (const auto& z : pd.at("beta")) out.beta.push_back(complex_from_json(z));
            for (const auto& z : pd.at("beta_prime"))
                out.beta_prime.push_back(complex_from_json(z));
            form.pair_data.push_back(std::move(out));
        }
        form.convention = j.at("convention").get<std::string>() == "sqrt_d"
                              ? Convention::SqrtD
                              : Convention::BetaEqD;
        form.residual_c = j.at("residual_c").get<double>();
        form.residual_cp = j.at("residual_cp").get<double>();
        form.condition_estimate = j.at("condition_estimate").get<double>();
        form.ill_conditioned = j.at("ill_conditioned").get<bool>();
    } catch (const json::exception& e) {
        throw ParseError("malformed canonical form file " + path + ": " + e.what());
    }
    return form;
}

std::uint64_t file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::uint64_t hash = 14695981039346656037ull;
    char ch;
    while (in.get(ch)) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 1099511628211ull;
    }
    return hash;
}

}  // namespace bmz::io
