#pragma once

#include <cstdint>
#include <string>

#include "bmz/canonical.hpp"
#include "bmz/linalg.hpp"

namespace bmz::io {

struct MatrixFile {
    int dim = 0;
    ComplexMatrix matrix;       // row-major entries in the file
    std::string metadata_json;  // "{}" when absent
};

MatrixFile read_matrix_file(const std::string& path);

void write_matrix_file(const std::string& path, const ComplexMatrix& m,
                       const std::string& metadata_json = "{}");

/// Serialized paired canonical form (basis, blocks, pairing, per-pair data).
void write_canonical_form(const std::string& path, const PairedCanonicalForm& form);
PairedCanonicalForm read_canonical_form(const std::string& path);

/// FNV-1a digest of a file's bytes, for report provenance lines.
std::uint64_t file_digest(const std::string& path);

}  // namespace bmz::io
