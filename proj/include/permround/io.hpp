#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "permround/matrix.hpp"
#include "permround/nconv.hpp"
#include "permround/permutation.hpp"
#include "permround/qap.hpp"

namespace permround {

// Plain-text matrix format: first line n, then n whitespace-separated rows.
// The JSON mirror is {"n": ..., "rows": [[...], ...]}. Permutations travel
// as one line of n space-separated 1-based images. QAP instances: n, then A
// row-wise, then B row-wise; JSON mirror {"n": ..., "A": ..., "B": ...}.

SquareMatrix read_matrix_text(std::istream& in);
void write_matrix_text(std::ostream& out, const SquareMatrix& m);

SquareMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const SquareMatrix& m);

/// Dispatches on the ".json" extension, otherwise reads plain text.
/// Throws ParseError on malformed content, ValidationError on semantic
/// violations (non-finite entries and the like).
SquareMatrix load_matrix_file(const std::filesystem::path& path);
void save_matrix_file(const std::filesystem::path& path, const SquareMatrix& m);

Permutation read_permutation_text(std::istream& in);
void write_permutation_text(std::ostream& out, const Permutation& sigma);

QapInstance read_qap_text(std::istream& in);
void write_qap_text(std::ostream& out, const QapInstance& inst);
QapInstance qap_from_json(const nlohmann::json& j);
nlohmann::json qap_to_json(const QapInstance& inst);
QapInstance load_qap_file(const std::filesystem::path& path);

/// a_hat and weight_sum as row arrays; per_perm_trace and perm_counts keyed
/// by one-line permutation notation ("2 1 3 ...").
nlohmann::json nconv_to_json(const NconvApprox& approx);

}  // namespace permround
