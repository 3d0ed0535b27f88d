#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "eigenbc/szego.hpp"
#include "eigenbc/types.hpp"
#include "eigenbc/weights.hpp"

namespace eigenbc::io {

/// Parsed weight file: the edge weight plus optional boundary overrides.
struct WeightFile {
    GaussianWeight weight;
    std::optional<BoundaryWeight> left;
    std::optional<BoundaryWeight> right;
};

// Complex scalars are encoded as [re, im]; matrices as row-major nested
// arrays.  Parse errors carry the entry coordinates.
nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, Index rows, Index cols,
                        const std::string& where);

/// Top-level keys: "d", "alpha", "A", optional "B_L"/"B_R" with
/// "beta_L"/"beta_R" (scales default to 1).  Loaders accept "-" for
/// standard input.
WeightFile parse_weight(const nlohmann::json& j);
WeightFile load_weight(const std::string& path);
nlohmann::json to_json(const WeightFile& wf);
void save_weight(const std::string& path, const WeightFile& wf);

/// Trigonometric-polynomial symbol file: keys "d" and "coefficients"
/// (list of d x d matrices for k = 0..N).
TrigPolySymbol parse_trig_symbol(const nlohmann::json& j);
TrigPolySymbol load_trig_symbol(const std::string& path);

/// 17 significant digits, enough to reproduce the double bit for bit.
std::string format_real(double x);

} // namespace eigenbc::io
