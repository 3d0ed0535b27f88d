#include "eigenbc/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace eigenbc::io {

namespace {

using nlohmann::json;

double number_from_json(const json& j, const std::string& where)
{
    if (!j.is_number())
        throw ValidationError(where + ": expected a number");
    return j.get<double>();
}

// "-" reads standard input
json load_json(const std::string& path)
{
    json j;
    try {
        if (path == "-") {
            std::cin >> j;
            return j;
        }
        std::ifstream in(path);
        if (!in)
            throw ValidationError("cannot open file: " + path);
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return j;
}

std::optional<BoundaryWeight> parse_boundary(const json& j, Index d,
                                             const char* matrix_key,
                                             const char* beta_key)
{
    if (!j.contains(matrix_key))
        return std::nullopt;
    const double beta =
        j.contains(beta_key) ? number_from_json(j.at(beta_key), beta_key) : 1.0;
    Matrix b = matrix_from_json(j.at(matrix_key), d, d, matrix_key);
    try {
        return BoundaryWeight(beta, std::move(b));
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(matrix_key) + ": " + e.what());
    }
}

} // namespace

json complex_to_json(Complex z)
{
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number())
        throw ValidationError(where + ": expected [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const Matrix& m)
{
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j)
            row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, Index rows, Index cols,
                        const std::string& where)
{
    if (!j.is_array() || static_cast<Index>(j.size()) != rows)
        throw ValidationError(where + ": expected " + std::to_string(rows) +
                              " rows");
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw ValidationError(where + ": row " + std::to_string(i) +
                                  " must hold " + std::to_string(cols) +
                                  " entries");
        for (Index k = 0; k < cols; ++k)
            m(i, k) = complex_from_json(
                row[static_cast<size_t>(k)],
                where + "(" + std::to_string(i) + "," + std::to_string(k) + ")");
    }
    return m;
}

WeightFile parse_weight(const json& j)
{
    if (!j.is_object())
        throw ValidationError("weight file: expected a JSON object");
    for (const char* key : {"d", "alpha", "A"})
        if (!j.contains(key))
            throw ValidationError(std::string("weight file: missing key \"") +
                                  key + "\"");
    if (!j.at("d").is_number_integer() || j.at("d").get<long>() < 1)
        throw ValidationError("d: expected a positive integer");
    const Index d = j.at("d").get<Index>();
    const double alpha = number_from_json(j.at("alpha"), "alpha");
    Matrix a = matrix_from_json(j.at("A"), 2 * d, 2 * d, "A");

    GaussianWeight w(alpha, std::move(a));
    auto left = parse_boundary(j, d, "B_L", "beta_L");
    auto right = parse_boundary(j, d, "B_R", "beta_R");
    return WeightFile{std::move(w), std::move(left), std::move(right)};
}

WeightFile load_weight(const std::string& path)
{
    return parse_weight(load_json(path));
}

json to_json(const WeightFile& wf)
{
    json j;
    j["d"] = wf.weight.dim();
    j["alpha"] = wf.weight.alpha();
    j["A"] = matrix_to_json(wf.weight.coupling());
    if (wf.left) {
        j["B_L"] = matrix_to_json(wf.left->matrix());
        j["beta_L"] = wf.left->beta();
    }
    if (wf.right) {
        j["B_R"] = matrix_to_json(wf.right->matrix());
        j["beta_R"] = wf.right->beta();
    }
    return j;
}

void save_weight(const std::string& path, const WeightFile& wf)
{
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write file: " + path);
    out << to_json(wf).dump(2) << "\n";
}

TrigPolySymbol parse_trig_symbol(const json& j)
{
    if (!j.is_object() || !j.contains("d") || !j.contains("coefficients"))
        throw ValidationError("symbol file: expected keys \"d\" and \"coefficients\"");
    if (!j.at("d").is_number_integer() || j.at("d").get<long>() < 1)
        throw ValidationError("d: expected a positive integer");
    const Index d = j.at("d").get<Index>();
    const json& coeffs = j.at("coefficients");
    if (!coeffs.is_array() || coeffs.empty())
        throw ValidationError("coefficients: expected a non-empty list of matrices");
    std::vector<Matrix> list;
    for (size_t k = 0; k < coeffs.size(); ++k)
        list.push_back(matrix_from_json(coeffs[k], d, d,
                                        "coefficients[" + std::to_string(k) + "]"));
    return TrigPolySymbol(std::move(list));
}

TrigPolySymbol load_trig_symbol(const std::string& path)
{
    return parse_trig_symbol(load_json(path));
}

std::string format_real(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace eigenbc::io
