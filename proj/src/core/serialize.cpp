#include "loggen/core/serialize.hpp"

namespace loggen::core {

namespace {

double checked_number(const nlohmann::json& j, const char* where) {
    if (!j.is_number())
        throw SchemaError(std::string(where) + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x))
        throw SchemaError(std::string(where) + ": non-finite value");
    return x;
}

int checked_dim(const nlohmann::json& j, const char* where) {
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw SchemaError(std::string(where) + ".dim: expected a positive integer");
    const int dim = j["dim"].get<int>();
    if (dim < 1)
        throw SchemaError(std::string(where) + ".dim: expected a positive integer");
    return dim;
}

} // namespace

nlohmann::json matrix_to_json(const Matrix& T) {
    require_square(T, "matrix_to_json");
    require_finite(T, "matrix_to_json");
    const auto n = T.rows();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < n; ++i) {
        nlohmann::json row_re = nlohmann::json::array();
        nlohmann::json row_im = nlohmann::json::array();
        for (Eigen::Index k = 0; k < n; ++k) {
            row_re.push_back(T(i, k).real());
            row_im.push_back(T(i, k).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return {{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
    const int dim = checked_dim(j, "operator");
    if (!j.contains("re") || !j["re"].is_array() ||
        static_cast<int>(j["re"].size()) != dim)
        throw SchemaError("operator.re: expected dim rows");
    if (!j.contains("im") || !j["im"].is_array() ||
        static_cast<int>(j["im"].size()) != dim)
        throw SchemaError("operator.im: expected dim rows");

    Matrix T(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const auto& row_re = j["re"][i];
        const auto& row_im = j["im"][i];
        if (!row_re.is_array() || static_cast<int>(row_re.size()) != dim)
            throw SchemaError("operator.re: row length must equal dim");
        if (!row_im.is_array() || static_cast<int>(row_im.size()) != dim)
            throw SchemaError("operator.im: row length must equal dim");
        for (int k = 0; k < dim; ++k)
            T(i, k) = Complex(checked_number(row_re[k], "operator.re"),
                              checked_number(row_im[k], "operator.im"));
    }
    return T;
}

nlohmann::json vector_to_json(const Vector& v) {
    require_finite(v, "vector_to_json");
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    return {{"dim", v.size()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Vector vector_from_json(const nlohmann::json& j) {
    const int dim = checked_dim(j, "vector");
    if (!j.contains("re") || !j["re"].is_array() ||
        static_cast<int>(j["re"].size()) != dim)
        throw SchemaError("vector.re: expected dim entries");
    if (!j.contains("im") || !j["im"].is_array() ||
        static_cast<int>(j["im"].size()) != dim)
        throw SchemaError("vector.im: expected dim entries");
    Vector v(dim);
    for (int i = 0; i < dim; ++i)
        v(i) = Complex(checked_number(j["re"][i], "vector.re"),
                       checked_number(j["im"][i], "vector.im"));
    return v;
}

} // namespace loggen::core
