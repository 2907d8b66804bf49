#pragma once

#include "json.hpp"

#include "loggen/core/types.hpp"

namespace loggen::core {

// Operator schema: {"dim": n, "re": [[...]], "im": [[...]]}, row major.
// Round trips are bit-exact for finite doubles; non-finite values are
// rejected on both paths.
nlohmann::json matrix_to_json(const Matrix& T);
Matrix matrix_from_json(const nlohmann::json& j);

// Vector schema: {"dim": n, "re": [...], "im": [...]}.
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

} // namespace loggen::core
