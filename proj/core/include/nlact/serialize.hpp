#pragma once

#include <string>

#include "nlact/tensor.hpp"

namespace nlact {

// {"layout": [[2,2],[2]], "re": [...], "im": [...]} with entries flattened
// row-major; values are exact binary64. indent < 0 emits a single line.
std::string to_json(const MultipartyOperator& op, int indent = -1);

MultipartyOperator operator_from_json(const std::string& text);

} // namespace nlact
