#pragma once

#include <string>

#include <json.hpp>

#include "schatlab/block.hpp"
#include "schatlab/linalg.hpp"
#include "schatlab/spaces.hpp"

namespace schatlab {

using Json = nlohmann::json;

// {"rows": r, "cols": c, "data": [[re, im], ...]} with data row-major.
Json to_json(const CMatrix& x);
CMatrix cmatrix_from_json(const Json& j);

// Number for a finite exponent, the string "inf" otherwise.
Json to_json(const PIndex& p);
PIndex pindex_from_json(const Json& j);

// {"shape": [[r, c], ...], "p": ..., "parts": [matrix, ...]}
Json to_json(const BlockOperator& x);
BlockOperator block_operator_from_json(const Json& j);

// {"kind", "I", "J", "N", "a_dim", "a2_dim", "p", "seed", "O", "v",
//  "a", "a2"}; optional matrices are null when absent.
Json to_json(const TypeSpec& spec);
TypeSpec type_spec_from_json(const Json& j);

// {"spec": ..., "shape": ..., "basis": [block operator, ...]}
Json to_json(const Subspace& space);
Subspace subspace_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace schatlab
