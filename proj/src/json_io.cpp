#include "schatlab/json_io.hpp"

#include <fstream>

#include "schatlab/errors.hpp"

namespace schatlab {

Json to_json(const CMatrix& x) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      data.push_back({x(i, j).real(), x(i, j).imag()});
  return Json{{"rows", x.rows()}, {"cols", x.cols()}, {"data", data}};
}

CMatrix cmatrix_from_json(const Json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const Json& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw DomainError("cmatrix_from_json: data length mismatch");
  CMatrix x(rows, cols);
  Eigen::Index n = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& e = data[n++];
      x(i, k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return x;
}

Json to_json(const PIndex& p) {
  if (p.is_inf()) return Json("inf");
  return Json(p.value());
}

PIndex pindex_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return PIndex::infinity();
    throw DomainError("pindex_from_json: unknown exponent string");
  }
  return PIndex(j.get<double>());
}

Json to_json(const BlockOperator& x) {
  Json shape = Json::array();
  for (auto [r, c] : x.shape.blocks) shape.push_back({r, c});
  Json parts = Json::array();
  for (const CMatrix& m : x.parts) parts.push_back(to_json(m));
  return Json{{"shape", shape}, {"p", to_json(x.p)}, {"parts", parts}};
}

BlockOperator block_operator_from_json(const Json& j) {
  BlockShape shape;
  for (const Json& b : j.at("shape"))
    shape.blocks.emplace_back(b.at(0).get<Eigen::Index>(),
                              b.at(1).get<Eigen::Index>());
  std::vector<CMatrix> parts;
  for (const Json& m : j.at("parts")) parts.push_back(cmatrix_from_json(m));
  return make_block_operator(std::move(shape), std::move(parts),
                             pindex_from_json(j.at("p")));
}

namespace {

Json optional_matrix(const std::optional<CMatrix>& m) {
  return m ? to_json(*m) : Json(nullptr);
}

std::optional<CMatrix> optional_matrix_from_json(const Json& j,
                                                 const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return cmatrix_from_json(j.at(key));
}

}  // namespace

Json to_json(const TypeSpec& spec) {
  return Json{{"kind", to_string(spec.kind)},
              {"I", spec.I},
              {"J", spec.J},
              {"N", spec.N},
              {"a_dim", spec.a_dim},
              {"a2_dim", spec.a2_dim},
              {"p", to_json(spec.p)},
              {"seed", spec.seed},
              {"O", optional_matrix(spec.O)},
              {"v", optional_matrix(spec.v)},
              {"a", optional_matrix(spec.a)},
              {"a2", optional_matrix(spec.a2)}};
}

TypeSpec type_spec_from_json(const Json& j) {
  TypeSpec spec;
  spec.kind = type_kind_from_string(j.at("kind").get<std::string>());
  spec.I = j.value("I", 0);
  spec.J = j.value("J", 0);
  spec.N = j.value("N", 0);
  spec.a_dim = j.value("a_dim", 1);
  spec.a2_dim = j.value("a2_dim", 1);
  if (j.contains("p")) spec.p = pindex_from_json(j.at("p"));
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.O = optional_matrix_from_json(j, "O");
  spec.v = optional_matrix_from_json(j, "v");
  spec.a = optional_matrix_from_json(j, "a");
  spec.a2 = optional_matrix_from_json(j, "a2");
  return spec;
}

Json to_json(const Subspace& space) {
  Json shape = Json::array();
  for (auto [r, c] : space.shape.blocks) shape.push_back({r, c});
  Json basis = Json::array();
  for (const BlockOperator& b : space.basis) basis.push_back(to_json(b));
  return Json{{"spec", to_json(space.spec)},
              {"shape", shape},
              {"basis", basis}};
}

Subspace subspace_from_json(const Json& j) {
  Subspace space;
  space.spec = type_spec_from_json(j.at("spec"));
  for (const Json& b : j.at("shape"))
    space.shape.blocks.emplace_back(b.at(0).get<Eigen::Index>(),
                                    b.at(1).get<Eigen::Index>());
  for (const Json& b : j.at("basis"))
    space.basis.push_back(block_operator_from_json(b));
  return space;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("load_json_file: cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError("save_json_file: cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace schatlab
