#include "nlact/serialize.hpp"

#include <stdexcept>

#include <json.hpp>

namespace nlact {

std::string to_json(const MultipartyOperator& op, int indent) {
  nlohmann::ordered_json j;
  j["layout"] = op.layout;
  const long dim = op.mat.rows();
  std::vector<double> re, im;
  re.reserve(static_cast<size_t>(dim * dim));
  im.reserve(static_cast<size_t>(dim * dim));
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c) {
      re.push_back(op.mat(r, c).real());
      im.push_back(op.mat(r, c).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j.dump(indent);
}

MultipartyOperator operator_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("operator_from_json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("layout") || !j.contains("re") || !j.contains("im"))
    throw std::invalid_argument("operator_from_json: need layout, re, im fields");

  PartyLayout layout;
  try {
    layout = j["layout"].get<PartyLayout>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("operator_from_json: layout must be a list of integer lists");
  }
  validate_layout(layout);

  const long dim = layout_dim(layout);
  const auto& re = j["re"];
  const auto& im = j["im"];
  if (!re.is_array() || !im.is_array() ||
      static_cast<long>(re.size()) != dim * dim || static_cast<long>(im.size()) != dim * dim)
    throw std::invalid_argument("operator_from_json: entry count does not match layout");

  Eigen::MatrixXcd mat(dim, dim);
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c) {
      const size_t k = static_cast<size_t>(r * dim + c);
      if (!re[k].is_number() || !im[k].is_number())
        throw std::invalid_argument("operator_from_json: entries must be numbers");
      mat(r, c) = std::complex<double>(re[k].get<double>(), im[k].get<double>());
    }
  return MultipartyOperator{std::move(layout), std::move(mat)};
}

} // namespace nlact
