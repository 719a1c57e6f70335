#pragma once
// Reproducible test-matrix generators.  States are sampled per the toolkit
// convention: Gaussian Hermitian matrix, PSD-projected, trace-normalized.

#include <cstdint>
#include <random>

#include "nlact/tensor.hpp"

namespace nlact {

std::mt19937_64 make_rng(std::uint64_t seed);

Eigen::MatrixXcd random_hermitian(int dim, std::mt19937_64& rng);
Eigen::MatrixXcd random_state_matrix(int dim, std::mt19937_64& rng);
MultipartyOperator random_state(const PartyLayout& layout, std::mt19937_64& rng);
Eigen::VectorXcd random_ket(int dim, std::mt19937_64& rng);
Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng);
// Product of independent random pure states, one per party.
MultipartyOperator random_product_state(const PartyLayout& layout, std::mt19937_64& rng);

} // namespace nlact
