#include "nlact/random.hpp"

#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace nlact {

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

static Eigen::MatrixXcd ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = std::complex<double>(g(rng), g(rng));
  return m;
}

Eigen::MatrixXcd random_hermitian(int dim, std::mt19937_64& rng) {
  Eigen::MatrixXcd g = ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

Eigen::MatrixXcd random_state_matrix(int dim, std::mt19937_64& rng) {
  Eigen::MatrixXcd psd = project_psd(random_hermitian(dim, rng));
  double tr = psd.real().trace();
  if (tr < 1e-12) {
    psd += Eigen::MatrixXcd::Identity(dim, dim);
    tr += dim;
  }
  return psd / tr;
}

MultipartyOperator random_state(const PartyLayout& layout, std::mt19937_64& rng) {
  validate_layout(layout);
  return MultipartyOperator{layout, random_state_matrix(static_cast<int>(layout_dim(layout)), rng)};
}

Eigen::VectorXcd random_ket(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = std::complex<double>(g(rng), g(rng));
  double n = v.norm();
  if (n < 1e-300) throw std::runtime_error("random_ket: degenerate draw");
  return v / n;
}

Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre(dim, dim, rng));
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) { // fix phases so the distribution is Haar
    std::complex<double> d = r(i, i);
    q.col(i) *= (std::abs(d) > 1e-300) ? d / std::abs(d) : 1.0;
  }
  return q;
}

MultipartyOperator random_product_state(const PartyLayout& layout, std::mt19937_64& rng) {
  validate_layout(layout);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (size_t k = 0; k < layout.size(); ++k) {
    long d = party_dim(layout, static_cast<int>(k));
    Eigen::VectorXcd v = random_ket(static_cast<int>(d), rng);
    Eigen::MatrixXcd proj = v * v.adjoint();
    m = Eigen::MatrixXcd(Eigen::kroneckerProduct(m, proj));
  }
  return MultipartyOperator{layout, std::move(m)};
}

} // namespace nlact
