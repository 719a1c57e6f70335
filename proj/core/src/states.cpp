#include "nlact/states.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace nlact {

const Eigen::Matrix2cd& pauli(int k) {
  static const std::array<Eigen::Matrix2cd, 4> s = [] {
    std::array<Eigen::Matrix2cd, 4> a;
    const std::complex<double> i(0.0, 1.0);
    a[0] << 1, 0, 0, 1;
    a[1] << 0, 1, 1, 0;
    a[2] << 0, -i, i, 0;
    a[3] << 1, 0, 0, -1;
    return a;
  }();
  if (k < 0 || k > 3) throw std::invalid_argument("pauli: index out of range");
  return s[static_cast<size_t>(k)];
}

Eigen::Vector4cd bell_ket(int r) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (r) {
    case 0: v(0) = s; v(3) = s; break;   // Phi+
    case 1: v(0) = s; v(3) = -s; break;  // Phi-
    case 2: v(1) = s; v(2) = s; break;   // Psi+
    case 3: v(1) = s; v(2) = -s; break;  // Psi-
    default: throw std::invalid_argument("bell_ket: index out of range");
  }
  return v;
}

std::array<Eigen::Matrix4cd, 4> bell_projectors() {
  std::array<Eigen::Matrix4cd, 4> p;
  for (int r = 0; r < 4; ++r) {
    Eigen::Vector4cd v = bell_ket(r);
    p[static_cast<size_t>(r)] = v * v.adjoint();
  }
  return p;
}

Eigen::VectorXcd max_entangled_ket(int d) {
  if (d < 1) throw std::invalid_argument("max_entangled_ket: d < 1");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<long>(d) * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int s = 0; s < d; ++s) v(static_cast<long>(s) * d + s) = a;
  return v;
}

Eigen::MatrixXcd swap_operator(int d) {
  if (d < 1) throw std::invalid_argument("swap_operator: d < 1");
  long n = static_cast<long>(d) * d;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(static_cast<long>(j) * d + i, static_cast<long>(i) * d + j) = 1.0;
  return s;
}

Eigen::MatrixXcd antisym_projector(int d) {
  long n = static_cast<long>(d) * d;
  return 0.5 * (Eigen::MatrixXcd::Identity(n, n) - swap_operator(d));
}

MultipartyOperator h_theta(double theta) {
  const double pi4 = std::atan(1.0);
  if (theta < -1e-12 || theta > pi4 + 1e-12)
    throw std::invalid_argument("h_theta: theta outside [0, pi/4]");
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity()
      - std::cos(theta) * Eigen::Matrix4cd(Eigen::kroneckerProduct(pauli(1), pauli(1)))
      - std::sin(theta) * Eigen::Matrix4cd(Eigen::kroneckerProduct(pauli(3), pauli(3)));
  return MultipartyOperator{{{2}, {2}}, m};
}

MultipartyOperator werner2(double p) {
  if (p < -1.0 / 3.0 - 1e-12 || p > 1.0 + 1e-12)
    throw std::invalid_argument("werner2: p outside [-1/3, 1]");
  Eigen::Vector4cd psi = bell_ket(3);
  Eigen::Matrix4cd m = p * (psi * psi.adjoint()) + (1.0 - p) * 0.25 * Eigen::Matrix4cd::Identity();
  return MultipartyOperator{{{2}, {2}}, m};
}

double werner_min_weight(int d) { return 1.0 - 2.0 * d / (d + 1.0); }

MultipartyOperator werner_d(int d, double p) {
  if (d < 2) throw std::invalid_argument("werner_d: d < 2");
  if (p < werner_min_weight(d) - 1e-12 || p > 1.0 + 1e-12)
    throw std::invalid_argument("werner_d: p outside the allowed interval");
  long n = static_cast<long>(d) * d;
  Eigen::MatrixXcd m = (2.0 * p / (static_cast<double>(d) * (d - 1))) * antisym_projector(d)
      + ((1.0 - p) / static_cast<double>(n)) * Eigen::MatrixXcd::Identity(n, n);
  return MultipartyOperator{{{d}, {d}}, std::move(m)};
}

namespace {
const double kR[4][4] = {
    {9.0 / 9, 3.0 / 9, 3.0 / 9, 3.0 / 9},
    {1.0 / 9, -1.0 / 9, 3.0 / 9, -1.0 / 9},
    {1.0 / 9, -1.0 / 9, 3.0 / 9, -1.0 / 9},
    {1.0 / 9, -1.0 / 9, 3.0 / 9, -1.0 / 9},
};

Eigen::MatrixXcd pauli_string4(int a, int b, int c, int d) {
  Eigen::MatrixXcd m = Eigen::kroneckerProduct(pauli(a), pauli(b));
  Eigen::MatrixXcd n = Eigen::kroneckerProduct(pauli(c), pauli(d));
  return Eigen::kroneckerProduct(m, n);
}
} // namespace

MultipartyOperator ancilla_rho() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m += (kR[i][j] / 16.0) * pauli_string4(i, j, i, j);
  return MultipartyOperator{{{2, 2}, {2, 2}}, std::move(m)};
}

MultipartyOperator ancilla_rho3() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m += (kR[i][j] / 16.0) * pauli_string4(j, i, j, i);
  return MultipartyOperator{{{2}, {2, 2}, {2}}, std::move(m)};
}

ReferenceConstants reference_constants(int d) {
  if (d < 2 || d > 6) throw std::invalid_argument("reference_constants: d outside 2..6");
  static const double p_star[5] = {0.6569, 0.6360, 0.6247, 0.6175, 0.6126};
  ReferenceConstants rc;
  rc.d = d;
  rc.p_sep = 1.0 / (d + 1.0);
  rc.p_star_table = p_star[d - 2];
  rc.p_L = (d == 2) ? 0.6595 : (d - 1.0) / d;
  rc.p_NL_SLO = 2.0 * (d - 1.0) / ((std::sqrt(2.0) + 1.0) * d - 2.0);
  return rc;
}

} // namespace nlact
