#include "nlact/tensor.hpp"

#include <algorithm>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace nlact {

void validate_layout(const PartyLayout& layout) {
  if (layout.empty()) throw std::invalid_argument("layout: no parties");
  for (const auto& party : layout)
    for (int d : party)
      if (d < 1) throw std::invalid_argument("layout: leg dimension < 1");
}

long layout_dim(const PartyLayout& layout) {
  long dim = 1;
  for (const auto& party : layout)
    for (int d : party) dim *= d;
  return dim;
}

std::vector<int> layout_legs(const PartyLayout& layout) {
  std::vector<int> legs;
  for (const auto& party : layout) legs.insert(legs.end(), party.begin(), party.end());
  return legs;
}

long party_dim(const PartyLayout& layout, int party) {
  long dim = 1;
  for (int d : layout.at(static_cast<size_t>(party))) dim *= d;
  return dim;
}

std::vector<int> party_leg_indices(const PartyLayout& layout, int party) {
  int offset = 0;
  for (int k = 0; k < party; ++k) offset += static_cast<int>(layout.at(static_cast<size_t>(k)).size());
  std::vector<int> idx(layout.at(static_cast<size_t>(party)).size());
  for (size_t t = 0; t < idx.size(); ++t) idx[t] = offset + static_cast<int>(t);
  return idx;
}

MultipartyOperator make_operator(PartyLayout layout, Eigen::MatrixXcd mat) {
  validate_layout(layout);
  long dim = layout_dim(layout);
  if (mat.rows() != dim || mat.cols() != dim)
    throw std::invalid_argument("operator: matrix shape does not match layout dimension");
  return MultipartyOperator{std::move(layout), std::move(mat)};
}

static std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    s[static_cast<size_t>(i)] = s[static_cast<size_t>(i) + 1] * dims[static_cast<size_t>(i) + 1];
  return s;
}

std::vector<long> permuted_index_map(const std::vector<int>& dims, const std::vector<int>& perm) {
  const size_t n = dims.size();
  if (perm.size() != n) throw std::invalid_argument("permutation size mismatch");
  std::vector<char> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || static_cast<size_t>(p) >= n || seen[static_cast<size_t>(p)])
      throw std::invalid_argument("permutation is not a bijection on legs");
    seen[static_cast<size_t>(p)] = 1;
  }
  std::vector<int> new_dims(n);
  for (size_t q = 0; q < n; ++q) new_dims[q] = dims[static_cast<size_t>(perm[q])];
  auto old_strides = strides_of(dims);
  long total = 1;
  for (int d : dims) total *= d;

  std::vector<long> map(static_cast<size_t>(total));
  std::vector<int> digit(n, 0);
  long old_index = 0;
  for (long r = 0; r < total; ++r) {
    map[static_cast<size_t>(r)] = old_index;
    // odometer increment over new_dims, updating old_index incrementally
    for (int q = static_cast<int>(n) - 1; q >= 0; --q) {
      auto uq = static_cast<size_t>(q);
      long stride = old_strides[static_cast<size_t>(perm[uq])];
      if (++digit[uq] < new_dims[uq]) {
        old_index += stride;
        break;
      }
      old_index -= stride * (new_dims[uq] - 1);
      digit[uq] = 0;
    }
  }
  return map;
}

MultipartyOperator kron(const MultipartyOperator& a, const MultipartyOperator& b) {
  PartyLayout layout = a.layout;
  layout.insert(layout.end(), b.layout.begin(), b.layout.end());
  Eigen::MatrixXcd m = Eigen::kroneckerProduct(a.mat, b.mat);
  return MultipartyOperator{std::move(layout), std::move(m)};
}

MultipartyOperator permute_parties(const MultipartyOperator& x, const std::vector<int>& perm) {
  auto dims = layout_legs(x.layout);
  auto map = permuted_index_map(dims, perm);
  const long n = x.dim();
  Eigen::MatrixXcd out(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c)
      out(r, c) = x.mat(map[static_cast<size_t>(r)], map[static_cast<size_t>(c)]);

  PartyLayout layout = x.layout; // same grouping shape, gathered dims
  size_t flat = 0;
  for (auto& party : layout)
    for (int& d : party) d = dims[static_cast<size_t>(perm[flat++])];
  return MultipartyOperator{std::move(layout), std::move(out)};
}

MultipartyOperator regroup(const MultipartyOperator& x, PartyLayout new_layout) {
  validate_layout(new_layout);
  if (layout_legs(new_layout) != layout_legs(x.layout))
    throw std::invalid_argument("regroup: flattened leg dims must be unchanged");
  return MultipartyOperator{std::move(new_layout), x.mat};
}

MultipartyOperator partial_trace(const MultipartyOperator& x, const std::vector<int>& keep) {
  const auto dims = layout_legs(x.layout);
  const size_t n_legs = dims.size();
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || static_cast<size_t>(keep[i]) >= n_legs)
      throw std::invalid_argument("partial_trace: leg index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace: keep legs must be strictly increasing");
  }

  std::vector<int> traced;
  for (size_t l = 0; l < n_legs; ++l)
    if (!std::binary_search(keep.begin(), keep.end(), static_cast<int>(l)))
      traced.push_back(static_cast<int>(l));

  const auto strides = strides_of(dims);
  long kdim = 1, tdim = 1;
  for (int l : keep) kdim *= dims[static_cast<size_t>(l)];
  for (int l : traced) tdim *= dims[static_cast<size_t>(l)];

  // enumerate flat offsets contributed by kept / traced digit combinations
  auto offsets = [&](const std::vector<int>& legs, long count) {
    std::vector<long> off(static_cast<size_t>(count), 0);
    std::vector<int> digit(legs.size(), 0);
    long cur = 0;
    for (long i = 0; i < count; ++i) {
      off[static_cast<size_t>(i)] = cur;
      for (int q = static_cast<int>(legs.size()) - 1; q >= 0; --q) {
        auto uq = static_cast<size_t>(q);
        long stride = strides[static_cast<size_t>(legs[uq])];
        if (++digit[uq] < dims[static_cast<size_t>(legs[uq])]) {
          cur += stride;
          break;
        }
        cur -= stride * (dims[static_cast<size_t>(legs[uq])] - 1);
        digit[uq] = 0;
      }
    }
    return off;
  };
  const auto koff = offsets(keep, kdim);
  const auto toff = offsets(traced, tdim);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kdim, kdim);
  for (long r = 0; r < kdim; ++r)
    for (long c = 0; c < kdim; ++c) {
      std::complex<double> sum = 0.0;
      for (long t = 0; t < tdim; ++t)
        sum += x.mat(koff[static_cast<size_t>(r)] + toff[static_cast<size_t>(t)],
                     koff[static_cast<size_t>(c)] + toff[static_cast<size_t>(t)]);
      out(r, c) = sum;
    }

  PartyLayout layout;
  size_t flat = 0;
  for (const auto& party : x.layout) {
    std::vector<int> kept_party;
    for (int d : party) {
      if (std::binary_search(keep.begin(), keep.end(), static_cast<int>(flat))) kept_party.push_back(d);
      ++flat;
    }
    if (!kept_party.empty()) layout.push_back(std::move(kept_party));
  }
  if (layout.empty()) layout.push_back({}); // scalar result: one trivial party
  return MultipartyOperator{std::move(layout), std::move(out)};
}

MultipartyOperator partial_transpose(const MultipartyOperator& x, const std::vector<int>& legs) {
  const auto dims = layout_legs(x.layout);
  std::vector<char> flip(dims.size(), 0);
  for (int l : legs) {
    if (l < 0 || static_cast<size_t>(l) >= dims.size())
      throw std::invalid_argument("partial_transpose: leg index out of range");
    flip[static_cast<size_t>(l)] = 1;
  }
  const auto strides = strides_of(dims);
  const long n = x.dim();

  Eigen::MatrixXcd out(n, n);
  std::vector<int> rdig(dims.size()), cdig(dims.size());
  for (long r = 0; r < n; ++r) {
    long rr = r;
    for (size_t q = 0; q < dims.size(); ++q) {
      rdig[q] = static_cast<int>(rr / strides[q]);
      rr %= strides[q];
    }
    for (long c = 0; c < n; ++c) {
      long cc = c;
      long sr = 0, sc = 0;
      for (size_t q = 0; q < dims.size(); ++q) {
        cdig[q] = static_cast<int>(cc / strides[q]);
        cc %= strides[q];
        if (flip[q]) {
          sr += cdig[q] * strides[q];
          sc += rdig[q] * strides[q];
        } else {
          sr += rdig[q] * strides[q];
          sc += cdig[q] * strides[q];
        }
      }
      out(r, c) = x.mat(sr, sc);
    }
  }
  return MultipartyOperator{x.layout, std::move(out)};
}

bool is_hermitian(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= rel_tol * scale;
}

EigenSystem hermitian_eig(const Eigen::MatrixXcd& m) {
  if (!is_hermitian(m))
    throw std::invalid_argument("hermitian_eig: input is not Hermitian within tolerance");
  Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  return EigenSystem{es.eigenvalues(), es.eigenvectors()};
}

Eigen::MatrixXcd project_psd(const Eigen::MatrixXcd& m) {
  EigenSystem es = hermitian_eig(m);
  Eigen::VectorXd clipped = es.values.cwiseMax(0.0);
  return es.vectors * clipped.asDiagonal() * es.vectors.adjoint();
}

double trace_distance(const MultipartyOperator& a, const MultipartyOperator& b) {
  if (a.layout != b.layout)
    throw std::invalid_argument("trace_distance: layout mismatch");
  EigenSystem es = hermitian_eig(a.mat - b.mat);
  return 0.5 * es.values.cwiseAbs().sum();
}

StateCheck check_state(const Eigen::MatrixXcd& m) {
  StateCheck c{};
  double scale = std::max(1.0, m.norm());
  c.hermiticity_error = (m - m.adjoint()).norm() / scale;
  c.trace_error = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  c.pass = c.hermiticity_error <= 1e-12 && c.trace_error <= 1e-12 && c.min_eigenvalue >= -1e-10;
  return c;
}

} // namespace nlact
