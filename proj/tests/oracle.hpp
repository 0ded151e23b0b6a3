#pragma once

// Reference implementations used only by the tests. They work on plain
// matrices with explicit multi-index loops and share no code with the
// library beyond the Eigen types.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline std::vector<int> digits(int index, const std::vector<int>& dims) {
  std::vector<int> d(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    d[k] = index % dims[k];
    index /= dims[k];
  }
  return d;
}

inline int index_of(const std::vector<int>& d, const std::vector<int>& dims) {
  int i = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) i = i * dims[k] + d[k];
  return i;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int k = 0; k < b.size(); ++k) out(i * b.size() + k) = a(i) * b(k);
  return out;
}

/// Transposes the factors at `positions`.
inline Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& positions) {
  Matrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      auto dr = digits(r, dims), dc = digits(c, dims);
      for (int p : positions) std::swap(dr[p], dc[p]);
      out(index_of(dr, dims), index_of(dc, dims)) = m(r, c);
    }
  return out;
}

/// Traces out the factors at `positions`.
inline Matrix partial_trace(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& positions) {
  std::vector<int> keep_dims;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    if (std::find(positions.begin(), positions.end(), k) == positions.end()) keep_dims.push_back(dims[k]);
  const int dk = std::accumulate(keep_dims.begin(), keep_dims.end(), 1, std::multiplies<>());
  Matrix out = Matrix::Zero(dk, dk);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      const auto dr = digits(r, dims), dc = digits(c, dims);
      bool diag = true;
      std::vector<int> kr, kc;
      for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
        if (std::find(positions.begin(), positions.end(), k) != positions.end()) {
          diag = diag && dr[k] == dc[k];
        } else {
          kr.push_back(dr[k]);
          kc.push_back(dc[k]);
        }
      }
      if (diag) out(index_of(kr, keep_dims), index_of(kc, keep_dims)) += m(r, c);
    }
  return out;
}

/// New factor k is old factor order[k].
inline Matrix permute(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& order) {
  std::vector<int> new_dims;
  for (int o : order) new_dims.push_back(dims[o]);
  Matrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      const auto dr = digits(r, dims), dc = digits(c, dims);
      std::vector<int> nr, nc;
      for (int o : order) {
        nr.push_back(dr[o]);
        nc.push_back(dc[o]);
      }
      out(index_of(nr, new_dims), index_of(nc, new_dims)) = m(r, c);
    }
  return out;
}

/// Smallest real part among the eigenvalues from the general (non-Hermitian)
/// solver.
inline double min_eig(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  return es.eigenvalues().real().minCoeff();
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline Vector random_vector(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> n;
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(n(rng), n(rng));
  return v;
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> n;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

/// G G^dagger with G of the given rank, trace one.
inline Matrix random_density(std::mt19937_64& rng, int d, int rank) {
  const Matrix g = random_matrix(rng, d, rank);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return 0.5 * (m + m.adjoint());
}

/// Mixture of `terms` random pure product states over the given local dims.
inline Matrix random_separable(std::mt19937_64& rng, const std::vector<int>& dims, int terms) {
  const int d = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
  Matrix m = Matrix::Zero(d, d);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int t = 0; t < terms; ++t) {
    Vector v = Vector::Ones(1);
    for (int dk : dims) v = kron(v, Vector(random_vector(rng, dk).normalized()));
    m += u(rng) * v * v.adjoint();
  }
  m /= m.trace().real();
  return 0.5 * (m + m.adjoint());
}

/// |Phi><Phi| with |Phi> = sum_k |k,k>.
inline Matrix max_entangled(int d) {
  Vector v = Vector::Zero(d * d);
  for (int k = 0; k < d; ++k) v(k * d + k) = 1.0;
  return v * v.adjoint();
}

/// 1 + alpha |W><W|, W = |001> + |010> + |100>.
inline Matrix rho_alpha(double alpha) {
  Vector w = Vector::Zero(8);
  w(1) = w(2) = w(4) = 1.0;
  return Matrix::Identity(8, 8) + alpha * w * w.adjoint();
}

/// Choi operator, output index slow: nu * sum_k vec(O_k) vec(O_k)^dagger.
inline Matrix choi(const std::vector<Matrix>& kraus) {
  const int dout = static_cast<int>(kraus.front().rows()), din = static_cast<int>(kraus.front().cols());
  Matrix e = Matrix::Zero(dout * din, dout * din);
  for (const auto& o : kraus)
    for (int i = 0; i < dout; ++i)
      for (int a = 0; a < din; ++a)
        for (int j = 0; j < dout; ++j)
          for (int b = 0; b < din; ++b) e(i * din + a, j * din + b) += o(i, a) * std::conj(o(j, b));
  return e / (static_cast<double>(din) * din);
}

/// tr_in(E (1 (x) rho^T)) / nu, written out with kron and partial_trace.
inline Matrix apply_choi(const Matrix& e, const Matrix& rho, int dout) {
  const int din = static_cast<int>(rho.rows());
  const Matrix prod = e * kron(Matrix(Matrix::Identity(dout, dout)), Matrix(rho.transpose()));
  return partial_trace(prod, {dout, din}, {1}) * (static_cast<double>(din) * din);
}

inline Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& rho) {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& o : kraus) out += o * rho * o.adjoint();
  return out;
}

}  // namespace oracle
