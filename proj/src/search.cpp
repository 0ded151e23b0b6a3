#include "witness_forge/search.hpp"

namespace witness_forge {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng restart_rng(const SearchConfig& cfg, std::uint64_t restart) { return Rng(mix_seed(cfg.seed, restart)); }

Vector random_unit_vector(Rng& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cplx(re, im);
  }
  return v / v.norm();
}

unsigned worker_count(const SearchConfig& cfg, std::size_t jobs) {
  unsigned n = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

EigenPair min_eigenpair(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NotHermitian, "eigensolver did not converge");
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

}  // namespace witness_forge
