#pragma once

// Shared machinery for the nonconvex searches: configuration, per-restart
// seeding and a restart runner whose reduction does not depend on the thread
// count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "witness_forge/operator.hpp"

namespace witness_forge {

struct SearchConfig {
  std::uint64_t seed = 42;
  int restarts = 200;
  int max_iterations = 300;
  /// Stop a restart once an iteration improves the objective by less than this.
  double convergence_tol = 1e-13;

  double tol_neg = 1e-9;        // negativity threshold for refutations
  double tol_zero = 1e-7;       // |<v|W|v>| bound for spanning-set membership
  double gram_rank_tol = 1e-8;  // Gram eigenvalue threshold for span rank
  double psd_tol = kPsdTol;     // certificate PSD tolerance (normalized)
  double residual_tol = 1e-12;  // certificate residual bound (absolute, max-norm)

  int decomposition_iterations = 5000;
  bool structured_seeds = true;
  /// 0 means hardware concurrency.
  unsigned threads = 1;
};

/// splitmix64 finalizer; decorrelates consecutive restart indices.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

using Rng = std::mt19937_64;

Rng restart_rng(const SearchConfig& cfg, std::uint64_t restart);

/// Unit vector with i.i.d. complex Gaussian entries.
Vector random_unit_vector(Rng& rng, int dim);

/// Number of worker threads to use for `cfg`, capped by `jobs`.
unsigned worker_count(const SearchConfig& cfg, std::size_t jobs);

/// Runs fn(i) for i in [0, n) and returns the results in index order.
template <class Result, class Fn>
std::vector<Result> run_restarts(const SearchConfig& cfg, int n, Fn&& fn) {
  std::vector<Result> results(static_cast<std::size_t>(std::max(n, 0)));
  const unsigned workers = worker_count(cfg, results.size());
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) results[static_cast<std::size_t>(i)] = fn(i);
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) results[static_cast<std::size_t>(i)] = fn(i);
    });
  pool.clear();  // joins
  return results;
}

/// Index of the minimum `value` member; ties go to the lowest index.
template <class Result>
std::size_t argmin_by_value(const std::vector<Result>& results) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].value < results[best].value) best = i;
  return best;
}

/// Minimal eigenpair of a Hermitian matrix.
struct EigenPair {
  double value = 0.0;
  Vector vector;
};
EigenPair min_eigenpair(const Matrix& m);

}  // namespace witness_forge
