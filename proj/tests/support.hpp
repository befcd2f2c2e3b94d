#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "grasspenta/polygon.hpp"

namespace grasspenta::testing {

struct Dims {
  int n, m, N;
  std::uint64_t seed;
};

// Hand-rolled generator of coprime (n, m, N) triples.
inline std::vector<Dims> random_dims(int count, std::uint64_t seed, std::vector<int> ns = {1, 2},
                                     std::vector<int> ms = {3, 4, 5}, int N_max = 9) {
  std::mt19937_64 rng(seed);
  std::vector<Dims> out;
  while (static_cast<int>(out.size()) < count) {
    const int n = ns[rng() % ns.size()];
    const int m = ms[rng() % ms.size()];
    const int N = m + static_cast<int>(rng() % static_cast<std::uint64_t>(N_max - m + 1));
    if (N < m || std::gcd(N, m) != 1) continue;
    out.push_back({n, m, N, rng()});
  }
  return out;
}

inline double rel_err(const CMat& a, const CMat& b) { return relative_deviation(a, b); }

inline CMat cmat(std::initializer_list<std::initializer_list<double>> rows) {
  CMat out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) out(i, j++) = v;
    ++i;
  }
  return out;
}

inline Chain scalar_chain(int m, const std::vector<std::vector<double>>& a) {
  Chain chain;
  chain.n = 1;
  chain.m = m;
  chain.N = static_cast<int>(a.size());
  for (const auto& row : a) {
    std::vector<CMat> blocks;
    for (double v : row) blocks.push_back(CMat::Constant(1, 1, v));
    chain.a.push_back(blocks);
  }
  return chain;
}

inline Lift column_lift(int m, const std::vector<std::vector<double>>& cols, const CMat& M) {
  Lift lift;
  lift.n = 1;
  lift.m = m;
  lift.N = static_cast<int>(cols.size());
  for (const auto& c : cols) {
    CMat x(static_cast<Eigen::Index>(c.size()), 1);
    for (std::size_t i = 0; i < c.size(); ++i) x(static_cast<Eigen::Index>(i), 0) = c[i];
    lift.X.push_back(x);
  }
  lift.M = M;
  return lift;
}

}  // namespace grasspenta::testing
