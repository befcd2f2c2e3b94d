#include "grasspenta/oracle.hpp"

#include <gmpxx.h>

#include <cmath>
#include <string>

#include "grasspenta/error.hpp"
#include "grasspenta/pentamap.hpp"

namespace grasspenta {

namespace {

using Cvec = std::array<Complex, 3>;
using QRows = std::vector<std::vector<mpq_class>>;
using ZRows = std::vector<std::vector<mpz_class>>;

Cvec cross(const Cvec& a, const Cvec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Cvec& a) { return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2])); }

mpq_class to_mpq(const Rational& q) {
  mpq_class out(q.backend().data());
  return out;
}

Rational from_mpq(const mpq_class& q) { return Rational(q.get_mpq_t()); }

QRows to_rows(const QMat& a) {
  QRows rows(a.rows(), std::vector<mpq_class>(a.cols()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) rows[i][j] = to_mpq(a(i, j));
  return rows;
}

// Scales each row to integers; returns the product of the row multipliers.
mpq_class clear_denominators(const QRows& rows, ZRows& out) {
  mpq_class scale = 1;
  out.assign(rows.size(), {});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    mpz_class l = 1;
    for (const auto& q : rows[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    for (const auto& q : rows[i]) out[i].push_back(mpz_class(q.get_num() * (l / q.get_den())));
    scale *= l;
  }
  return scale;
}

mpq_class cofactor(const QRows& a, std::vector<int>& cols, std::size_t row) {
  if (row == a.size()) return 1;
  mpq_class sum = 0;
  int sign = 1;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const int col = cols[c];
    if (a[row][col] != 0) {
      cols.erase(cols.begin() + c);
      const mpq_class minor = cofactor(a, cols, row + 1);
      cols.insert(cols.begin() + c, col);
      sum += sign * a[row][col] * minor;
    }
    sign = -sign;
  }
  return sum;
}

mpz_class bareiss(ZRows m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

void require_square(const QMat& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::InvalidDims, "matrix is not square");
}

}  // namespace

ProjectivePoint2D ProjectivePoint2D::normalized() const {
  for (int i = 2; i >= 0; --i) {
    if (std::abs(x[i]) > 0.0) {
      ProjectivePoint2D out;
      for (int j = 0; j < 3; ++j) out.x[j] = x[j] / x[i];
      return out;
    }
  }
  return *this;
}

double projective_distance(const ProjectivePoint2D& p, const ProjectivePoint2D& q) {
  const double denom = norm(p.x) * norm(q.x);
  return denom == 0.0 ? 0.0 : norm(cross(p.x, q.x)) / denom;
}

std::vector<ProjectivePoint2D> classical_pentagram_rp2(const std::vector<ProjectivePoint2D>& points,
                                                       const std::optional<CMat>& monodromy,
                                                       double eps) {
  const long N = static_cast<long>(points.size());
  if (N < 5) fail(ErrorKind::InvalidDims, "need at least 5 points");
  auto point = [&](long k) -> Cvec {
    Cvec p = points[floor_mod(k, N)].x;
    if (!monodromy) return p;
    for (long q = 0; q < floor_div(k, N); ++q) {
      Cvec next{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) next[i] += (*monodromy)(i, j) * p[j];
      p = next;
    }
    return p;
  };
  std::vector<ProjectivePoint2D> out(N);
  for (long k = 0; k < N; ++k) {
    const Cvec l1 = cross(point(k), point(k + 2));
    const Cvec l2 = cross(point(k + 1), point(k + 3));
    const Cvec v = cross(l1, l2);
    if (norm(v) <= eps * norm(l1) * norm(l2))
      fail(ErrorKind::DegenerateDiagonals, "diagonals at k=" + std::to_string(k) + " do not meet");
    out[k].x = v;
  }
  return out;
}

Rational cofactor_det(const QMat& a) {
  require_square(a);
  const QRows rows = to_rows(a);
  std::vector<int> cols(a.cols());
  for (int j = 0; j < a.cols(); ++j) cols[j] = j;
  return from_mpq(cofactor(rows, cols, 0));
}

Rational bareiss_det(const QMat& a) {
  require_square(a);
  ZRows ints;
  const mpq_class scale = clear_denominators(to_rows(a), ints);
  return from_mpq(mpq_class(bareiss(std::move(ints))) / scale);
}

Rational exact_det(const QMat& a) { return a.rows() <= 6 ? cofactor_det(a) : bareiss_det(a); }

int exact_rank(const QMat& a) {
  ZRows m;
  clear_denominators(to_rows(a), m);
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[rank], m[p]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const mpz_class f = m[i][c], g = m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] * g - m[rank][j] * f;
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

QMat cramer_solve(const QMat& a, const QMat& b) {
  require_square(a);
  const Rational det = exact_det(a);
  if (det == 0) fail(ErrorKind::SingularMatrix, "Cramer system is singular");
  QMat x(a.cols(), b.cols());
  for (Eigen::Index c = 0; c < b.cols(); ++c) {
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
      QMat ai = a;
      ai.col(i) = b.col(c);
      x(i, c) = exact_det(ai) / det;
    }
  }
  return x;
}

RationalChain cramer_map_unnormalized(const RationalChain& chain) {
  RationalChain c;
  c.n = chain.n;
  c.m = chain.m;
  c.N = chain.N;
  c.a.assign(chain.N, std::vector<QMat>(chain.m));
  for (int k = 0; k < chain.N; ++k) {
    const std::vector<QMat> F = build_F(chain, k, chain.m + 1);
    QMat Nk(chain.dim(), chain.dim());
    for (int l = 0; l < chain.m; ++l) Nk.middleCols(l * chain.n, chain.n) = F[l];
    const QMat sol = cramer_solve(Nk, F.back());
    for (int i = 0; i < chain.m; ++i) c.a[k][i] = sol.middleRows(i * chain.n, chain.n);
  }
  return c;
}

}  // namespace grasspenta
