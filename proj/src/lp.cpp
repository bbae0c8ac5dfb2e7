#include "sstrp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace sstrp {

namespace {

constexpr double kEps = 1e-9;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& obj(std::size_t c) { return at(rows_, c); }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double pv = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= pv;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Maximizes the objective row over columns < `allowed`. Returns false if unbounded.
  bool run(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t c = 0; c < allowed; ++c)
        if (obj(c) < -kEps) {
          enter = c;
          break;
        }
      if (enter == allowed) return true;
      std::size_t leave = rows_;
      double best = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= kEps) continue;
        const double ratio = rhs(r) / a;
        if (leave == rows_ || ratio < best - kEps ||
            (ratio <= best + kEps && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult lp_maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                     const std::vector<double>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw std::invalid_argument("lp: row count mismatch");
  for (const auto& row : A)
    if (row.size() != n) throw std::invalid_argument("lp: column count mismatch");

  std::size_t nArt = 0;
  for (double v : b)
    if (v < 0.0) ++nArt;
  // Columns: originals, slacks, artificials.
  Tableau T(m, n + m + nArt);
  std::size_t art = n + m;
  for (std::size_t r = 0; r < m; ++r) {
    const double sign = b[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) T.at(r, j) = sign * A[r][j];
    T.at(r, n + r) = sign;
    T.rhs(r) = sign * b[r];
    if (sign < 0.0) {
      T.at(r, art) = 1.0;
      T.basis(r) = art++;
    } else {
      T.basis(r) = n + r;
    }
  }

  LpResult res;
  if (nArt > 0) {
    for (std::size_t j = n + m; j < n + m + nArt; ++j) T.obj(j) = 1.0;
    for (std::size_t r = 0; r < m; ++r)
      if (T.basis(r) >= n + m)
        for (std::size_t j = 0; j <= T.cols(); ++j) T.obj(j) -= T.at(r, j);
    T.run(T.cols());
    if (T.obj(T.cols()) < -1e-7) return res;
    for (std::size_t r = 0; r < m; ++r) {
      if (T.basis(r) < n + m) continue;
      for (std::size_t j = 0; j < n + m; ++j)
        if (std::abs(T.at(r, j)) > kEps) {
          T.pivot(r, j);
          break;
        }
    }
  }

  for (std::size_t j = 0; j <= T.cols(); ++j) T.obj(j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) T.obj(j) = -c[j];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t bj = T.basis(r);
    const double cb = bj < n ? c[bj] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= T.cols(); ++j) T.obj(j) += cb * T.at(r, j);
  }
  if (!T.run(n + m)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (T.basis(r) < n) res.x[T.basis(r)] = std::max(0.0, T.rhs(r));
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

}  // namespace sstrp
