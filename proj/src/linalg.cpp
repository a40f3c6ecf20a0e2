#include "linalg.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "error.hpp"

namespace greyfc::linalg {
namespace {

// Gaussian elimination with partial pivoting on a row-major n x n system.
// Returns false when a pivot vanishes.
bool solve_system(std::vector<double> m, std::size_t n, std::vector<double> &b) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(m[col * n + col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double v = std::abs(m[row * n + col]);
      if (v > best) {
        best = v;
        pivot = row;
      }
    }
    if (!(best > 0.0) || !std::isfinite(best)) {
      return false;
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m[col * n + j], m[pivot * n + j]);
      }
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = m[row * n + col] / m[col * n + col];
      m[row * n + col] = 0.0;
      for (std::size_t j = col + 1; j < n; ++j) {
        m[row * n + j] -= f * m[col * n + j];
      }
      b[row] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      s -= m[i * n + j] * b[j];
    }
    b[i] = s / m[i * n + i];
  }
  return true;
}

double inf_norm(const std::vector<double> &m, std::size_t n) {
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += std::abs(m[i * n + j]);
    }
    norm = std::max(norm, row);
  }
  return norm;
}

[[noreturn]] void fail_singular(const std::string &detail) {
  fail(GREYFC_ERR_SINGULAR_SYSTEM, "singular normal equations: " + detail);
}

}  // namespace

std::vector<double> solve_ols(std::span<const double> design, std::size_t rows,
                              std::size_t cols, std::span<const double> rhs,
                              double cond_limit) {
  if (design.size() != rows * cols || rhs.size() != rows || cols == 0) {
    fail(GREYFC_ERR_INVALID_ARGUMENT, "solve_ols: inconsistent dimensions");
  }
  if (rows < cols) {
    fail_singular("fewer equations than unknowns");
  }

  std::vector<double> normal(cols * cols, 0.0);
  std::vector<double> v(cols, 0.0);
  for (std::size_t row = 0; row < rows; ++row) {
    const double *g = design.data() + row * cols;
    for (std::size_t i = 0; i < cols; ++i) {
      v[i] += g[i] * rhs[row];
      for (std::size_t j = i; j < cols; ++j) {
        normal[i * cols + j] += g[i] * g[j];
      }
    }
  }
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      normal[i * cols + j] = normal[j * cols + i];
    }
  }

  // Symmetric equilibration keeps the condition estimate scale-invariant.
  std::vector<double> scale(cols);
  for (std::size_t i = 0; i < cols; ++i) {
    scale[i] = std::sqrt(normal[i * cols + i]);
    if (!(scale[i] > 0.0) || !std::isfinite(scale[i])) {
      fail_singular("zero regressor column");
    }
  }
  std::vector<double> eq(cols * cols);
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      eq[i * cols + j] = normal[i * cols + j] / (scale[i] * scale[j]);
    }
  }

  std::vector<double> inverse(cols * cols);
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<double> e(cols, 0.0);
    e[j] = 1.0;
    if (!solve_system(eq, cols, e)) {
      fail_singular("zero pivot during elimination");
    }
    for (std::size_t i = 0; i < cols; ++i) {
      inverse[i * cols + j] = e[i];
    }
  }
  const double cond = inf_norm(eq, cols) * inf_norm(inverse, cols);
  if (!(cond < cond_limit)) {
    std::ostringstream msg;
    msg << "condition estimate " << cond << " exceeds " << cond_limit;
    fail_singular(msg.str());
  }

  std::vector<double> w(cols);
  for (std::size_t i = 0; i < cols; ++i) {
    w[i] = v[i] / scale[i];
  }
  if (!solve_system(eq, cols, w)) {
    fail_singular("zero pivot during elimination");
  }
  std::vector<double> solution(cols);
  for (std::size_t i = 0; i < cols; ++i) {
    solution[i] = w[i] / scale[i];
    if (!std::isfinite(solution[i])) {
      fail_singular("non-finite solution");
    }
  }
  return solution;
}

}  // namespace greyfc::linalg
