#include "ogp/landscape.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ogp/assignment.hpp"
#include "ogp/error.hpp"

namespace ogp {

double g_of_matrix(const RealMatrix& x) {
  const std::size_t k = x.k();
  double g = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t jj = j + 1; jj < k; ++jj) {
        const double diff = x(i, j) - x(i, jj);
        g += diff * diff;
      }
  return g;
}

double g_frobenius(const RealMatrix& x) {
  const std::size_t k = x.k();
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) s += x(i, j) * x(i, j);
  return static_cast<double>(k) * s - static_cast<double>(k);
}

double g_of_signature(const Signature& sig) {
  const RealMatrix& x = sig.matrix();
  const double g = g_of_matrix(x);
  bool row_stochastic = true;
  for (std::size_t i = 0; i < x.k() && row_stochastic; ++i) row_stochastic = std::abs(x.row_sum(i) - 1.0) <= 1e-12;
  if (row_stochastic) {
    const double frob = g_frobenius(x);
    if (std::abs(frob - g) > 1e-9 * std::max(1.0, std::abs(g))) {
      throw InvariantError("g disagrees with its Frobenius form: " + std::to_string(g) + " vs " + std::to_string(frob));
    }
  }
  return g;
}

double h_curve(double d, std::size_t k) {
  if (k < 2) throw ParameterError("h needs k >= 2");
  const double kk = static_cast<double>(k);
  if (!(d >= -1e-12 && d <= 1.0 / kk + 1e-12)) throw ParameterError("h is defined on [0, 1/k]");
  return 1.0 - 1.0 / kk - 2.0 * d * (1.0 - d * (kk - 1.0));
}

ClosedFormMax max_g_closed_form(std::size_t k, double t) {
  if (k < 2) throw ParameterError("closed form needs k >= 2");
  if (!(t >= 0.0 && t <= 1.0)) throw ParameterError("closed form covers t in [0, 1]; use the far bound beyond");
  const double kk = static_cast<double>(k);
  ClosedFormMax out;
  out.value = kk * (kk - 1.0) - 2.0 * t * (kk - t * (kk - 1.0));
  if (t == 0.0) {
    out.optimizers.push_back(Signature::planted(k));
    return out;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) out.optimizers.push_back(Signature::transfer_optimizer(k, i, j, t));
  return out;
}

double far_bound(std::size_t k) {
  if (k < 2) throw ParameterError("far bound needs k >= 2");
  const double kk = static_cast<double>(k);
  return kk * (kk - 1.0) - 2.0;
}

long long closed_form_scaled(std::size_t k, long long off_diagonal_units, long long resolution) {
  const auto kk = static_cast<long long>(k);
  const long long n = resolution;
  const long long t = off_diagonal_units;
  return kk * (kk - 1) * n * n - 2 * t * (kk * n - t * (kk - 1));
}

bool diagonal_alignment_optimal(const CountMatrix& counts) { return max_assignment(counts).value == counts.trace(); }

namespace {

constexpr std::size_t kMaxGridK = 4;
using Column = std::array<int, kMaxGridK>;

void compositions(std::size_t k, int total, Column& cur, std::size_t pos, std::vector<Column>& out) {
  if (pos + 1 == k) {
    cur[pos] = total;
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur[pos] = v;
    compositions(k, total - v, cur, pos + 1, out);
  }
}

class GridSearch {
 public:
  GridSearch(std::size_t k, int n, int off_units, bool balanced) : k_(k), n_(n), off_units_(off_units), balanced_(balanced) {
    Column cur{};
    compositions(k, n, cur, 0, columns_);
    by_diag_.assign(k, std::vector<std::vector<std::size_t>>(static_cast<std::size_t>(n) + 1));
    for (std::size_t c = 0; c < columns_.size(); ++c)
      for (std::size_t j = 0; j < k; ++j) by_diag_[j][static_cast<std::size_t>(columns_[c][j])].push_back(c);
  }

  void run() {
    std::array<int, kMaxGridK> rows{};
    recurse(0, 0, rows, 0);
  }

  bool found() const { return best_ >= 0; }
  long long best() const { return best_; }
  const std::array<Column, kMaxGridK>& best_cols() const { return best_cols_; }
  std::uint64_t candidates() const { return candidates_; }

 private:
  void recurse(std::size_t j, int used, std::array<int, kMaxGridK>& rows, long long s2) {
    if (j == k_) {
      ++candidates_;
      long long r2 = 0;
      for (std::size_t i = 0; i < k_; ++i) r2 += static_cast<long long>(rows[i]) * rows[i];
      const long long g = static_cast<long long>(k_) * s2 - r2;
      if (g > best_ && aligned()) {
        best_ = g;
        best_cols_ = cols_;
      }
      return;
    }
    const int left_after = static_cast<int>(k_ - 1 - j) * n_;
    for (int off = 0; off <= n_; ++off) {
      const int rest = off_units_ - used - off;
      if (rest < 0) break;
      if (rest > left_after) continue;
      for (std::size_t c : by_diag_[j][static_cast<std::size_t>(n_ - off)]) {
        const Column& col = columns_[c];
        bool ok = true;
        long long add = 0;
        for (std::size_t i = 0; i < k_; ++i) {
          rows[i] += col[i];
          add += static_cast<long long>(col[i]) * col[i];
          if (balanced_ && rows[i] > n_) ok = false;
        }
        if (ok) {
          cols_[j] = col;
          recurse(j + 1, used + off, rows, s2 + add);
        }
        for (std::size_t i = 0; i < k_; ++i) rows[i] -= col[i];
      }
    }
  }

  // Entry (i, j) is cols_[j][i].
  bool aligned() const {
    std::array<std::size_t, kMaxGridK> perm{};
    for (std::size_t i = 0; i < k_; ++i) perm[i] = i;
    long long trace = 0;
    for (std::size_t i = 0; i < k_; ++i) trace += cols_[i][i];
    while (std::next_permutation(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k_))) {
      long long s = 0;
      for (std::size_t j = 0; j < k_; ++j) s += cols_[j][perm[j]];
      if (s > trace) return false;
    }
    return true;
  }

  std::size_t k_;
  int n_;
  int off_units_;
  bool balanced_;
  std::vector<Column> columns_;
  std::vector<std::vector<std::vector<std::size_t>>> by_diag_;
  std::array<Column, kMaxGridK> cols_{};
  std::array<Column, kMaxGridK> best_cols_{};
  long long best_ = -1;
  std::uint64_t candidates_ = 0;
};

}  // namespace

GridMaxResult grid_max_g(const SignaturePolytopeSpec& spec, std::size_t resolution) {
  const std::size_t k = spec.k;
  if (k < 2 || k > kMaxGridK) throw ParameterError("grid oracle supports 2 <= k <= 4");
  if (resolution == 0 || resolution > 12) throw ParameterError("grid oracle supports 1 <= N <= 12");
  if (!(spec.t >= 0.0 && spec.t <= static_cast<double>(k - 1))) throw ParameterError("t must lie in [0, k-1]");
  const double units = spec.t * static_cast<double>(resolution);
  const double rounded = std::round(units);
  if (std::abs(units - rounded) > 1e-9) throw ParameterError("t * N must be an integer");
  const int n = static_cast<int>(resolution);

  GridSearch search(k, n, static_cast<int>(rounded), spec.balanced);
  search.run();
  if (!search.found()) throw ParameterError("empty feasible grid for this polytope slice");

  GridMaxResult out;
  out.scaled_value = search.best();
  out.value = static_cast<double>(search.best()) / static_cast<double>(n * n);
  out.candidates = search.candidates();
  out.maximizer_counts = CountMatrix(k, 0);
  out.maximizer = RealMatrix(k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      out.maximizer_counts(i, j) = search.best_cols()[j][i];
      out.maximizer(i, j) = static_cast<double>(search.best_cols()[j][i]) / static_cast<double>(n);
    }
  return out;
}

double near_optimal_distance(double delta, double prefactor, std::size_t k) {
  if (k < 2) throw ParameterError("k must be at least 2");
  if (!(prefactor > 0.0)) throw ParameterError("prefactor must be positive");
  const double kk = static_cast<double>(k);
  if (!(delta > 0.0 && delta < 2.0 * prefactor / (kk * kk))) {
    throw ParameterError("delta must lie in (0, 2 * prefactor / k^2)");
  }
  const double disc = 1.0 - 2.0 * (kk - 1.0) * delta / prefactor;
  // Rationalized smaller root, stable for small delta.
  return (delta / prefactor) / (1.0 + std::sqrt(disc));
}

double h_mirror(double d, std::size_t k) {
  if (k < 2) throw ParameterError("k must be at least 2");
  return 1.0 / (static_cast<double>(k) - 1.0) - d;
}

}  // namespace ogp
