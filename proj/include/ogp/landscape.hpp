#pragma once

#include <cstdint>
#include <vector>

#include "ogp/matrix.hpp"
#include "ogp/partition_algebra.hpp"

namespace ogp {

// g(X) = sum_i sum_{j<j'} (x_ij - x_ij')^2. When every row sums to one the
// value is cross-checked against k * sum x_ij^2 - k.
double g_of_signature(const Signature& sig);
double g_of_matrix(const RealMatrix& x);
// k * ||X||_F^2 - k; equals g only for row-stochastic X.
double g_frobenius(const RealMatrix& x);

// h(d) = 1 - 1/k - 2d(1 - d(k-1)) on [0, 1/k].
double h_curve(double d, std::size_t k);

struct ClosedFormMax {
  double value = 0.0;
  std::vector<Signature> optimizers;
};

// max g over X_k(t) for t in [0, 1]: k(k-1) - 2t(k - t(k-1)), attained at the
// k(k-1) transfer optimizers (all equal to the identity at t = 0).
ClosedFormMax max_g_closed_form(std::size_t k, double t);

// k(k-1) - 2: strict upper bound of g over X_k(t) for every t > 1.
double far_bound(std::size_t k);

// Feasible set: non-negative, unit column sums, off-diagonal mass t, and
// the diagonal alignment is optimal. `balanced` adds unit row sums.
struct SignaturePolytopeSpec {
  std::size_t k = 3;
  double t = 0.0;
  bool balanced = false;
};

struct GridMaxResult {
  double value = 0.0;
  // g * N^2, exact.
  long long scaled_value = 0;
  RealMatrix maximizer;
  CountMatrix maximizer_counts;
  // Grid points meeting the linear constraints; alignment is only checked
  // on candidates that would improve the running maximum.
  std::uint64_t candidates = 0;
};

// Exhaustive maximum of g over the slice of the grid {0, 1/N, ..., 1}^{k x k}
// inside the polytope. Requires k <= 4, N <= 12 and t*N integral. Throws
// ParameterError when the feasible grid is empty.
GridMaxResult grid_max_g(const SignaturePolytopeSpec& spec, std::size_t resolution);

// Closed form times N^2 as an exact integer when t*N is integral.
long long closed_form_scaled(std::size_t k, long long off_diagonal_units, long long resolution);

// True when the diagonal matching is a maximum-weight assignment.
bool diagonal_alignment_optimal(const CountMatrix& counts);

// delta' in (0, 1/(k(k-1))) with prefactor * 2 delta'(1 - delta'(k-1)) = delta;
// smaller root of the quadratic.
double near_optimal_distance(double delta, double prefactor, std::size_t k);

// The other solution of h(x) = h(d) around the minimum at 1/(2(k-1)).
double h_mirror(double d, std::size_t k);

}  // namespace ogp
