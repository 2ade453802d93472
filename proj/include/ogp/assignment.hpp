#pragma once

#include <vector>

#include "ogp/matrix.hpp"

namespace ogp {

// Solution of max_sigma sum_j w(sigma[j], j) over permutations sigma of [k].
struct Assignment {
  std::vector<std::size_t> perm;  // perm[j] = row matched to column j
  long long value = 0;
};

// Exact maximum-weight perfect matching (Hungarian method, O(k^3)).
// The returned permutation is one maximizer, not necessarily the
// lexicographically smallest one.
Assignment max_assignment(const CountMatrix& weights);

// Same optimum value, with the lexicographically smallest maximizing
// permutation (compared as the sequence perm[0], perm[1], ...).
Assignment max_assignment_lex(const CountMatrix& weights);

}  // namespace ogp
