#pragma once

#include <cstddef>
#include <vector>

namespace ogp {

// Dense k x k matrix, row-major.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t k, T fill = T{}) : k_(k), data_(k * k, fill) {}

  std::size_t k() const noexcept { return k_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * k_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * k_ + j]; }

  T row_sum(std::size_t i) const {
    T s{};
    for (std::size_t j = 0; j < k_; ++j) s += (*this)(i, j);
    return s;
  }
  T col_sum(std::size_t j) const {
    T s{};
    for (std::size_t i = 0; i < k_; ++i) s += (*this)(i, j);
    return s;
  }
  T trace() const {
    T s{};
    for (std::size_t i = 0; i < k_; ++i) s += (*this)(i, i);
    return s;
  }
  T off_diagonal_sum() const {
    T s{};
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j)
        if (i != j) s += (*this)(i, j);
    return s;
  }

  static SquareMatrix identity(std::size_t k) {
    SquareMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = T{1};
    return m;
  }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t k_ = 0;
  std::vector<T> data_;
};

using RealMatrix = SquareMatrix<double>;
using CountMatrix = SquareMatrix<long long>;

}  // namespace ogp
