#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fdnet {

// Dense row-major matrix, just enough for channel tables.
template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  T& at(std::size_t r, std::size_t c) {
    check(r, c);
    return data_[r * cols_ + c];
  }
  const T& at(std::size_t r, std::size_t c) const {
    check(r, c);
    return data_[r * cols_ + c];
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
  }

  std::size_t rows_, cols_;
  std::vector<T> data_;
};

// Dense 3-d array indexed (i, j, k), row-major in k.
template <typename T>
class Cube {
 public:
  Cube() : ni_(0), nj_(0), nk_(0) {}
  Cube(std::size_t ni, std::size_t nj, std::size_t nk, T fill = T{})
      : ni_(ni), nj_(nj), nk_(nk), data_(ni * nj * nk, fill) {}

  std::size_t ni() const { return ni_; }
  std::size_t nj() const { return nj_; }
  std::size_t nk() const { return nk_; }

  T& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * nj_ + j) * nk_ + k];
  }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * nj_ + j) * nk_ + k];
  }

 private:
  std::size_t ni_, nj_, nk_;
  std::vector<T> data_;
};

}  // namespace fdnet
