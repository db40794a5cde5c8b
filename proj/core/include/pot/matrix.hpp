#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pot {

// Dense row-major matrix of doubles. No invariants beyond shape; used for
// cost matrices, transport plans and other intermediate values.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  DenseMatrix transposed() const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Sample embeddings, one row per sample. Guaranteed non-empty and finite;
// every constructor validates and throws pot::Error otherwise.
class FeatureMatrix {
 public:
  explicit FeatureMatrix(DenseMatrix values);
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t cols() const noexcept { return values_.cols(); }
  double operator()(std::size_t r, std::size_t c) const { return values_(r, c); }
  std::span<const double> row(std::size_t r) const { return values_.row(r); }
  std::span<const double> data() const noexcept { return values_.data(); }
  const DenseMatrix& matrix() const noexcept { return values_; }

  // Gathers the given rows, in order, into a new matrix.
  FeatureMatrix select_rows(std::span<const std::size_t> indices) const;
  FeatureMatrix transposed() const;

  bool operator==(const FeatureMatrix&) const = default;

 private:
  DenseMatrix values_;
};

// Logits from a classification head: one row per sample, one column per class.
struct LogitMatrix {
  FeatureMatrix values;
};

// Stacks a on top of b; column counts must agree.
FeatureMatrix concat_rows(const FeatureMatrix& a, const FeatureMatrix& b);

// Scales every row to unit Euclidean norm. Zero rows are left unchanged.
FeatureMatrix l2_normalize_rows(const FeatureMatrix& m);

}  // namespace pot
