#include "pot/matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "pot/errors.hpp"

namespace pot {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorKind::DimensionMismatch,
                "data length " + std::to_string(data_.size()) + " does not match " +
                    std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

FeatureMatrix::FeatureMatrix(DenseMatrix values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "feature matrix must have at least one row and column");
  }
  for (std::size_t r = 0; r < values_.rows(); ++r) {
    for (std::size_t c = 0; c < values_.cols(); ++c) {
      if (!std::isfinite(values_(r, c))) {
        throw Error(ErrorKind::NonFiniteValue,
                    "row " + std::to_string(r) + ", column " + std::to_string(c));
      }
    }
  }
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : FeatureMatrix(DenseMatrix(rows, cols, std::move(data))) {}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> indices) const {
  DenseMatrix out(indices.size(), cols());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= rows()) {
      throw Error(ErrorKind::InvalidArgument, "row index " + std::to_string(indices[k]) + " out of range");
    }
    auto src = row(indices[k]);
    std::copy(src.begin(), src.end(), out.row(k).begin());
  }
  return FeatureMatrix(std::move(out));
}

FeatureMatrix FeatureMatrix::transposed() const { return FeatureMatrix(values_.transposed()); }

FeatureMatrix concat_rows(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                "cannot stack matrices with " + std::to_string(a.cols()) + " and " +
                    std::to_string(b.cols()) + " columns");
  }
  std::vector<double> data(a.data().begin(), a.data().end());
  data.insert(data.end(), b.data().begin(), b.data().end());
  return FeatureMatrix(a.rows() + b.rows(), a.cols(), std::move(data));
}

FeatureMatrix l2_normalize_rows(const FeatureMatrix& m) {
  DenseMatrix out = m.matrix();
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    double sq = 0.0;
    for (double v : row) sq += v * v;
    if (sq == 0.0) continue;
    const double norm = std::sqrt(sq);
    for (double& v : row) v /= norm;
  }
  return FeatureMatrix(std::move(out));
}

}  // namespace pot
