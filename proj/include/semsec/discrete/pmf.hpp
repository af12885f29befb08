#pragma once

// Dense discrete probability objects and Shannon measures (nats, 0 log 0 = 0).

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace semsec::discrete {

using Axes = std::vector<std::size_t>;

/// Row-major dense matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Nonnegative finite distortion d(x, x̂); rows index source letters.
class DistortionMatrix : public Matrix {
 public:
  DistortionMatrix() = default;
  explicit DistortionMatrix(Matrix m);
  DistortionMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : DistortionMatrix(Matrix(rows, cols, std::move(data))) {}

  static DistortionMatrix hamming(std::size_t n);
  static DistortionMatrix squared_error(std::span<const double> source_levels,
                                        std::span<const double> reconstruction_levels);
};

/// Discrete memoryless channel; row x is the conditional PMF p(y | x).
class DMC : public Matrix {
 public:
  DMC() = default;
  explicit DMC(Matrix m);
  DMC(std::size_t in, std::size_t out, std::vector<double> data) : DMC(Matrix(in, out, std::move(data))) {}

  std::size_t in_size() const noexcept { return rows(); }
  std::size_t out_size() const noexcept { return cols(); }

  static DMC bsc(double crossover);
  static DMC identity(std::size_t n);
  /// Channel X -> Z obtained by feeding this channel's output into `next`.
  DMC then(const DMC& next) const;
  /// Output distribution for input distribution p_x.
  std::vector<double> output(std::span<const double> p_x) const;
};

/// Joint PMF over a product alphabet, last axis varying fastest.
class JointPMF {
 public:
  JointPMF() = default;
  /// Throws ConfigError on negative entries or a size mismatch, and when the mass is off by > 1e-12.
  JointPMF(std::vector<std::size_t> dims, std::vector<double> probs);

  static JointPMF from_vector(std::vector<double> probs);
  /// Joint of two independent blocks; axes of `a` come first.
  static JointPMF product(const JointPMF& a, const JointPMF& b);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t rank() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return probs_.size(); }
  const std::vector<double>& probs() const noexcept { return probs_; }
  double at(std::span<const std::size_t> index) const;

  /// Marginal over `axes`, kept in the order given.
  JointPMF marginal(const Axes& axes) const;
  /// Appends an output axis Y drawn through `channel` from input axis `input_axis`.
  JointPMF append_channel(std::size_t input_axis, const DMC& channel) const;
  /// Relabels letters of one axis: new letter perm[i] gets the mass of letter i.
  JointPMF relabel(std::size_t axis, std::span<const std::size_t> perm) const;

  /// Expected value of f(index) under the PMF.
  template <class F>
  double expect(F&& f) const {
    std::vector<std::size_t> idx(dims_.size(), 0);
    double acc = 0.0;
    for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
      if (probs_[flat] > 0.0) acc += probs_[flat] * f(std::span<const std::size_t>(idx));
      advance(idx);
    }
    return acc;
  }

 private:
  void advance(std::vector<std::size_t>& idx) const;

  std::vector<std::size_t> dims_;
  std::vector<double> probs_;
};

double entropy(std::span<const double> pmf);
double entropy(const JointPMF& joint);
/// H of the sub-vector on `axes`.
double entropy(const JointPMF& joint, const Axes& axes);
/// H(A | C).
double conditional_entropy(const JointPMF& joint, const Axes& a, const Axes& given);
/// I(A ; B).
double mutual_information(const JointPMF& joint, const Axes& a, const Axes& b);
/// I(A ; B | C).
double conditional_mi(const JointPMF& joint, const Axes& a, const Axes& b, const Axes& given);

/// Binary entropy h2(p) in nats.
double binary_entropy(double p);

// Plain-text matrix format: optional '#' comment lines, a header line with the
// dimensions, then the entries row-major separated by whitespace.
struct TextTensor {
  std::vector<std::size_t> dims;
  std::vector<double> values;
};

TextTensor read_text_tensor(std::istream& in);
TextTensor read_text_tensor_file(const std::string& path);
void write_text_tensor(std::ostream& out, const TextTensor& t);

JointPMF load_pmf(const std::string& path);
DMC load_dmc(const std::string& path);
DistortionMatrix load_distortion(const std::string& path);

}  // namespace semsec::discrete
