#include "semsec/discrete/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "semsec/errors.hpp"

namespace semsec::discrete {

namespace {

constexpr double kMassTol = 1e-12;

std::size_t product_of(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw ConfigError("matrix data size does not match its shape");
}

DistortionMatrix::DistortionMatrix(Matrix m) : Matrix(std::move(m)) {
  for (double v : data())
    if (!std::isfinite(v) || v < 0.0) throw ConfigError("distortion entries must be finite and >= 0");
}

DistortionMatrix DistortionMatrix::hamming(std::size_t n) {
  Matrix m(n, n, 1.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 0.0;
  return DistortionMatrix(std::move(m));
}

DistortionMatrix DistortionMatrix::squared_error(std::span<const double> source_levels,
                                                 std::span<const double> reconstruction_levels) {
  Matrix m(source_levels.size(), reconstruction_levels.size());
  for (std::size_t i = 0; i < source_levels.size(); ++i)
    for (std::size_t j = 0; j < reconstruction_levels.size(); ++j) {
      const double e = source_levels[i] - reconstruction_levels[j];
      m(i, j) = e * e;
    }
  return DistortionMatrix(std::move(m));
}

DMC::DMC(Matrix m) : Matrix(std::move(m)) {
  if (rows() == 0 || cols() == 0) throw ConfigError("channel alphabets must be nonempty");
  for (std::size_t x = 0; x < rows(); ++x) {
    double sum = 0.0;
    for (double v : row(x)) {
      if (!std::isfinite(v) || v < 0.0) throw ConfigError("channel transition probabilities must be >= 0");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kMassTol) throw ConfigError("channel row does not sum to 1");
  }
}

DMC DMC::bsc(double crossover) {
  if (!(crossover >= 0.0 && crossover <= 1.0)) throw DomainError("BSC crossover must lie in [0, 1]");
  return DMC(2, 2, {1.0 - crossover, crossover, crossover, 1.0 - crossover});
}

DMC DMC::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return DMC(std::move(m));
}

DMC DMC::then(const DMC& next) const {
  if (out_size() != next.in_size()) throw ConfigError("channel composition: alphabet mismatch");
  Matrix m(in_size(), next.out_size(), 0.0);
  for (std::size_t x = 0; x < in_size(); ++x)
    for (std::size_t y = 0; y < out_size(); ++y) {
      const double w = (*this)(x, y);
      if (w == 0.0) continue;
      for (std::size_t z = 0; z < next.out_size(); ++z) m(x, z) += w * next(y, z);
    }
  // Renormalize rows against accumulated rounding.
  for (std::size_t x = 0; x < m.rows(); ++x) {
    double s = 0.0;
    for (std::size_t z = 0; z < m.cols(); ++z) s += m(x, z);
    for (std::size_t z = 0; z < m.cols(); ++z) m(x, z) /= s;
  }
  return DMC(std::move(m));
}

std::vector<double> DMC::output(std::span<const double> p_x) const {
  if (p_x.size() != in_size()) throw ConfigError("input distribution size does not match channel");
  std::vector<double> q(out_size(), 0.0);
  for (std::size_t x = 0; x < in_size(); ++x)
    for (std::size_t y = 0; y < out_size(); ++y) q[y] += p_x[x] * (*this)(x, y);
  return q;
}

JointPMF::JointPMF(std::vector<std::size_t> dims, std::vector<double> probs)
    : dims_(std::move(dims)), probs_(std::move(probs)) {
  if (dims_.empty()) throw ConfigError("PMF needs at least one axis");
  for (auto d : dims_)
    if (d == 0) throw ConfigError("PMF axis of size zero");
  if (product_of(dims_) != probs_.size()) throw ConfigError("PMF entries do not match its dimensions");
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) throw ConfigError("PMF entries must be finite and >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > kMassTol) throw ConfigError("PMF mass differs from 1 by more than 1e-12");
}

JointPMF JointPMF::from_vector(std::vector<double> probs) {
  const std::size_t n = probs.size();
  return JointPMF({n}, std::move(probs));
}

JointPMF JointPMF::product(const JointPMF& a, const JointPMF& b) {
  std::vector<std::size_t> dims = a.dims_;
  dims.insert(dims.end(), b.dims_.begin(), b.dims_.end());
  std::vector<double> probs;
  probs.reserve(a.size() * b.size());
  for (double pa : a.probs_)
    for (double pb : b.probs_) probs.push_back(pa * pb);
  // Product of two normalized vectors can drift by a few ulps.
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (auto& p : probs) p /= total;
  return JointPMF(std::move(dims), std::move(probs));
}

double JointPMF::at(std::span<const std::size_t> index) const {
  if (index.size() != dims_.size()) throw ConfigError("PMF index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (index[i] >= dims_[i]) throw ConfigError("PMF index out of range");
    flat = flat * dims_[i] + index[i];
  }
  return probs_[flat];
}

void JointPMF::advance(std::vector<std::size_t>& idx) const {
  for (std::size_t i = dims_.size(); i-- > 0;) {
    if (++idx[i] < dims_[i]) return;
    idx[i] = 0;
  }
}

JointPMF JointPMF::marginal(const Axes& axes) const {
  if (axes.empty()) throw ConfigError("marginal over an empty axis set");
  std::vector<std::size_t> out_dims;
  std::vector<bool> seen(dims_.size(), false);
  for (auto a : axes) {
    if (a >= dims_.size() || seen[a]) throw ConfigError("invalid or repeated marginal axis");
    seen[a] = true;
    out_dims.push_back(dims_[a]);
  }
  const auto out_strides = strides_of(out_dims);
  std::vector<double> out(product_of(out_dims), 0.0);
  std::vector<std::size_t> idx(dims_.size(), 0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    std::size_t o = 0;
    for (std::size_t k = 0; k < axes.size(); ++k) o += idx[axes[k]] * out_strides[k];
    out[o] += probs_[flat];
    advance(idx);
  }
  JointPMF m;
  m.dims_ = std::move(out_dims);
  m.probs_ = std::move(out);
  return m;
}

JointPMF JointPMF::append_channel(std::size_t input_axis, const DMC& channel) const {
  if (input_axis >= dims_.size()) throw ConfigError("channel input axis out of range");
  if (dims_[input_axis] != channel.in_size())
    throw ConfigError("channel input alphabet does not match the PMF axis");
  const std::size_t ny = channel.out_size();
  std::vector<double> out;
  out.reserve(probs_.size() * ny);
  std::vector<std::size_t> idx(dims_.size(), 0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    for (std::size_t y = 0; y < ny; ++y) out.push_back(probs_[flat] * channel(idx[input_axis], y));
    advance(idx);
  }
  JointPMF j;
  j.dims_ = dims_;
  j.dims_.push_back(ny);
  j.probs_ = std::move(out);
  return j;
}

JointPMF JointPMF::relabel(std::size_t axis, std::span<const std::size_t> perm) const {
  if (axis >= dims_.size() || perm.size() != dims_[axis]) throw ConfigError("invalid relabeling");
  const auto strides = strides_of(dims_);
  std::vector<double> out(probs_.size(), 0.0);
  std::vector<std::size_t> idx(dims_.size(), 0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    const std::size_t moved = flat + (perm[idx[axis]] - idx[axis]) * strides[axis];
    out[moved] = probs_[flat];
    advance(idx);
  }
  JointPMF j;
  j.dims_ = dims_;
  j.probs_ = std::move(out);
  return j;
}

double entropy(std::span<const double> pmf) {
  double h = 0.0;
  for (double p : pmf)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

double entropy(const JointPMF& joint) { return entropy(joint.probs()); }

double entropy(const JointPMF& joint, const Axes& axes) {
  if (axes.empty()) return 0.0;
  return entropy(joint.marginal(axes));
}

namespace {

Axes join(const Axes& a, const Axes& b) {
  Axes out = a;
  for (auto x : b)
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  return out;
}

}  // namespace

double conditional_entropy(const JointPMF& joint, const Axes& a, const Axes& given) {
  return entropy(joint, join(a, given)) - entropy(joint, given);
}

double mutual_information(const JointPMF& joint, const Axes& a, const Axes& b) {
  const double mi = entropy(joint, a) + entropy(joint, b) - entropy(joint, join(a, b));
  return std::max(0.0, mi);
}

double conditional_mi(const JointPMF& joint, const Axes& a, const Axes& b, const Axes& given) {
  if (given.empty()) return mutual_information(joint, a, b);
  const double mi = entropy(joint, join(a, given)) + entropy(joint, join(b, given)) -
                    entropy(joint, join(join(a, b), given)) - entropy(joint, given);
  return std::max(0.0, mi);
}

double binary_entropy(double p) {
  const double q = 1.0 - p;
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (q > 0.0) h -= q * std::log(q);
  return h;
}

TextTensor read_text_tensor(std::istream& in) {
  TextTensor t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (!have_header) {
      long long d = 0;
      while (ls >> d) {
        if (d <= 0) throw ConfigError("matrix header dimensions must be positive");
        t.dims.push_back(static_cast<std::size_t>(d));
      }
      if (!ls.eof()) throw ConfigError("malformed matrix header line");
      have_header = !t.dims.empty();
      continue;
    }
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        t.values.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw ConfigError("bad number '" + tok + "'");
      } catch (const std::logic_error&) {
        throw ConfigError("bad number '" + tok + "' in matrix file");
      }
    }
  }
  if (!have_header) throw ConfigError("matrix file has no header line");
  if (t.values.size() != product_of(t.dims))
    throw ConfigError("matrix file entry count does not match its header");
  return t;
}

TextTensor read_text_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return read_text_tensor(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_text_tensor(std::ostream& out, const TextTensor& t) {
  for (std::size_t i = 0; i < t.dims.size(); ++i) out << (i ? " " : "") << t.dims[i];
  out << '\n';
  const std::size_t width = t.dims.empty() ? 1 : t.dims.back();
  auto old = out.precision(17);
  for (std::size_t i = 0; i < t.values.size(); ++i)
    out << t.values[i] << ((i + 1) % width == 0 ? '\n' : ' ');
  out.precision(old);
}

JointPMF load_pmf(const std::string& path) {
  auto t = read_text_tensor_file(path);
  return JointPMF(std::move(t.dims), std::move(t.values));
}

DMC load_dmc(const std::string& path) {
  auto t = read_text_tensor_file(path);
  if (t.dims.size() != 2) throw ConfigError(path + ": channel file needs a 2-D header (in out)");
  return DMC(t.dims[0], t.dims[1], std::move(t.values));
}

DistortionMatrix load_distortion(const std::string& path) {
  auto t = read_text_tensor_file(path);
  if (t.dims.size() != 2) throw ConfigError(path + ": distortion file needs a 2-D header (rows cols)");
  return DistortionMatrix(t.dims[0], t.dims[1], std::move(t.values));
}

}  // namespace semsec::discrete
