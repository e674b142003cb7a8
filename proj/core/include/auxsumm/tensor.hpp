#ifndef AUXSUMM_TENSOR_HPP
#define AUXSUMM_TENSOR_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace auxsumm {

/// Dense row-major tensor of doubles. All numerics run at 64-bit precision;
/// checkpoints narrow parameters to 32-bit on disk.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> s);

  static Tensor zeros(std::vector<int> shape);
  static Tensor scalar(double v);
  static Tensor from_vec(std::vector<double> v);

  int ndim() const { return static_cast<int>(shape.size()); }
  std::size_t numel() const { return data.size(); }
  int dim(int i) const { return shape[static_cast<std::size_t>(i)]; }
  int rows() const { return dim(0); }
  int cols() const { return dim(1); }

  double& at(int i) { return data[static_cast<std::size_t>(i)]; }
  double at(int i) const { return data[static_cast<std::size_t>(i)]; }
  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols() + j]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols() + j]; }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }
  void fill(double v);
  bool all_finite() const;
  std::string shape_str() const;
};

std::size_t shape_numel(const std::vector<int>& shape);

/// splitmix64 generator. Hand-rolled so that seeded runs are bit-identical
/// across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1), 53-bit resolution.
  double next_double();
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). n must be > 0.
  std::size_t next_below(std::size_t n);

 private:
  std::uint64_t state_;
};

Tensor uniform_tensor(std::vector<int> shape, double lo, double hi, Rng& rng);

/// In-place Fisher-Yates with the portable Rng.
template <typename T>
void deterministic_shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = rng.next_below(i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace auxsumm

#endif  // AUXSUMM_TENSOR_HPP
