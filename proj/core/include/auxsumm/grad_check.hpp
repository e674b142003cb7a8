#ifndef AUXSUMM_GRAD_CHECK_HPP
#define AUXSUMM_GRAD_CHECK_HPP

#include <functional>
#include <string>
#include <vector>

#include "auxsumm/tensor.hpp"

namespace auxsumm {

/// A differentiable scalar function of several tensors.
///
/// Called with `grads == nullptr` it only evaluates the scalar; otherwise it
/// must also fill `*grads` with d(loss)/d(input_i), one tensor per input,
/// computed analytically (typically by building a Graph and calling
/// backward).
using ScalarFn =
    std::function<double(const std::vector<Tensor>& inputs, std::vector<Tensor>* grads)>;

struct GradCheckReport {
  double max_rel_error = 0.0;
  // location of the worst element
  std::size_t worst_input = 0;
  std::size_t worst_element = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  std::string to_string() const;
};

/// Central-difference check of analytic gradients.
///
/// Relative error per element is |a - n| / max(|a|, |n|, 1e-8). Returns the
/// report with the max over every element of every input. Throws if f
/// produces a non-finite value at any evaluation point.
GradCheckReport grad_check(const ScalarFn& f, std::vector<Tensor> inputs,
                           double epsilon = 1e-5);

}  // namespace auxsumm

#endif  // AUXSUMM_GRAD_CHECK_HPP
