#include "auxsumm/grad_check.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace auxsumm {

std::string GradCheckReport::to_string() const {
  std::ostringstream os;
  os << "max_rel_error=" << max_rel_error << " at input " << worst_input << " element "
     << worst_element << " (analytic=" << analytic << ", numeric=" << numeric << ")";
  return os.str();
}

GradCheckReport grad_check(const ScalarFn& f, std::vector<Tensor> inputs, double epsilon) {
  std::vector<Tensor> analytic;
  const double base = f(inputs, &analytic);
  if (!std::isfinite(base)) throw std::domain_error("grad_check: non-finite loss");
  if (analytic.size() != inputs.size()) {
    throw std::invalid_argument("grad_check: f returned " + std::to_string(analytic.size()) +
                                " gradients for " + std::to_string(inputs.size()) + " inputs");
  }

  GradCheckReport report;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!analytic[i].same_shape(inputs[i])) {
      throw std::invalid_argument("grad_check: gradient shape mismatch on input " +
                                  std::to_string(i));
    }
    for (std::size_t k = 0; k < inputs[i].numel(); ++k) {
      const double saved = inputs[i].data[k];
      inputs[i].data[k] = saved + epsilon;
      const double up = f(inputs, nullptr);
      inputs[i].data[k] = saved - epsilon;
      const double down = f(inputs, nullptr);
      inputs[i].data[k] = saved;
      if (!std::isfinite(up) || !std::isfinite(down)) {
        throw std::domain_error("grad_check: non-finite loss at perturbed point");
      }
      const double numeric = (up - down) / (2.0 * epsilon);
      const double a = analytic[i].data[k];
      const double denom = std::max({std::abs(a), std::abs(numeric), 1e-8});
      const double rel = std::abs(a - numeric) / denom;
      if (rel > report.max_rel_error) {
        report.max_rel_error = rel;
        report.worst_input = i;
        report.worst_element = k;
        report.analytic = a;
        report.numeric = numeric;
      }
    }
  }
  return report;
}

}  // namespace auxsumm
