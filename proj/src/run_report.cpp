#include "solitonlab/run_report.hpp"

namespace solitonlab {

const ConservationMetrics* RunReport::metric(const std::string& quantity) const {
  for (const auto& m : conservation) {
    if (m.quantity == quantity) return &m;
  }
  return nullptr;
}

}  // namespace solitonlab
