#ifndef PHOTOSPIN_REPORT_HPP
#define PHOTOSPIN_REPORT_HPP

#include <string>
#include <vector>

namespace photospin {

// One named deviation from an identity/property suite.
struct CheckRecord {
  std::string name;
  double deviation = 0.0;
};

struct CheckReport {
  std::vector<CheckRecord> records;

  void add(std::string name, double deviation) {
    records.push_back({std::move(name), deviation});
  }
  void merge(const CheckReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
  }
  double max_deviation() const {
    double m = 0.0;
    for (const auto& r : records) m = std::max(m, r.deviation);
    return m;
  }
  const CheckRecord* first_failing(double tol) const {
    for (const auto& r : records)
      if (!(r.deviation < tol)) return &r;
    return nullptr;
  }
};

}  // namespace photospin

#endif
