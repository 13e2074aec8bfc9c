#pragma once

#include <string>
#include <vector>

#include "qdwg/graph.hpp"

namespace qdwg {

/// What the two-layer recipe actually does, compared against N-controlled Z.
struct NczReport {
  int num_controls = 0;
  Vector produced;  // diagonal over N+1 qubits, target last
  Vector ideal;     // −1 only on |g…g⟩
  double deviation = 0.0;  // sqrt(max(0, 2 − 2|Tr(U†V)|/d)); 0 iff equal up to global phase
  double max_entry_deviation = 0.0;  // after removing the best global phase
  bool equivalent = false;

  std::string table() const;
};

struct NczPlan {
  std::vector<DriveSchedule> layers;
  NczReport report;
};

/// All-pairs CZ over N+1 dots, then all-pairs CZ over the first N dots (the
/// controls). The report measures the result; it does not assume NCZ.
NczPlan ncz_schedule(int num_controls, double lambda0 = 0.0024981, double ratio_min = 100.0);

}  // namespace qdwg
