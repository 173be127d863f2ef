#pragma once

#include <cstddef>
#include <string>

namespace catprob {

/// Outcome of checking one equational law over a batch of instances.
/// Equality is exact; a single mismatch fails the law. The first witness of
/// failure is kept in human-readable form.
struct LawCheck {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_counterexample;

  bool ok() const { return failed == 0; }

  void record(bool holds, const std::string& witness) {
    ++checked;
    if (!holds) {
      if (failed == 0) first_counterexample = witness;
      ++failed;
    }
  }

  void absorb(const LawCheck& other) {
    if (failed == 0 && other.failed > 0) first_counterexample = other.first_counterexample;
    checked += other.checked;
    failed += other.failed;
  }
};

}  // namespace catprob
