#pragma once

#include <string>
#include <vector>

namespace dp3::cli {

struct SelftestOptions {
  /// Added to b inside the Re I2 = (b/8) I1 check only; nonzero values
  /// must make that check fail.
  double perturb_b = 0.0;
};

struct SelftestCheck {
  std::string name;
  double measured;
  double tolerance;
  bool pass;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;

  bool all_pass() const;
  std::string text() const;
};

SelftestReport cmd_selftest(const SelftestOptions& options = {});

}  // namespace dp3::cli
