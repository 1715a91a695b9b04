#include <chrono>
#include <ostream>

#include "cli/cli.hpp"

namespace v2v::cli {

int cmd_oracle_check(const OracleCheckConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const OracleCheckReport report = run_oracle_check(config);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  err << "oracle-check: " << report.trials << " trial(s) in " << elapsed.count() << " s\n";
  out << "regime=" << to_string(config.regime) << '\n';
  out << "trials=" << report.trials << '\n';
  out << "bins_compared=" << report.bins_compared << '\n';
  out << "events=" << report.events << '\n';
  out << "mismatched_bins=" << report.mismatched_bins << '\n';
  out << "max_abs_deviation=" << report.max_abs_deviation << '\n';
  out << "exactness_asserted=" << (report.exact_regime ? "yes" : "no") << '\n';
  out << "status=" << (report.passed() ? "pass" : "fail") << '\n';
  return report.passed() ? kExitOk : kExitRuntime;
}

}  // namespace v2v::cli
