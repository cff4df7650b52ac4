#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tg {

// Runs one CLI invocation. `out` receives the deterministic result document
// (text or JSON); `err` receives diagnostics and the timing line. Exit codes:
// 0 ok (and unsat without --fail-on-unsat), 1 unsat with --fail-on-unsat,
// 2 errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tg
