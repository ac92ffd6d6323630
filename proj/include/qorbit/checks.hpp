#pragma once

#include <map>
#include <string>
#include <vector>

namespace qorbit {

/// One acceptance criterion run: name, verdict and a short summary line.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Registered suite names, in criterion order.
std::vector<std::string> check_names();

/// Run one named suite. Recognized options: "max-rank" (theosec), "seed".
CheckResult run_check(const std::string& name,
                      const std::map<std::string, std::string>& opts = {});

std::vector<CheckResult> run_all_checks(const std::map<std::string, std::string>& opts = {});

} // namespace qorbit
