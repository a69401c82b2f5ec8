#pragma once

#include <functional>
#include <string>
#include <vector>

namespace orbiloop::cli {

struct CheckResult {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// The invariant suite of every module; checks whose "module/name" does not contain
/// `filter` are skipped. `progress` is called after each check.
std::vector<CheckResult> runSelftest(const std::string& filter = "",
                                     const std::function<void(const CheckResult&)>& progress = {});

}  // namespace orbiloop::cli
