#pragma once

#include <string>
#include <vector>

namespace vmw {

struct CheckResult {
    std::string id;
    bool pass = false;
    std::string detail;
};

/// A1 .. A12 in order.
const std::vector<std::string>& acceptance_ids();

CheckResult run_acceptance(const std::string& id);

/// The five reduced-operator relations at (j, m) = (10, 3).
std::vector<CheckResult> appendix_a_suite();

/// "A1".."A12", "appendix-a" or "all"; std::invalid_argument for anything else.
std::vector<CheckResult> run_suite(const std::string& name);

} // namespace vmw
