#include "vmw/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <string>

int main(int argc, char** argv) {
    std::vector<std::string> ids;
    for (int i = 1; i < argc; ++i) ids.emplace_back(argv[i]);
    if (ids.empty()) ids = vmw::acceptance_ids();
    int failed = 0;
    for (const auto& id : ids) {
        const auto t0 = std::chrono::steady_clock::now();
        const vmw::CheckResult r = vmw::run_acceptance(id);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %s  %s  (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.detail.c_str(), secs);
        if (!r.pass) ++failed;
    }
    return failed ? 1 : 0;
}
