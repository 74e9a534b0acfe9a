/// Full-scale verification battery: one PASS/FAIL line per criterion, exit 0
/// only when every criterion passes.

#include <cstdio>

#include "zel/verify.hpp"

int main() {
    auto results = zel::run_verification(zel::VerifyLevel::Full);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s %s (%.3fs) %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
