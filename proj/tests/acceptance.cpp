// One line per acceptance criterion; exit status is the number of failures.
#include "smf/validation.hpp"

#include <cstdio>

int main() {
    int failed = 0;
    for (const auto& r : smf::validation::run_acceptance()) {
        std::printf("%s\n", smf::validation::format_line(r).c_str());
        std::fflush(stdout);
        failed += !r.passed;
    }
    std::printf("acceptance: %d/8 passed\n", 8 - failed);
    return failed == 0 ? 0 : 1;
}
