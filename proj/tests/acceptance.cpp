// One line per acceptance criterion; exit status is nonzero if any fails.

#include "gemo/verify.hpp"

#include <chrono>
#include <cstdio>

int main()
{
    int failed = 0;
    for (int id = 1; id <= gemo::kCriterionCount; ++id) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = gemo::check_criterion(id);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d (%s): %s [%.2f s]\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
                    r.summary.c_str(), s);
        if (!r.passed) ++failed;
    }
    std::printf("%d of %d criteria passed\n", gemo::kCriterionCount - failed, gemo::kCriterionCount);
    return failed == 0 ? 0 : 1;
}
