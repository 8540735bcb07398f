// Acceptance suite runner: one pass/fail line per criterion.
//   acceptance [--quick] [--only <check-id>]
// Exit code = number of failed criteria.

#include <cstdio>
#include <cstring>
#include <string>

#include "ergw/acceptance.hpp"

int main(int argc, char** argv) {
    bool quick = false;
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) {
            quick = true;
        } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = argv[++i];
        } else {
            std::fprintf(stderr, "usage: acceptance [--quick] [--only <check-id>]\n");
            return 2;
        }
    }

    int failed = 0;
    auto report = [&](const ergw::accept::CheckResult& r) {
        std::printf("[%s] %-20s value=%-12.6g threshold=%-12.6g (%.2fs)  %s\n",
                    r.pass ? "PASS" : "FAIL", r.id.c_str(), r.value, r.threshold, r.seconds,
                    r.detail.c_str());
        if (!r.pass) ++failed;
    };

    if (!only.empty()) {
        report(ergw::accept::run_check(only, quick));
    } else {
        for (const auto& id : ergw::accept::check_ids())
            report(ergw::accept::run_check(id, quick));
    }
    return failed;
}
