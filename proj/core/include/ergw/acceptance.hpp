#pragma once

#include <string>
#include <vector>

namespace ergw::accept {

struct CheckResult {
    std::string id;
    std::string name;
    bool pass = false;
    double value = 0.0;      // headline measured value
    double threshold = 0.0;  // pinned bound the value is compared against
    std::string detail;
    double seconds = 0.0;
};

// ids: conv-identities, summatory-dnest, rational-main-term, wintner-theta,
// kernel-decay, hardy-littlewood, transference, oscillation-trend,
// davenport-decay, delange-ratio, method-equivalence
const std::vector<std::string>& check_ids();

// quick = reduced-size smoke variant (the CLI's verify --quick)
CheckResult run_check(const std::string& id, bool quick);
std::vector<CheckResult> run_all(bool quick);

}  // namespace ergw::accept
