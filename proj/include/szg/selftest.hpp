#ifndef SZG_SELFTEST_HPP
#define SZG_SELFTEST_HPP

#include <string>
#include <vector>

namespace szg {

struct SelfTestResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Closed-form oracle battery: every kernel route is compared against an
// independently summed series or exact formula on the built-in presets.
std::vector<SelfTestResult> run_selftest();

}  // namespace szg

#endif
