#pragma once

#include <string>
#include <vector>

#include "tori/json_io.hpp"

namespace tori::selftest {

struct SuiteResult {
    std::string name;
    bool passed = false;
    double ms = 0;
    json details;
};

struct Options {
    bool stress = false;           // raises the Fell-bundle period to 8
    unsigned long long seed = 1;
};

SuiteResult run_exterior(const Options& opts);
SuiteResult run_twogroup(const Options& opts);
SuiteResult run_cohomology(const Options& opts);
SuiteResult run_brauer(const Options& opts);
SuiteResult run_fellbundle(const Options& opts);

std::vector<SuiteResult> run_all(const Options& opts, const std::string& only = "");

} // namespace tori::selftest
