#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tori/json_io.hpp"

namespace tori {

// Result of running one law over a batch of samples.  Failures carry the
// offending inputs and the residual, so reports are actionable.
struct LawResult {
    std::string law;
    long long samples = 0;
    struct Failure {
        json inputs;
        json residual;
    };
    std::vector<Failure> failures;

    bool ok() const { return failures.empty(); }
};

struct CheckReport {
    json header;  // conventions and parameters, e.g. sign choices
    std::vector<LawResult> laws;

    bool ok() const {
        return std::all_of(laws.begin(), laws.end(), [](const LawResult& l) { return l.ok(); });
    }

    LawResult& law(const std::string& name) {
        for (auto& l : laws)
            if (l.law == name) return l;
        laws.push_back(LawResult{name, 0, {}});
        return laws.back();
    }

    void record(const std::string& name, bool passed, json inputs, json residual) {
        LawResult& l = law(name);
        ++l.samples;
        if (!passed) l.failures.push_back({std::move(inputs), std::move(residual)});
    }

    json to_json() const {
        json out;
        if (!header.is_null()) out["header"] = header;
        out["ok"] = ok();
        json laws_json = json::array();
        for (const auto& l : laws) {
            json fails = json::array();
            for (const auto& f : l.failures)
                fails.push_back(json{{"inputs", f.inputs}, {"residual", f.residual}});
            // Deterministic output: failures sorted by their serialized inputs.
            std::sort(fails.begin(), fails.end(),
                      [](const json& a, const json& b) { return a.dump() < b.dump(); });
            laws_json.push_back(json{{"law", l.law}, {"samples", l.samples}, {"failures", fails}});
        }
        out["laws"] = laws_json;
        return out;
    }
};

} // namespace tori
