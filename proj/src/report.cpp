#include "frachardy/report.hpp"

#include <cmath>
#include <cstdio>

namespace frachardy {

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

Check& Report::add(const std::string& name, double value, double target, double tol) {
    Check c;
    c.name = name;
    c.value = value;
    c.target = target;
    c.tol = tol;
    c.pass = std::isfinite(value) && std::abs(value - target) <= tol;
    checks.push_back(c);
    return checks.back();
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"value", c.value},
                               {"target", c.target},
                               {"tol", c.tol},
                               {"pass", c.pass}});
    }
    j["artifacts"] = artifacts;
    return j;
}

std::string Report::to_csv() const {
    std::string out = "name,value,target,tol,pass\n";
    char buf[128];
    for (const auto& c : checks) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%d\n", c.name.c_str(), c.value,
                      c.target, c.tol, c.pass ? 1 : 0);
        out += buf;
    }
    return out;
}

} // namespace frachardy
