#ifndef FRACHARDY_REPORT_HPP
#define FRACHARDY_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace frachardy {

struct Check {
    std::string name;
    double value = 0.0;
    double target = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// Serializable record of a verification run. Deterministic: no timestamps
/// here (run metadata goes in a separate file).
struct Report {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::vector<Check> checks;
    std::vector<std::string> artifacts;

    bool all_pass() const;
    Check& add(const std::string& name, double value, double target, double tol);
    /// pass condition |value - target| <= tol
    nlohmann::json to_json() const;
    std::string to_csv() const;
};

} // namespace frachardy

#endif
