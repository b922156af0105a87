#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tdiff::cli {

/// One numeric check. An upper check passes when value <= bound, a lower
/// one when value > bound.
struct Check {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool upper = true;
    bool passed = false;
};

struct CriterionReport {
    int criterion = 0;
    std::string title;
    std::vector<Check> checks;
    bool passed() const;
};

/// Runs the built-in cross-oracle battery. A tolerance override replaces the
/// bound of every upper check (it is what makes `--tol 1e-15` fail).
std::vector<CriterionReport> run_validation(std::optional<double> tolerance, int threads);

}  // namespace tdiff::cli
