#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace gemo {

struct VerifyOptions {
    /// Deformation strength used for the example-1 spectrum solves. The
    /// expected values stay those of α = 1, so any other value should fail.
    double alpha = 1.0;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    /// One line with the measured values and tolerances.
    std::string summary;
    nlohmann::ordered_json details;
};

inline constexpr int kCriterionCount = 8;

/// Runs acceptance criterion `id` (1..8). Library errors are caught and
/// reported as a failure.
[[nodiscard]] CriterionResult check_criterion(int id, const VerifyOptions& opt = {});
[[nodiscard]] std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt = {});
[[nodiscard]] nlohmann::ordered_json to_json(const std::vector<CriterionResult>& results);

/// Eigenvalues of a small dense symmetric matrix from sign changes of
/// det(A − λI), refined by bisection. Independent of the eigen module.
[[nodiscard]] std::vector<double> brute_force_eigenvalues(const std::vector<std::vector<double>>& a);

} // namespace gemo
