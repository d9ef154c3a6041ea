#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace filament {

/// An empirically fitted stand-in for one of the non-constructive constants,
/// together with the sample it was fitted on.
struct FittedConstant {
    double value = 0.0;
    std::string fitted_on;

    friend bool operator==(const FittedConstant&, const FittedConstant&) = default;
};

/// A named table: column names plus rows of doubles.
struct Series {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row) { rows.push_back(std::move(row)); }

    friend bool operator==(const Series&, const Series&) = default;
};

struct ExperimentReport {
    std::string name;
    std::map<std::string, double> parameters;
    std::map<std::string, std::vector<double>> parameter_lists;
    std::uint64_t seed = 0;
    std::map<std::string, Series> series;
    std::map<std::string, FittedConstant> fitted_constants;
    std::map<std::string, double> convergence_orders;
    std::map<std::string, bool> verdicts;

    bool passed() const {
        for (const auto& [key, ok] : verdicts)
            if (!ok) return false;
        return true;
    }

    friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// log2(coarse_error / fine_error) per halving of the mesh spacing.
double convergence_order(double coarse_error, double fine_error);

} // namespace filament
