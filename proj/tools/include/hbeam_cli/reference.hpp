#pragma once

#include <string>
#include <vector>

#include "hbeam/optimizer.hpp"

namespace hbeam::cli {

// Published reference values; energies are stored in units of 100.
struct TwoStepCell {
    std::string alpha_label;
    std::string beta_label;
    double alpha;
    double beta;
    double energy;
    std::string ratio;
    double a_opt;
    double rho;
};

struct ProfileRow {
    double a;
    double energy;
    std::size_t jumps;
    std::string ratio;
};

struct ProfileColumn {
    std::string beta_label;
    double beta;
    std::vector<ProfileRow> rows;
};

struct OptimizedCell {
    std::string alpha_label;
    std::string beta_label;
    double alpha;
    double beta;
    double energy;
    std::string ratio;
    std::size_t jumps;
    double a_opt;
};

enum class TableKind { two_step, pier_profile, optimized };

struct ReferenceTable {
    std::string id;
    TableKind kind;
    std::string provenance;
    double tolerance;
    Center center = Center::heavy;        // two_step
    std::vector<TwoStepCell> two_step;    // two_step
    std::string alpha_label;              // pier_profile
    double alpha = 0.0;                   // pier_profile
    std::vector<ProfileColumn> columns;   // pier_profile
    std::vector<OptimizedCell> optimized; // optimized
};

struct Baseline {
    double a;
    double energy;
    std::string ratio;
    double tolerance;
};

struct ReferenceData {
    int version;
    double energy_unit;
    Baseline baseline;
    std::vector<ReferenceTable> tables;

    const ReferenceTable& table(const std::string& id) const;
};

ReferenceData load_reference(const std::string& path);
std::string default_reference_path();

double parse_fraction(const std::string& label);
// "(j+1)/j" for the 1-based lower index j.
std::string ratio_label(std::size_t pair);

struct ComparisonRow {
    std::string table;
    double alpha;
    double beta;
    double a;  // NaN for per-cell quantities
    std::string quantity;
    std::string computed;
    std::string reference;
    double deviation;  // relative for energies, absolute otherwise, NaN for labels
    bool gating;       // counts toward the exit status
    bool pass;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;

    bool all_pass() const;
    std::size_t failures() const;
};

// Both sweeps hold one SweepResult per material cell.
ComparisonReport compare_two_step(const ReferenceTable& ref, const std::vector<SweepResult>& cells,
                                  double energy_unit);
ComparisonReport compare_profile(const ReferenceTable& ref, const std::vector<SweepResult>& columns,
                                 double energy_unit);
ComparisonReport compare_optimized(const ReferenceTable& ref, const std::vector<SweepResult>& cells,
                                   double energy_unit);

const SweepResult& find_cell(const std::vector<SweepResult>& cells, double alpha, double beta);

}  // namespace hbeam::cli
