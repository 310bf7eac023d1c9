#include "hbeam_cli/reference.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#ifndef HBEAM_DEFAULT_DATA_DIR
#define HBEAM_DEFAULT_DATA_DIR "data"
#endif

namespace hbeam::cli {

namespace {

using json = nlohmann::json;

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

TableKind parse_kind(const std::string& s) {
    if (s == "two_step") return TableKind::two_step;
    if (s == "pier_profile") return TableKind::pier_profile;
    if (s == "optimized") return TableKind::optimized;
    throw std::invalid_argument("unknown table kind " + s);
}

ComparisonRow energy_row(const std::string& table, double alpha, double beta, double a,
                         double computed, double reference, double tol, double unit) {
    const double c = computed / unit;
    const double dev = std::abs(c - reference) / reference;
    return {table, alpha, beta, a, "energy", num(c), num(reference), dev, true, dev <= tol};
}

ComparisonRow exact_row(const std::string& table, double alpha, double beta, double a,
                        const std::string& quantity, double computed, double reference,
                        double tol, bool gating) {
    const double dev = std::abs(computed - reference);
    return {table, alpha, beta, a, quantity, num(computed), num(reference), dev, gating, dev <= tol};
}

ComparisonRow label_row(const std::string& table, double alpha, double beta, double a,
                        const std::string& quantity, const std::string& computed,
                        const std::string& reference, bool gating) {
    return {table, alpha, beta, a, quantity, computed, reference, nan, gating,
            computed == reference};
}

constexpr double grid_match = 1e-9;
// Tabulated densities jump parameters are printed with two decimals.
constexpr double rho_match = 0.005 + 1e-12;

}  // namespace

const ReferenceTable& ReferenceData::table(const std::string& id) const {
    for (const auto& t : tables)
        if (t.id == id) return t;
    throw std::invalid_argument("unknown table " + id);
}

double parse_fraction(const std::string& label) {
    auto slash = label.find('/');
    try {
        if (slash == std::string::npos) return std::stod(label);
        return std::stod(label.substr(0, slash)) / std::stod(label.substr(slash + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed number " + label);
    }
}

std::string ratio_label(std::size_t pair) {
    return std::to_string(pair + 1) + "/" + std::to_string(pair);
}

std::string default_reference_path() {
    return std::string(HBEAM_DEFAULT_DATA_DIR) + "/reference_values.json";
}

ReferenceData load_reference(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open reference data " + path);
    try {
        json j = json::parse(in);
        ReferenceData d;
        d.version = j.at("version").get<int>();
        d.energy_unit = j.at("energy_unit").get<double>();
        const auto& b = j.at("baseline");
        d.baseline = {b.at("a").get<double>(), b.at("energy").get<double>(),
                      b.at("ratio").get<std::string>(), b.at("tolerance").get<double>()};
        for (const auto& [id, t] : j.at("tables").items()) {
            ReferenceTable tab;
            tab.id = id;
            tab.kind = parse_kind(t.at("kind").get<std::string>());
            tab.provenance = t.at("provenance").get<std::string>();
            tab.tolerance = t.at("tolerance").get<double>();
            if (tab.kind == TableKind::two_step) {
                tab.center = t.at("center").get<std::string>() == "light" ? Center::light
                                                                         : Center::heavy;
                for (const auto& c : t.at("cells")) {
                    auto al = c.at("alpha").get<std::string>();
                    auto be = c.at("beta").get<std::string>();
                    tab.two_step.push_back({al, be, parse_fraction(al), parse_fraction(be),
                                            c.at("energy").get<double>(),
                                            c.at("ratio").get<std::string>(),
                                            c.at("a_opt").get<double>(), c.at("rho").get<double>()});
                }
            } else if (tab.kind == TableKind::pier_profile) {
                tab.alpha_label = t.at("alpha").get<std::string>();
                tab.alpha = parse_fraction(tab.alpha_label);
                for (const auto& c : t.at("columns")) {
                    ProfileColumn col;
                    col.beta_label = c.at("beta").get<std::string>();
                    col.beta = parse_fraction(col.beta_label);
                    for (const auto& r : c.at("rows"))
                        col.rows.push_back({r.at("a").get<double>(), r.at("energy").get<double>(),
                                            r.at("jumps").get<std::size_t>(),
                                            r.at("ratio").get<std::string>()});
                    tab.columns.push_back(std::move(col));
                }
            } else {
                for (const auto& c : t.at("cells")) {
                    auto al = c.at("alpha").get<std::string>();
                    auto be = c.at("beta").get<std::string>();
                    tab.optimized.push_back({al, be, parse_fraction(al), parse_fraction(be),
                                             c.at("energy").get<double>(),
                                             c.at("ratio").get<std::string>(),
                                             c.at("jumps").get<std::size_t>(),
                                             c.at("a_opt").get<double>()});
                }
            }
            d.tables.push_back(std::move(tab));
        }
        return d;
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed reference data " + path + ": " + e.what());
    }
}

bool ComparisonReport::all_pass() const { return failures() == 0; }

std::size_t ComparisonReport::failures() const {
    std::size_t n = 0;
    for (const auto& r : rows)
        if (r.gating && !r.pass) ++n;
    return n;
}

const SweepResult& find_cell(const std::vector<SweepResult>& cells, double alpha, double beta) {
    for (const auto& c : cells)
        if (std::abs(c.alpha - alpha) < 1e-12 && std::abs(c.beta - beta) < 1e-12) return c;
    std::ostringstream os;
    os << "no computed cell for alpha = " << alpha << ", beta = " << beta;
    throw std::invalid_argument(os.str());
}

ComparisonReport compare_two_step(const ReferenceTable& ref, const std::vector<SweepResult>& cells,
                                  double unit) {
    ComparisonReport rep;
    for (const auto& c : ref.two_step) {
        const auto& s = find_cell(cells, c.alpha, c.beta);
        const auto& o = s.optimum();
        rep.rows.push_back(energy_row(ref.id, c.alpha, c.beta, nan, o.energy, c.energy,
                                      ref.tolerance, unit));
        rep.rows.push_back(exact_row(ref.id, c.alpha, c.beta, nan, "a_opt", o.a, c.a_opt,
                                     grid_match, true));
        rep.rows.push_back(exact_row(ref.id, c.alpha, c.beta, nan, "rho", o.rho.value_or(nan),
                                     c.rho, rho_match, true));
        rep.rows.push_back(label_row(ref.id, c.alpha, c.beta, nan, "ratio", ratio_label(o.pair),
                                     c.ratio, true));
    }
    return rep;
}

ComparisonReport compare_profile(const ReferenceTable& ref, const std::vector<SweepResult>& columns,
                                 double unit) {
    ComparisonReport rep;
    for (const auto& col : ref.columns) {
        const auto& s = find_cell(columns, ref.alpha, col.beta);
        std::size_t best_ref = 0;
        for (std::size_t i = 0; i < col.rows.size(); ++i) {
            const auto& r = col.rows[i];
            if (r.energy > col.rows[best_ref].energy) best_ref = i;
            const SweepRow* row = nullptr;
            for (const auto& sr : s.rows)
                if (std::abs(sr.a - r.a) < grid_match) row = &sr;
            if (!row) throw std::invalid_argument("pier grid misses a = " + num(r.a));
            rep.rows.push_back(energy_row(ref.id, ref.alpha, col.beta, r.a, row->energy, r.energy,
                                          ref.tolerance, unit));
            rep.rows.push_back(exact_row(ref.id, ref.alpha, col.beta, r.a, "jumps",
                                         static_cast<double>(row->jumps),
                                         static_cast<double>(r.jumps), 0.0, true));
            rep.rows.push_back(label_row(ref.id, ref.alpha, col.beta, r.a, "ratio",
                                         ratio_label(row->pair), r.ratio, false));
        }
        rep.rows.push_back(exact_row(ref.id, ref.alpha, col.beta, nan, "a_opt", s.a_opt(),
                                     col.rows[best_ref].a, grid_match, true));
    }
    return rep;
}

ComparisonReport compare_optimized(const ReferenceTable& ref, const std::vector<SweepResult>& cells,
                                   double unit) {
    ComparisonReport rep;
    for (const auto& c : ref.optimized) {
        const auto& s = find_cell(cells, c.alpha, c.beta);
        const auto& o = s.optimum();
        rep.rows.push_back(energy_row(ref.id, c.alpha, c.beta, nan, o.energy, c.energy,
                                      ref.tolerance, unit));
        rep.rows.push_back(exact_row(ref.id, c.alpha, c.beta, nan, "jumps",
                                     static_cast<double>(o.jumps), static_cast<double>(c.jumps),
                                     0.0, true));
        rep.rows.push_back(exact_row(ref.id, c.alpha, c.beta, nan, "a_opt", o.a, c.a_opt,
                                     grid_match, true));
        rep.rows.push_back(label_row(ref.id, c.alpha, c.beta, nan, "ratio", ratio_label(o.pair),
                                     c.ratio, false));
    }
    return rep;
}

}  // namespace hbeam::cli
