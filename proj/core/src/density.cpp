#include "hbeam/density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hbeam/common.hpp"

namespace hbeam {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

void check_bounds(double alpha, double beta) {
    require(std::isfinite(alpha) && std::isfinite(beta), "density bounds must be finite");
    require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
    require(beta >= 1.0, "beta must be >= 1");
    require((alpha < 1.0) == (beta > 1.0), "alpha < 1 < beta, or alpha = beta = 1");
}

}  // namespace

Density::Density(double alpha, double beta, std::vector<double> breakpoints,
                 std::vector<double> values)
    : alpha_(alpha), beta_(beta), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {}

Density Density::create(double alpha, double beta, std::vector<double> breakpoints,
                        std::vector<double> values) {
    Density p(alpha, beta, std::move(breakpoints), std::move(values));
    auto v = p.violations();
    if (!v.empty()) throw std::invalid_argument("invalid density: " + v.front());
    return p;
}

Density Density::unchecked(double alpha, double beta, std::vector<double> breakpoints,
                           std::vector<double> values) {
    return Density(alpha, beta, std::move(breakpoints), std::move(values));
}

Density Density::constant(double alpha, double beta) {
    check_bounds(alpha, beta);
    return Density(alpha, beta, {}, {1.0});
}

double Density::eval(double x) const {
    double ax = std::abs(x);
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), ax);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double Density::mass() const {
    double sum = 0.0;
    double left = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        double right = i < breakpoints_.size() ? breakpoints_[i] : pi;
        sum += values_[i] * (right - left);
        left = right;
    }
    return 2.0 * sum;
}

bool Density::is_bang_bang() const {
    return std::all_of(values_.begin(), values_.end(),
                       [&](double v) { return v == alpha_ || v == beta_; });
}

std::vector<std::string> Density::violations() const {
    std::vector<std::string> out;
    if (!(alpha_ > 0.0 && alpha_ <= 1.0 && beta_ >= 1.0 && (alpha_ < 1.0) == (beta_ > 1.0)))
        out.push_back("bounds must satisfy 0 < alpha < 1 < beta or alpha = beta = 1");
    if (values_.size() != breakpoints_.size() + 1) {
        out.push_back("values must have one more entry than breakpoints");
        return out;
    }
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        double b = breakpoints_[i];
        if (!(b > 0.0 && b < pi)) out.push_back("breakpoint outside (0, pi)");
        if (i > 0 && !(b > breakpoints_[i - 1])) out.push_back("breakpoints not strictly increasing");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        double v = values_[i];
        if (!(v >= alpha_ && v <= beta_)) out.push_back("value outside [alpha, beta]");
        if (i > 0 && v == values_[i - 1]) out.push_back("adjacent pieces share a value");
    }
    double m = mass();
    if (!(std::abs(m - 2.0 * pi) <= mass_tolerance)) {
        std::ostringstream os;
        os.precision(17);
        os << "mass " << m << " differs from 2*pi";
        out.push_back(os.str());
    }
    return out;
}

PierLayout::PierLayout(double a_value) : a(a_value) {
    require(std::isfinite(a_value) && a_value > 0.0 && a_value < 1.0,
            "pier parameter a must lie in (0, 1)");
}

double PierLayout::pier() const { return a * pi; }

double heavy_half_measure(double alpha, double beta) {
    return (1.0 - alpha) / (beta - alpha) * pi;
}

double two_step_rho(double alpha, double beta, Center center) {
    require(alpha > 0.0 && alpha < 1.0 && beta > 1.0, "two-step density needs 0 < alpha < 1 < beta");
    return center == Center::heavy ? (1.0 - alpha) / (beta - alpha)
                                   : (beta - 1.0) / (beta - alpha);
}

Density make_two_step(double alpha, double beta, Center center) {
    double rho = two_step_rho(alpha, beta, center);
    if (center == Center::heavy) return Density::create(alpha, beta, {rho * pi}, {beta, alpha});
    return Density::create(alpha, beta, {rho * pi}, {alpha, beta});
}

Density from_indicator(double alpha, double beta, std::vector<Interval> heavy_set,
                       double length_tolerance) {
    check_bounds(alpha, beta);
    require(alpha < 1.0, "from_indicator needs alpha < 1 < beta");

    std::sort(heavy_set.begin(), heavy_set.end(),
              [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
    std::vector<Interval> merged;
    for (Interval iv : heavy_set) {
        require(iv.lo >= 0.0 && iv.hi <= pi && iv.lo <= iv.hi, "heavy interval outside [0, pi]");
        if (iv.length() <= 1e-12) continue;
        if (!merged.empty() && iv.lo <= merged.back().hi + 1e-12)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }

    const double target = (1.0 - alpha) / (beta - alpha) * pi;
    double total = 0.0;
    for (const auto& iv : merged) total += iv.length();
    if (!(std::abs(total - target) <= length_tolerance)) {
        std::ostringstream os;
        os.precision(17);
        os << "heavy set length " << total << " does not match the mass constraint " << target;
        throw std::invalid_argument(os.str());
    }

    // Move the largest endpoint that is not pinned at 0 or pi.
    if (!merged.empty()) {
        Interval& last = merged.back();
        if (last.hi < pi) {
            last.hi = last.lo + (target - (total - last.length()));
        } else if (last.lo > 0.0) {
            last.lo = pi - (target - (total - last.length()));
        }
    }

    std::vector<double> bps;
    std::vector<double> vals;
    double pos = 0.0;
    auto push = [&](double right, double v) {
        if (right <= pos) return;
        if (!vals.empty() && vals.back() == v) {
            pos = right;
            return;
        }
        if (!vals.empty()) bps.push_back(pos);
        vals.push_back(v);
        pos = right;
    };
    for (const auto& iv : merged) {
        push(iv.lo, alpha);
        push(iv.hi, beta);
    }
    push(pi, alpha);
    return Density::create(alpha, beta, std::move(bps), std::move(vals));
}

std::string to_json(const Density& p) {
    nlohmann::json j;
    j["alpha"] = p.alpha();
    j["beta"] = p.beta();
    j["breakpoints"] = p.breakpoints();
    j["values"] = p.values();
    return j.dump();
}

Density density_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        return Density::create(j.at("alpha").get<double>(), j.at("beta").get<double>(),
                               j.at("breakpoints").get<std::vector<double>>(),
                               j.at("values").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed density record: ") + e.what());
    }
}

}  // namespace hbeam
