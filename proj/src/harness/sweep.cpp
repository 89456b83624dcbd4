#include "riscfo/harness/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "riscfo/analysis.hpp"

namespace riscfo::harness {

namespace {

double parse_number(const std::string& s, const std::string& key) {
    if (s == "inf")
        return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw ConfigError("sweep: bad number '" + s + "' for " + key);
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, sep);)
        out.push_back(part);
    return out;
}

std::vector<double> parse_values(const std::string& text, const std::string& key) {
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw ConfigError("sweep: range for " + key + " must be start:step:stop");
        const double start = parse_number(parts[0], key);
        const double step = parse_number(parts[1], key);
        const double stop = parse_number(parts[2], key);
        if (!(step > 0) || !(stop >= start) || !std::isfinite(stop))
            throw ConfigError("sweep: range for " + key + " needs step > 0 and stop >= start");
        const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 10'000'000)
            throw ConfigError("sweep: range for " + key + " is too long");
        std::vector<double> out;
        for (long long i = 0; i < count; ++i)
            out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
    std::vector<double> out;
    for (const auto& part : split(text, '|'))
        out.push_back(parse_number(part, key));
    if (out.empty())
        throw ConfigError("sweep: empty value list for " + key);
    return out;
}

std::vector<double> get(const SweepSpec& spec, const std::string& key, std::vector<double> fallback) {
    const auto it = spec.find(key);
    return it == spec.end() ? fallback : it->second;
}

Index as_index(double v, const std::string& key) {
    if (!(v >= 0) || v != std::floor(v) || v > 1e15)
        throw ConfigError("sweep: " + key + " must be a nonnegative integer");
    return static_cast<Index>(v);
}

void check_keys(const SweepSpec& spec, const std::set<std::string>& allowed) {
    for (const auto& [key, values] : spec)
        if (!allowed.count(key))
            throw ConfigError("sweep: unknown key '" + key + "'");
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::vector<double> range(double a, double step, double b) {
    std::vector<double> out;
    for (double v = a; v <= b; v += step)
        out.push_back(v);
    return out;
}

}  // namespace

SweepSpec parse_sweep(const std::string& text) {
    SweepSpec spec;
    if (text.empty())
        return spec;
    for (const auto& item : split(text, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("sweep: expected key=values, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        if (spec.count(key))
            throw ConfigError("sweep: duplicate key '" + key + "'");
        spec[key] = parse_values(item.substr(eq + 1), key);
    }
    return spec;
}

std::vector<CurvePoint> closed_form_sweep(const SweepSpec& spec) {
    check_keys(spec, {"M", "eps", "N", "L", "L_CP", "snr_db"});
    const auto ms = get(spec, "M", range(0, 1, 100));
    const auto eps = get(spec, "eps", {0.01});
    const auto ns = get(spec, "N", {64});
    const auto ls = get(spec, "L", {8});
    const auto cps = get(spec, "L_CP", {10});
    const auto snrs = get(spec, "snr_db", {std::numeric_limits<double>::infinity()});

    std::vector<CurvePoint> points;
    for (double n : ns)
        for (double l : ls)
            for (double cp : cps)
                for (double e : eps)
                    for (double snr : snrs) {
                        if (!(e > -0.5 && e <= 0.5))
                            throw ConfigError("sweep: eps must lie in (-0.5, 0.5]");
                        std::string label = "nmse_closed_form/eps=" + fmt(e);
                        if (ns.size() > 1)
                            label += "/N=" + fmt(n);
                        if (ls.size() > 1)
                            label += "/L=" + fmt(l);
                        if (cps.size() > 1)
                            label += "/L_CP=" + fmt(cp);
                        label += "/snr_db=" + fmt(snr);
                        NmseParams p;
                        p.epsilon = e;
                        p.subcarriers = as_index(n, "N");
                        p.taps = as_index(l, "L");
                        p.cp_length = as_index(cp, "L_CP");
                        p.sigma2 = noise_variance(snr);
                        if (p.subcarriers < 1 || p.taps < 1)
                            throw ConfigError("sweep: N and L must be positive");
                        for (double m : ms) {
                            p.elements = as_index(m, "M");
                            points.push_back({m, label, nmse_closed_form(p), 0.0, 0});
                        }
                    }
    return points;
}

std::vector<CurvePoint> complexity_sweep(const SweepSpec& spec) {
    check_keys(spec, {"M", "N", "L", "N_p", "N_z"});
    const auto ms = get(spec, "M", range(1, 1, 100));
    const auto ns = get(spec, "N", {1024});
    const auto ls = get(spec, "L", {102});
    const auto nzs = get(spec, "N_z", {4});

    std::vector<CurvePoint> points;
    for (double n : ns)
        for (double l : ls)
            for (double nz : nzs) {
                const auto nps = get(spec, "N_p", {n});
                for (double np : nps) {
                    std::string suffix;
                    if (ns.size() > 1)
                        suffix += "/N=" + fmt(n);
                    if (ls.size() > 1)
                        suffix += "/L=" + fmt(l);
                    if (nzs.size() > 1)
                        suffix += "/N_z=" + fmt(nz);
                    if (nps.size() > 1)
                        suffix += "/N_p=" + fmt(np);
                    for (double m : ms) {
                        try {
                            const CfrComplexity cfr = complexity_cfr(
                                as_index(n, "N"), as_index(l, "L"), as_index(np, "N_p"),
                                as_index(m, "M"));
                            const JointComplexity joint = complexity_joint(
                                as_index(l, "L"), as_index(nz, "N_z"), as_index(m, "M"));
                            points.push_back({m, "c_cfr" + suffix, cfr.total(), 0.0, 0});
                            points.push_back({m, "c_joint" + suffix, joint.total(), 0.0, 0});
                            points.push_back(
                                {m, "c_ratio" + suffix, cfr.total() / joint.total(), 0.0, 0});
                        } catch (const std::invalid_argument& e) {
                            throw ConfigError(std::string("sweep: ") + e.what());
                        }
                    }
                }
            }
    return points;
}

}  // namespace riscfo::harness
