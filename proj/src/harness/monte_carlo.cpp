#include "riscfo/harness/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "riscfo/analysis.hpp"
#include "riscfo/channel_model.hpp"
#include "riscfo/estimators.hpp"
#include "riscfo/frame.hpp"
#include "riscfo/io.hpp"
#include "riscfo/link.hpp"
#include "riscfo/numerics.hpp"
#include "riscfo/random.hpp"
#include "riscfo/ris_pattern.hpp"

namespace riscfo::harness {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            carry_ += (sum_ - t) + v;
        else
            carry_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0;
    double carry_ = 0;
};

struct Summary {
    double mean;
    double ci95;
};

Summary mean_of(const std::vector<double>& v) {
    CompensatedSum s;
    for (double x : v)
        s.add(x);
    const double n = static_cast<double>(v.size());
    const double mean = s.value() / n;
    if (v.size() < 2)
        return {mean, 0.0};
    CompensatedSum ss;
    for (double x : v)
        ss.add((x - mean) * (x - mean));
    return {mean, 1.96 * std::sqrt(ss.value() / (n - 1) / n)};
}

/// Ratio of means with a delta-method interval.
Summary ratio_of_means(const std::vector<double>& num, const std::vector<double>& den) {
    CompensatedSum sn, sd;
    for (std::size_t i = 0; i < num.size(); ++i) {
        sn.add(num[i]);
        sd.add(den[i]);
    }
    const double ratio = sn.value() / sd.value();
    if (num.size() < 2)
        return {ratio, 0.0};
    const double n = static_cast<double>(num.size());
    std::vector<double> resid(num.size());
    for (std::size_t i = 0; i < num.size(); ++i)
        resid[i] = num[i] - ratio * den[i];
    const Summary r = mean_of(resid);
    return {ratio, r.ci95 / (sd.value() / n)};
}

std::string label(const ExperimentConfig& cfg, const std::string& metric, const GridPoint& p) {
    std::string out = metric;
    if (cfg.x_axis != SweepAxis::Elements)
        out += "/M=" + std::to_string(p.elements);
    out += "/N_z=" + std::to_string(p.training);
    out += "/eps=" + (std::isnan(p.epsilon) ? std::string("uniform") : fmt(p.epsilon));
    if (cfg.x_axis != SweepAxis::SnrDb)
        out += "/snr_db=" + fmt(p.snr_db);
    return out;
}

Index baseline_pilots(const ExperimentConfig& cfg, Index training) {
    if (cfg.pilot_subcarriers != 0)
        return cfg.pilot_subcarriers;
    if (cfg.estimator == EstimatorMode::Both)
        return std::min(cfg.subcarriers, training * cfg.taps);
    return cfg.subcarriers;
}

ReflectionPattern pattern_for(const ExperimentConfig& cfg, Index elements) {
    if (cfg.pattern_file.empty())
        return dft_pattern(elements);
    ReflectionPattern p = read_pattern_csv(cfg.pattern_file);
    if (p.elements() != elements)
        throw ConfigError("config: pattern_file has M=" + std::to_string(p.elements()) +
                          " but the grid asks for M=" + std::to_string(elements));
    return p;
}

}  // namespace

std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg) {
    std::vector<double> eps = cfg.epsilon.kind == EpsilonPolicy::Kind::Fixed
                                  ? cfg.epsilon.values
                                  : std::vector<double>{std::numeric_limits<double>::quiet_NaN()};
    std::vector<GridPoint> grid;
    for (Index m : cfg.elements)
        for (Index nz : cfg.training)
            for (double e : eps)
                for (double s : cfg.snr_db)
                    grid.push_back({m, nz, e, s});
    return grid;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const GridPoint& point, std::uint64_t seed) {
    RandomStream rng(seed);
    TrialRecord rec;
    rec.epsilon = std::isnan(point.epsilon) ? 0.5 - rng.uniform() : point.epsilon;

    const FrameGeometry geom(cfg.subcarriers, cfg.taps, cfg.cp_length, point.elements,
                             point.training);
    const double sigma2 = noise_variance(point.snr_db);
    const PowerDelayProfile pdp = exponential_pdp(cfg.taps, cfg.pdp_decay);
    const ChannelSet channel = sample_cir(pdp, point.elements, cfg.subcarriers, rng);
    const ReflectionPattern pattern = pattern_for(cfg, point.elements);

    std::optional<double> epsilon_hat;
    if (cfg.estimator != EstimatorMode::Baseline) {
        const PilotFrame frame =
            build_periodic_pilots(geom, zadoff_chu(cfg.taps, cfg.zc_root), rng);
        const ReceivedFrame rx = transmit_frame(frame, channel, pattern, rec.epsilon, sigma2, rng);
        const JointEstimate est = joint_estimate(rx.observed, frame, pattern, geom);
        epsilon_hat = est.cfo.epsilon;
        rec.epsilon_hat = est.cfo.epsilon;
        // Scored in the frequency domain.
        const ErrorEnergy e = error_energy(channel.cfr(), est.cir.cfr(cfg.subcarriers));
        rec.proposed_error = e.error;
        rec.proposed_reference = e.reference;
    }
    if (cfg.estimator != EstimatorMode::Proposed) {
        // Matched-usage comparisons carry a non-periodic ZC comb.
        const Index pilots = baseline_pilots(cfg, point.training);
        const PilotFrame frame = cfg.estimator == EstimatorMode::Both
                                     ? build_baseline_pilots(geom, zadoff_chu(pilots, 1), rng)
                                     : build_baseline_pilots(geom, rng, pilots);
        const ReceivedFrame rx = transmit_frame(frame, channel, pattern, rec.epsilon, sigma2, rng);
        const Observation obs = epsilon_hat
                                    ? cfo_compensate(rx.observed, *epsilon_hat, geom.block_length())
                                    : rx.observed;
        const CfrEstimate est = baseline_cfr_full(obs, frame, pattern, cfg.taps);
        const ErrorEnergy e = error_energy(channel.cfr(), est.cfr);
        rec.baseline_error = e.error;
        rec.baseline_reference = e.reference;
    }
    return rec;
}

std::vector<CurvePoint> run_monte_carlo(const ExperimentConfig& cfg) {
    validate(cfg);
    const std::vector<GridPoint> grid = expand_grid(cfg);
    const Index trials = cfg.trials;
    const std::size_t jobs = grid.size() * static_cast<std::size_t>(trials);
    std::vector<TrialRecord> records(jobs);

    unsigned workers = cfg.workers ? cfg.workers : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(jobs, 1)));

    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::optional<std::size_t> failed_job;
    std::string failure_message;

    auto seed_of = [&](std::size_t job) {
        return derive_seed(cfg.base_seed, static_cast<std::uint32_t>(job / trials),
                           static_cast<std::uint32_t>(job % trials));
    };
    auto work = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            try {
                records[job] = run_trial(cfg, grid[job / trials], seed_of(job));
            } catch (const std::exception& e) {
                std::lock_guard lock(failure_mutex);
                if (!failed_job || job < *failed_job) {
                    failed_job = job;
                    failure_message = e.what();
                }
                next = jobs;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    if (failed_job) {
        const std::uint64_t seed = seed_of(*failed_job);
        throw TrialError("trial " + std::to_string(*failed_job % trials) + " of grid point " +
                             std::to_string(*failed_job / trials) + " (seed " +
                             std::to_string(seed) + ") failed: " + failure_message,
                         seed);
    }

    std::vector<CurvePoint> points;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const GridPoint& p = grid[g];
        const double x = cfg.x_axis == SweepAxis::Elements ? static_cast<double>(p.elements)
                                                           : p.snr_db;
        const auto begin = records.begin() + static_cast<std::ptrdiff_t>(g * trials);
        const auto end = begin + trials;
        auto column = [&](auto field) {
            std::vector<double> v;
            v.reserve(static_cast<std::size_t>(trials));
            for (auto it = begin; it != end; ++it)
                v.push_back(field(*it));
            return v;
        };
        auto emit = [&](const std::string& metric, Summary s) {
            points.push_back({x, label(cfg, metric, p), s.mean, s.ci95, trials});
        };

        if (cfg.estimator != EstimatorMode::Baseline) {
            emit("mse_cfo", mean_of(column([](const TrialRecord& r) {
                     return mse_cfo(r.epsilon, r.epsilon_hat);
                 })));
            const auto err = column([](const TrialRecord& r) { return r.proposed_error; });
            const auto ref = column([](const TrialRecord& r) { return r.proposed_reference; });
            emit("nmse_proposed", ratio_of_means(err, ref));
            emit("nmse_proposed_avg", mean_of(column([](const TrialRecord& r) {
                     return r.proposed_error / r.proposed_reference;
                 })));
        }
        if (cfg.estimator != EstimatorMode::Proposed) {
            const auto err = column([](const TrialRecord& r) { return r.baseline_error; });
            const auto ref = column([](const TrialRecord& r) { return r.baseline_reference; });
            emit("nmse_baseline", ratio_of_means(err, ref));
            emit("nmse_baseline_avg", mean_of(column([](const TrialRecord& r) {
                     return r.baseline_error / r.baseline_reference;
                 })));
            if (cfg.estimator == EstimatorMode::Baseline && !std::isnan(p.epsilon) &&
                baseline_pilots(cfg, p.training) == cfg.subcarriers) {
                const NmseParams np{p.epsilon, cfg.subcarriers, cfg.taps, cfg.cp_length,
                                    p.elements, noise_variance(p.snr_db)};
                emit("nmse_closed_form", {nmse_closed_form(np), 0.0});
            }
        }
    }
    return points;
}

std::vector<CurvePoint> run_complexity(const ExperimentConfig& cfg) {
    const Index pilots = cfg.pilot_subcarriers ? cfg.pilot_subcarriers : cfg.subcarriers;
    const Index training = cfg.training.front();
    std::vector<CurvePoint> points;
    for (Index m : cfg.elements) {
        const double x = static_cast<double>(m);
        const CfrComplexity cfr = complexity_cfr(cfg.subcarriers, cfg.taps, pilots, m);
        const JointComplexity joint = complexity_joint(cfg.taps, training, m);
        points.push_back({x, "c_cfr", cfr.total(), 0.0, 0});
        points.push_back({x, "c_joint", joint.total(), 0.0, 0});
        points.push_back({x, "c_ratio", cfr.total() / joint.total(), 0.0, 0});
    }
    return points;
}

std::vector<CurvePoint> run_experiment(const ExperimentConfig& cfg) {
    return cfg.analysis == Analysis::Complexity ? run_complexity(cfg) : run_monte_carlo(cfg);
}

const CurvePoint& find_point(const std::vector<CurvePoint>& points, const std::string& metric,
                             double x) {
    for (const CurvePoint& p : points)
        if (p.metric == metric && p.x == x)
            return p;
    throw std::out_of_range("no curve point '" + metric + "' at x=" + fmt(x));
}

}  // namespace riscfo::harness
