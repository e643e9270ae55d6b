#include "lzsim/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "lzsim/noise.hpp"

namespace lz {

namespace {

struct TrajectoryFailure {
    bool failed = false;
    std::uint64_t seed = 0;
    std::string what;
};

// Fills populations[begin..end) in parallel; any exception is reported with
// the trajectory seed that caused it.
void run_batch(const SystemParams& system, const NoiseSpec& noise, const TimeWindow& window,
               std::uint64_t master_seed, std::size_t begin, std::size_t end, int threads,
               std::vector<double>& populations) {
    const TimeGrid grid{window.t_start, window.dt, window.step_count()};
    std::atomic<std::size_t> next{begin};
    std::mutex failure_mutex;
    TrajectoryFailure failure;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= end) return;
            const std::uint64_t seed = split_seed(master_seed, i);
            try {
                const NoiseTrace trace = generate_trace(noise, grid, seed);
                const EvolutionResult r = evolve_pure(system, &trace, window);
                populations[i] = r.ground_state_population;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure.failed) failure = {true, seed, e.what()};
                next.store(end);
                return;
            }
        }
    };

    const int n_threads = std::max(threads, 1);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    if (failure.failed) {
        throw std::runtime_error("trajectory with seed " + std::to_string(failure.seed) +
                                 " failed: " + failure.what);
    }
}

// Fixed-order reduction by trajectory index.
void reduce(const std::vector<double>& populations, EnsembleResult& result) {
    const auto n = static_cast<double>(populations.size());
    double sum = 0.0;
    for (double p : populations) sum += p;
    const double mean = sum / n;

    double ss = 0.0;
    for (double p : populations) ss += (p - mean) * (p - mean);
    const double sample_var = (populations.size() > 1) ? ss / (n - 1.0) : 0.0;

    result.success_probability = mean;
    result.standard_error = std::sqrt(sample_var / n);
    result.n_used = populations.size();
}

}  // namespace

void EnsembleConfig::validate() const {
    if (n_trajectories < 1) throw std::invalid_argument("ensemble.n_trajectories must be >= 1");
    if (max_trajectories != 0 && max_trajectories < n_trajectories)
        throw std::invalid_argument("ensemble.max_trajectories must be >= n_trajectories");
    if (target_standard_error && !(*target_standard_error > 0.0))
        throw std::invalid_argument("ensemble.target_standard_error must be > 0");
}

EnsembleResult run_ensemble(const SystemParams& system, const NoiseSpec& noise,
                            const EnsembleConfig& config) {
    config.validate();
    noise.validate();

    const std::optional<double> tau =
        (noise.model != NoiseModel::None) ? std::optional<double>(noise.tau) : std::nullopt;
    const TimeWindow window = auto_time_window(system, config.tail_tolerance, tau);

    EnsembleResult result;

    if (noise.model == NoiseModel::None) {
        // Degenerate ensemble: every trajectory is the same deterministic run.
        const EvolutionResult r = evolve_pure(system, nullptr, window);
        result.success_probability = r.ground_state_population;
        result.standard_error = 0.0;
        result.n_used = 1;
        return result;
    }

    const std::size_t cap =
        (config.max_trajectories != 0) ? config.max_trajectories : config.n_trajectories;

    std::vector<double> populations;
    std::size_t n = 0;
    for (;;) {
        const std::size_t batch = std::min(config.n_trajectories, cap - n);
        populations.resize(n + batch);
        run_batch(system, noise, window, config.master_seed, n, n + batch, config.threads,
                  populations);
        n += batch;
        reduce(populations, result);
        const bool target_met =
            !config.target_standard_error || result.standard_error <= *config.target_standard_error;
        if (target_met || n >= cap) break;
    }

    result.trajectory_seeds.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        result.trajectory_seeds.push_back(split_seed(config.master_seed, i));
    return result;
}

std::vector<CurvePoint> success_curve(const SystemParams& system_template,
                                      const NoiseSpec& noise, const std::vector<double>& v_grid,
                                      const EnsembleConfig& config) {
    std::vector<CurvePoint> curve;
    curve.reserve(v_grid.size());
    for (double v : v_grid) {
        if (!(v > 0.0)) throw std::invalid_argument("success_curve: v grid must be > 0");
        SystemParams system = system_template;
        system.v = v;
        curve.push_back({v, run_ensemble(system, noise, config)});
    }
    return curve;
}

}  // namespace lz
