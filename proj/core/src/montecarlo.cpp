#include "qfriction/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qfriction/rng.hpp"

namespace qfriction {

namespace {

// Per-grid-point moment sums of one trajectory block. Kept per block so
// the final reduction can run in fixed block order whatever the thread
// count: results are bit-identical for any degree of parallelism.
struct MomentSums {
    std::vector<double> x, x2, x4;
    std::vector<double> v, v2, v4;
    std::vector<double> c, c2;    // c = x(prev grid) * dW over the interval
    std::vector<double> w, w2;    // dW moments for the correlation norm

    explicit MomentSums(std::size_t n)
        : x(n, 0.0), x2(n, 0.0), x4(n, 0.0),
          v(n, 0.0), v2(n, 0.0), v4(n, 0.0),
          c(n, 0.0), c2(n, 0.0), w(n, 0.0), w2(n, 0.0) {}

    void accumulate(const MomentSums& other) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] += other.x[i];
            x2[i] += other.x2[i];
            x4[i] += other.x4[i];
            v[i] += other.v[i];
            v2[i] += other.v2[i];
            v4[i] += other.v4[i];
            c[i] += other.c[i];
            c2[i] += other.c2[i];
            w[i] += other.w[i];
            w2[i] += other.w2[i];
        }
    }
};

constexpr int kBlockSize = 512;

void validate_common(const SimConfig& config, const SimSystem& system) {
    if (config.n_trajectories < 100) {
        throw std::invalid_argument("n_trajectories must be >= 100");
    }
    if (!(config.t_end > config.t_start)) {
        throw std::invalid_argument("t_end must exceed t_start");
    }
    if (config.points_per_decade < 1) {
        throw std::invalid_argument("points_per_decade must be >= 1");
    }
    if (config.threads < 1) {
        throw std::invalid_argument("threads must be >= 1");
    }
    if (!(system.particle_mass > 0.0) || !(system.hbar > 0.0)) {
        throw std::invalid_argument("particle mass and hbar must be positive");
    }
    if (system.thermal_energy < 0.0) {
        throw std::invalid_argument("thermal energy kB T must be >= 0");
    }
}

// Logarithmic grid of step indices: grid times snapped onto multiples of
// dt past t_start, deduplicated, always ending at the last step.
std::vector<long> step_grid(double t_start, double t_end, double dt,
                            int points_per_decade) {
    const long n_steps = std::lround((t_end - t_start) / dt);
    const double t_first = dt;  // first resolvable offset
    const double decades = std::log10((t_end - t_start) / t_first);
    const int n_points = std::max(2, static_cast<int>(decades * points_per_decade) + 1);
    std::vector<long> grid;
    grid.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double offset =
            t_first * std::pow((t_end - t_start) / t_first,
                               static_cast<double>(i) / (n_points - 1));
        long step = std::lround(offset / dt);
        step = std::clamp(step, 1L, n_steps);
        if (grid.empty() || step > grid.back()) grid.push_back(step);
    }
    if (grid.back() != n_steps) grid.push_back(n_steps);
    return grid;
}

std::vector<double> log_time_grid(double t_start, double t_end,
                                  int points_per_decade) {
    const double decades = std::log10(t_end / t_start);
    const int n_points = std::max(2, static_cast<int>(decades * points_per_decade) + 1);
    std::vector<double> grid(n_points);
    for (int i = 0; i < n_points; ++i) {
        grid[i] = t_start * std::pow(t_end / t_start,
                                     static_cast<double>(i) / (n_points - 1));
    }
    return grid;
}

// Runs blocks of trajectories across the requested threads and reduces
// the block sums in index order.
template <typename TrajectoryFn>
MomentSums run_blocks(const SimConfig& config, std::size_t grid_size,
                      TrajectoryFn&& trajectory) {
    const int n = config.n_trajectories;
    const int n_blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<MomentSums> block_sums(n_blocks, MomentSums(grid_size));

    auto run_block = [&](int block) {
        const int begin = block * kBlockSize;
        const int end = std::min(n, begin + kBlockSize);
        for (int traj = begin; traj < end; ++traj) {
            trajectory(static_cast<std::uint64_t>(traj), block_sums[block]);
        }
    };

    const int threads = std::min(config.threads, n_blocks);
    if (threads <= 1) {
        for (int block = 0; block < n_blocks; ++block) run_block(block);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t]() {
                for (int block = t; block < n_blocks; block += threads) {
                    run_block(block);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    MomentSums total(grid_size);
    for (const auto& sums : block_sums) total.accumulate(sums);
    return total;
}

EnsembleStats finalize(const SimConfig& config, const MomentSums& sums,
                       std::vector<double> times, bool with_noise_corr) {
    const double n = static_cast<double>(config.n_trajectories);
    const std::size_t g = times.size();
    EnsembleStats stats;
    stats.times = std::move(times);
    stats.n_trajectories = config.n_trajectories;
    stats.seed = config.seed;
    stats.scheme = config.scheme;
    stats.temperature_mode = config.temperature_mode;

    auto se_of_mean = [n](double mean, double mean_sq) {
        const double var = std::max(0.0, mean_sq - mean * mean);
        return std::sqrt(var / n);
    };

    stats.mean_x.resize(g);
    stats.mean_x_se.resize(g);
    stats.mean_v.resize(g);
    stats.mean_v_se.resize(g);
    stats.sigma_x2.resize(g);
    stats.sigma_x2_se.resize(g);
    stats.sigma_v2.resize(g);
    stats.sigma_v2_se.resize(g);
    if (with_noise_corr) {
        stats.noise_position_corr.resize(g);
        stats.noise_position_corr_se.resize(g);
    }
    for (std::size_t i = 0; i < g; ++i) {
        const double mx = sums.x[i] / n;
        const double mx2 = sums.x2[i] / n;
        const double mx4 = sums.x4[i] / n;
        const double mv = sums.v[i] / n;
        const double mv2 = sums.v2[i] / n;
        const double mv4 = sums.v4[i] / n;
        stats.mean_x[i] = mx;
        stats.mean_x_se[i] = se_of_mean(mx, mx2);
        stats.mean_v[i] = mv;
        stats.mean_v_se[i] = se_of_mean(mv, mv2);
        stats.sigma_x2[i] = mx2;
        stats.sigma_x2_se[i] = se_of_mean(mx2, mx4);
        stats.sigma_v2[i] = mv2;
        stats.sigma_v2_se[i] = se_of_mean(mv2, mv4);
        if (with_noise_corr) {
            if (i == 0) {
                stats.noise_position_corr[i] = 0.0;
                stats.noise_position_corr_se[i] = 0.0;
                continue;
            }
            const double mc = sums.c[i] / n;
            const double mw2 = sums.w2[i] / n;
            const double mw = sums.w[i] / n;
            const double mx_prev = sums.x[i - 1] / n;
            const double var_x_prev =
                std::max(0.0, sums.x2[i - 1] / n - mx_prev * mx_prev);
            const double var_w = std::max(0.0, mw2 - mw * mw);
            const double norm = std::sqrt(var_x_prev * var_w);
            stats.noise_position_corr[i] = norm > 0.0 ? mc / norm : 0.0;
            stats.noise_position_corr_se[i] = 1.0 / std::sqrt(n);
        }
    }
    return stats;
}

}  // namespace

EnsembleStats simulate_langevin(const SimConfig& config, const SimSystem& system) {
    validate_common(config, system);
    if (config.scheme != Scheme::underdamped) {
        throw std::invalid_argument("simulate_langevin runs the underdamped scheme");
    }
    if (config.temperature_mode != TemperatureMode::constant) {
        throw std::invalid_argument("simulate_langevin requires constant temperature");
    }
    if (config.t_start != 0.0) {
        throw std::invalid_argument("the underdamped run starts at t = 0");
    }
    if (!(system.friction > 0.0)) {
        throw std::invalid_argument("friction must be positive");
    }
    const double tau = system.relaxation_time();
    const double dt = config.time_step;
    if (!(dt > 0.0) || dt > tau / 20.0) {
        std::ostringstream msg;
        msg << "time step " << dt << " must be positive and <= tau/20 = "
            << tau / 20.0 << " to resolve the velocity relaxation";
        throw std::invalid_argument(msg.str());
    }

    const auto grid = step_grid(0.0, config.t_end, dt, config.points_per_decade);
    const long n_steps = grid.back();

    const double m = system.particle_mass;
    const double b = system.friction;
    const double kT = system.thermal_energy;
    const double drift = -b / m * dt;
    const double noise_amp = std::sqrt(2.0 * b * kT / (m * m) * dt);
    const double sqrt_dt = std::sqrt(dt);

    auto trajectory = [&](std::uint64_t index, MomentSums& sums) {
        rng::CounterStream stream(config.seed, index);
        double x = 0.0, v = 0.0;
        double x_at_prev_grid = 0.0;
        double dw = 0.0;
        std::size_t next = 0;
        for (long step = 1; step <= n_steps; ++step) {
            const double xi = stream.next_normal();
            v += drift * v + noise_amp * xi;
            x += v * dt;
            dw += xi * sqrt_dt;
            if (next < grid.size() && step == grid[next]) {
                sums.x[next] += x;
                sums.x2[next] += x * x;
                sums.x4[next] += x * x * x * x;
                sums.v[next] += v;
                sums.v2[next] += v * v;
                sums.v4[next] += v * v * v * v;
                sums.c[next] += x_at_prev_grid * dw;
                sums.c2[next] += x_at_prev_grid * x_at_prev_grid * dw * dw;
                sums.w[next] += dw;
                sums.w2[next] += dw * dw;
                x_at_prev_grid = x;
                dw = 0.0;
                ++next;
            }
        }
    };

    const MomentSums sums = run_blocks(config, grid.size(), trajectory);
    std::vector<double> times(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) times[i] = grid[i] * dt;
    return finalize(config, sums, std::move(times), true);
}

EnsembleStats simulate_quantum_bath(const SimConfig& config,
                                    const SimSystem& system) {
    validate_common(config, system);
    if (config.scheme != Scheme::overdamped) {
        throw std::invalid_argument("simulate_quantum_bath runs the overdamped scheme");
    }
    if (!(system.friction > 0.0)) {
        throw std::invalid_argument("friction must be positive");
    }
    if (!(config.time_step > 0.0)) {
        throw std::invalid_argument("time step must be positive");
    }
    const double tau = system.relaxation_time();
    const bool effective = config.temperature_mode == TemperatureMode::effective;
    if (effective && config.t_start < tau) {
        std::ostringstream msg;
        msg << "the effective-temperature law is valid from the collision time "
            << tau << " on; got t_start = " << config.t_start;
        throw std::domain_error(msg.str());
    }

    const double dt = config.time_step;
    const auto grid =
        step_grid(config.t_start, config.t_end, dt, config.points_per_decade);
    const long n_steps = grid.back();

    const double b = system.friction;
    const double hbar = system.hbar;
    const double sqrt_dt = std::sqrt(dt);
    // Collision-time dispersion of the quantum bath start.
    const double initial_var = effective ? hbar / b : 0.0;
    const double initial_sd = std::sqrt(initial_var);

    auto trajectory = [&](std::uint64_t index, MomentSums& sums) {
        rng::CounterStream stream(config.seed, index);
        double x = effective ? initial_sd * stream.next_normal() : 0.0;
        double x_at_prev_grid = x;
        double dw = 0.0;
        std::size_t next = 0;
        for (long step = 1; step <= n_steps; ++step) {
            // Midpoint evaluation of the (possibly time-dependent) bath
            // temperature keeps the variance quadrature error at O(dt^2).
            const double t_mid = config.t_start + (step - 0.5) * dt;
            const double kT =
                effective ? hbar / (4.0 * t_mid) : system.thermal_energy;
            const double xi = stream.next_normal();
            x += std::sqrt(2.0 * kT / b * dt) * xi;
            dw += xi * sqrt_dt;
            if (next < grid.size() && step == grid[next]) {
                sums.x[next] += x;
                sums.x2[next] += x * x;
                sums.x4[next] += x * x * x * x;
                sums.c[next] += x_at_prev_grid * dw;
                sums.w[next] += dw;
                sums.w2[next] += dw * dw;
                x_at_prev_grid = x;
                dw = 0.0;
                ++next;
            }
        }
    };

    const MomentSums sums = run_blocks(config, grid.size(), trajectory);
    std::vector<double> times(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        times[i] = config.t_start + grid[i] * dt;
    }
    return finalize(config, sums, std::move(times), true);
}

EnsembleStats simulate_collisional(const SimConfig& config,
                                   const SimSystem& system) {
    validate_common(config, system);
    if (config.scheme != Scheme::collisional) {
        throw std::invalid_argument("simulate_collisional runs the collisional scheme");
    }
    if (!(system.thermal_energy > 0.0)) {
        throw std::invalid_argument("the collisional scheme requires T > 0");
    }
    if (!(system.mean_free_path > 0.0)) {
        throw std::invalid_argument("mean free path must be positive");
    }
    if (config.t_start != 0.0) {
        throw std::invalid_argument("the collisional run starts at t = 0");
    }

    const double v_thermal = std::sqrt(system.thermal_energy / system.particle_mass);
    const double lambda = system.mean_free_path;
    const double t_min = std::min(lambda / v_thermal / 100.0, config.t_end / 100.0);
    const auto times = log_time_grid(t_min, config.t_end, config.points_per_decade);

    // Post-collision speeds are flux-weighted (Rayleigh) rather than plain
    // Maxwell: with the collision rate proportional to |v|, that is the
    // redraw for which the Maxwell distribution is stationary. A plain
    // Maxwell redraw leaves E[1/|v|] divergent, so slow particles trap
    // the process and the measured diffusion decays like 1/ln t.
    auto post_collision = [&](rng::CounterStream& stream) {
        const double speed =
            v_thermal * std::sqrt(-2.0 * std::log(1.0 - stream.next_unit()));
        return stream.next_unit() < 0.5 ? speed : -speed;
    };

    auto trajectory = [&](std::uint64_t index, MomentSums& sums) {
        rng::CounterStream stream(config.seed, index);
        double x = 0.0;
        double t = 0.0;
        // Thermal (Maxwell) initial condition: the stationary state.
        double v = v_thermal * stream.next_normal();
        // Free flight to the next collision: rate |v|/lambda.
        double time_left =
            -std::log(1.0 - stream.next_unit()) * lambda / std::max(std::abs(v), 1e-300);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double target = times[i];
            while (t + time_left <= target) {
                x += v * time_left;
                t += time_left;
                v = post_collision(stream);
                time_left = -std::log(1.0 - stream.next_unit()) * lambda /
                            std::max(std::abs(v), 1e-300);
            }
            const double advance = target - t;
            x += v * advance;
            time_left -= advance;
            t = target;
            sums.x[i] += x;
            sums.x2[i] += x * x;
            sums.x4[i] += x * x * x * x;
            sums.v[i] += v;
            sums.v2[i] += v * v;
            sums.v4[i] += v * v * v * v;
        }
    };

    const MomentSums sums = run_blocks(config, times.size(), trajectory);
    return finalize(config, sums, times, false);
}

VirialReport virial_check(const EnsembleStats& stats, const SimSystem& system,
                          double t_min, int window) {
    if (window < 1) {
        throw std::invalid_argument("window must be >= 1");
    }
    const auto& t = stats.times;
    const int n = static_cast<int>(t.size());
    VirialReport report{0.0, 0.0, 0};
    for (int i = window; i + window < n; ++i) {
        if (t[i - window] <= t_min) continue;
        const double deriv = (stats.sigma_x2[i + window] - stats.sigma_x2[i - window]) /
                             (t[i + window] - t[i - window]);
        const double lhs = system.friction * deriv;
        const double rhs = 2.0 * system.particle_mass * stats.sigma_v2[i];
        if (rhs == 0.0) continue;
        const double discrepancy = std::abs(lhs - rhs) / rhs;
        if (report.points_used == 0) report.window_start = t[i - window];
        report.max_relative_discrepancy =
            std::max(report.max_relative_discrepancy, discrepancy);
        ++report.points_used;
    }
    if (report.points_used < 5) {
        throw std::invalid_argument(
            "not enough late-time samples for the virial check; extend t_end "
            "or lower t_min");
    }
    return report;
}

namespace {

LinearFit weighted_fit(const std::vector<double>& x, const std::vector<double>& y,
                       const std::vector<double>& se) {
    double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = se[i] > 0.0 ? 1.0 / (se[i] * se[i]) : 1.0;
        sw += w;
        swx += w * x[i];
        swy += w * y[i];
        swxx += w * x[i] * x[i];
        swxy += w * x[i] * y[i];
    }
    const double denom = sw * swxx - swx * swx;
    if (denom <= 0.0 || x.size() < 3) {
        throw std::invalid_argument("not enough points for a line fit");
    }
    LinearFit fit;
    fit.slope = (sw * swxy - swx * swy) / denom;
    fit.intercept = (swxx * swy - swx * swxy) / denom;
    fit.slope_se = std::sqrt(sw / denom);
    fit.intercept_se = std::sqrt(swxx / denom);
    fit.points = static_cast<int>(x.size());
    return fit;
}

}  // namespace

LinearFit fit_dispersion_slope(const EnsembleStats& stats, double t_min) {
    std::vector<double> x, y, se;
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        if (stats.times[i] < t_min) continue;
        x.push_back(stats.times[i]);
        y.push_back(stats.sigma_x2[i]);
        se.push_back(stats.sigma_x2_se[i]);
    }
    return weighted_fit(x, y, se);
}

LinearFit fit_log_coefficient(const EnsembleStats& stats, double t_min,
                              double t_max) {
    std::vector<double> x, y, se;
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        if (stats.times[i] < t_min || stats.times[i] > t_max) continue;
        x.push_back(std::log(stats.times[i]));
        y.push_back(stats.sigma_x2[i]);
        se.push_back(stats.sigma_x2_se[i]);
    }
    return weighted_fit(x, y, se);
}

double mean_sigma_v2(const EnsembleStats& stats, double t_min) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        if (stats.times[i] < t_min) continue;
        sum += stats.sigma_v2[i];
        ++count;
    }
    if (count == 0) {
        throw std::invalid_argument("no samples at or beyond t_min");
    }
    return sum / count;
}

}  // namespace qfriction
