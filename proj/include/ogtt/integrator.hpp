#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ogtt {

// Adaptive explicit Runge-Kutta 4(5), Dormand-Prince coefficients (the ode45
// pair), with the classical 4th-order continuous extension for dense output.

struct SolverConfig {
    double rel_tol = 1e-6;
    double abs_tol = 1e-8;
    double initial_step = 0.0;  // <= 0 selects a step automatically
    double max_step = 0.0;      // <= 0 means no cap beyond the span
    long max_steps = 100000;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("SolverConfig: tolerances must be > 0");
        if (max_steps <= 0)
            throw std::invalid_argument("SolverConfig: max_steps must be > 0");
    }
};

class SolverError : public std::runtime_error {
  public:
    SolverError(const std::string& what, double t)
        : std::runtime_error(what + " at t=" + std::to_string(t)), time_(t) {}
    double time() const { return time_; }

  private:
    double time_;
};

struct StepSizeUnderflow : SolverError {
    explicit StepSizeUnderflow(double t) : SolverError("step size underflow", t) {}
};
struct MaxStepsExceeded : SolverError {
    explicit MaxStepsExceeded(double t) : SolverError("max step count exceeded", t) {}
};
struct NonFiniteDerivative : SolverError {
    explicit NonFiniteDerivative(double t) : SolverError("non-finite derivative", t) {}
};
struct TimeOutOfRange : SolverError {
    explicit TimeOutOfRange(double t) : SolverError("sample time outside trajectory", t) {}
};

struct SolverStats {
    long steps_accepted = 0;
    long steps_rejected = 0;
    long rhs_evaluations = 0;
};

template <std::size_t N>
struct Trajectory {
    using State = std::array<double, N>;

    std::vector<double> times;          // accepted step times, strictly increasing
    std::vector<State> states;          // states.size() == times.size()
    std::vector<std::array<State, 5>> dense;  // interpolant per interval [t_i, t_{i+1}]
    SolverStats stats;

    double t0() const { return times.front(); }
    double t_end() const { return times.back(); }

    // Dense-output evaluation. Sampling at an accepted step time returns the
    // stored state exactly.
    State sample_at(double t) const {
        if (t < times.front() || t > times.back()) throw TimeOutOfRange(t);
        auto it = std::lower_bound(times.begin(), times.end(), t);
        if (it != times.end() && *it == t)
            return states[static_cast<std::size_t>(it - times.begin())];
        const std::size_t i = static_cast<std::size_t>(it - times.begin()) - 1;
        const double h = times[i + 1] - times[i];
        const double theta = (t - times[i]) / h;
        const auto& rc = dense[i];
        State y;
        for (std::size_t d = 0; d < N; ++d) {
            y[d] = rc[0][d] +
                   theta * (rc[1][d] +
                            (1.0 - theta) *
                                (rc[2][d] + theta * (rc[3][d] + (1.0 - theta) * rc[4][d])));
        }
        return y;
    }

    std::vector<State> sample_at(const std::vector<double>& ts) const {
        std::vector<State> out;
        out.reserve(ts.size());
        for (double t : ts) out.push_back(sample_at(t));
        return out;
    }
};

namespace detail {

// Butcher tableau for DOPRI5 (Dormand & Prince 1980), FSAL.
inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// 5th-order weights equal dp_a[6]; error weights are b5 - b4.
inline constexpr double dp_e[7] = {71.0 / 57600,   0.0,          -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
// Continuous-extension constants (Hairer, Norsett & Wanner, DOPRI5 CONTD5).
inline constexpr double dp_d[7] = {
    -12715105075.0 / 11282082432.0, 0.0,
    87487479700.0 / 32700410799.0,  -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0, -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0};

}  // namespace detail

// Integrates y' = rhs(t, y) from (t0, y0) to t_end. Deterministic for fixed
// inputs; local error per step is bounded by the embedded 4th/5th-order
// estimate under the configured tolerances.
template <std::size_t N>
Trajectory<N> integrate(
    const std::function<void(double, const std::array<double, N>&, std::array<double, N>&)>& rhs,
    const std::array<double, N>& y0, double t0, double t_end, const SolverConfig& cfg) {
    using State = std::array<double, N>;
    cfg.validate();
    if (!(t_end > t0)) throw std::invalid_argument("integrate: t_end must exceed t0");
    for (double v : y0)
        if (!std::isfinite(v)) throw std::invalid_argument("integrate: y0 not finite");

    const double span = t_end - t0;
    const double h_max = cfg.max_step > 0.0 ? std::min(cfg.max_step, span) : span;

    Trajectory<N> traj;
    traj.times.push_back(t0);
    traj.states.push_back(y0);

    std::array<State, 7> k;
    State y = y0;
    double t = t0;

    auto eval = [&](double tt, const State& yy, State& out) {
        rhs(tt, yy, out);
        ++traj.stats.rhs_evaluations;
        for (double v : out)
            if (!std::isfinite(v)) throw NonFiniteDerivative(tt);
    };

    eval(t, y, k[0]);

    // Starting step: crude |y|/|y'| heuristic unless the caller pinned one.
    double h = cfg.initial_step;
    if (h <= 0.0) {
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t d = 0; d < N; ++d) {
            const double sc = cfg.abs_tol + cfg.rel_tol * std::fabs(y[d]);
            d0 += (y[d] / sc) * (y[d] / sc);
            d1 += (k[0][d] / sc) * (k[0][d] / sc);
        }
        h = (d1 > 0.0 && d0 > 0.0) ? 0.01 * std::sqrt(d0 / d1) : 1e-3 * span;
    }
    h = std::clamp(h, 0.0, h_max);
    if (h == 0.0) h = 1e-3 * span;

    bool previous_rejected = false;
    for (long step = 0; step < cfg.max_steps; ++step) {
        if (t + h > t_end) h = t_end - t;
        if (!(h > std::fabs(t) * 1e-14) || !(t + h > t)) throw StepSizeUnderflow(t);

        State y_stage, y_new;
        for (int s = 1; s < 7; ++s) {
            for (std::size_t d = 0; d < N; ++d) {
                double acc = 0.0;
                for (int j = 0; j < s; ++j) acc += detail::dp_a[s][j] * k[j][d];
                y_stage[d] = y[d] + h * acc;
            }
            eval(t + detail::dp_c[s] * h, y_stage, k[s]);
        }
        y_new = y_stage;  // stage 6 uses the 5th-order weights (FSAL)

        double err = 0.0;
        for (std::size_t d = 0; d < N; ++d) {
            double e = 0.0;
            for (int j = 0; j < 7; ++j) e += detail::dp_e[j] * k[j][d];
            const double sc =
                cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(y[d]), std::fabs(y_new[d]));
            err += (h * e / sc) * (h * e / sc);
        }
        err = std::sqrt(err / static_cast<double>(N));

        if (err <= 1.0) {
            std::array<State, 5> rc;
            for (std::size_t d = 0; d < N; ++d) {
                const double ydiff = y_new[d] - y[d];
                double dk = 0.0;
                for (int j = 0; j < 7; ++j) dk += detail::dp_d[j] * k[j][d];
                rc[0][d] = y[d];
                rc[1][d] = ydiff;
                rc[2][d] = h * k[0][d] - ydiff;
                rc[3][d] = ydiff - h * k[6][d] - rc[2][d];
                rc[4][d] = h * dk;
            }
            traj.dense.push_back(rc);

            t += h;
            y = y_new;
            k[0] = k[6];  // FSAL
            traj.times.push_back(t);
            traj.states.push_back(y);
            ++traj.stats.steps_accepted;
            if (t >= t_end) return traj;

            const double fac =
                std::clamp(0.9 * std::pow(err > 0.0 ? err : 1e-10, -0.2), 0.2,
                           previous_rejected ? 1.0 : 5.0);
            h = std::min(h * fac, h_max);
            previous_rejected = false;
        } else {
            ++traj.stats.steps_rejected;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            previous_rejected = true;
        }
    }
    throw MaxStepsExceeded(t);
}

}  // namespace ogtt
