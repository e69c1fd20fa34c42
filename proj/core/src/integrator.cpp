#include "geac/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace geac {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;

// Fifth-order weights minus the embedded fourth-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// Dense-output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

// PI step-size controller.
constexpr double safe = 0.9;
constexpr double facl = 0.2;
constexpr double facr = 10.0;
constexpr double beta = 0.04;
constexpr double expo1 = 0.2 - beta * 0.75;

constexpr double eps = 2.220446049250313e-16;

struct Vec2 {
  double d;
  double w;
};

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

Vec2 dense_eval(const DenseStep& s, double theta) {
  const double th1 = 1.0 - theta;
  Vec2 out;
  for (int i = 0; i < 2; ++i) {
    const double v =
        s.c[0][i] +
        theta * (s.c[1][i] +
                 th1 * (s.c[2][i] + theta * (s.c[3][i] + th1 * s.c[4][i])));
    (i == 0 ? out.d : out.w) = v;
  }
  return out;
}

struct Watcher {
  EventKind kind;
  double level = 0.0;
  bool terminal = false;
  double prev_g = 0.0;
  int last_sign = 0;
};

struct Candidate {
  double theta;
  Event event;
  bool terminal;
};

}  // namespace

Trajectory integrate_with_events(const Dynamics& sys, const State& init,
                                 const IntegrateOptions& opt) {
  if (!(opt.rtol > 0.0) || !std::isfinite(opt.rtol) || !(opt.atol > 0.0) ||
      !std::isfinite(opt.atol))
    throw InvalidOptions("tolerances must be finite and > 0");
  if (!(opt.max_time > 0.0)) throw InvalidOptions("max_time must be > 0");
  if (!(opt.escape_delta > 0.0))
    throw InvalidOptions("escape bound must be > 0");
  if (opt.initial_step < 0.0 || opt.fixed_step < 0.0 || opt.max_step <= 0.0)
    throw InvalidOptions("step-size options must be positive");
  if (!std::isfinite(init.delta) || !std::isfinite(init.omega))
    throw InvalidOptions("initial state must be finite");

  Trajectory traj;
  traj.t_begin = init.t;
  traj.t_end = init.t;
  traj.samples.push_back(init);
  const double t_final = init.t + opt.max_time;

  auto rhs = [&](const Vec2& s) {
    ++traj.n_rhs;
    return Vec2{s.w, sys.accel(s.d, s.w)};
  };
  auto energy_of = [&](const Vec2& s) {
    return 0.5 * s.w * s.w + sys.potential(s.d);
  };
  auto state_at = [](double t, const Vec2& s) {
    return State{t, s.d, s.w};
  };

  Vec2 y{init.delta, init.omega};
  double t = init.t;

  auto finish = [&](EventKind kind, const State& st, Direction dir,
                    double level = 0.0) {
    traj.events.push_back(Event{kind, st, dir, level});
    traj.termination = kind;
    traj.t_end = st.t;
    return traj;
  };
  auto motion_dir = [&](double omega) {
    return omega >= 0.0 ? Direction::Forward : Direction::Backward;
  };

  // Terminal conditions that already hold at the initial state.
  const bool converge_enabled = opt.converge_energy > 0.0;
  if (converge_enabled && energy_of(y) <= opt.converge_energy &&
      std::abs(y.d) <= opt.converge_radius)
    return finish(EventKind::Converged, init, motion_dir(init.omega));
  if (std::abs(y.d) >= opt.escape_delta)
    return finish(EventKind::Escape, init, motion_dir(init.omega),
                  std::copysign(opt.escape_delta, y.d));

  // Watchers: event function g at accepted nodes, dense refinement between.
  std::vector<Watcher> watchers;
  if (opt.watch_turning)
    watchers.push_back({EventKind::TurningPoint, 0.0, false});
  for (double lv : opt.watched_levels)
    watchers.push_back({EventKind::UepCross, lv, false});
  for (double lv : opt.stop_levels)
    watchers.push_back({EventKind::UepCross, lv, true});
  watchers.push_back({EventKind::Escape, opt.escape_delta, true});
  watchers.push_back({EventKind::Escape, -opt.escape_delta, true});
  if (opt.watch_accel) watchers.push_back({EventKind::AccelZero, 0.0, false});

  auto g_eval = [&](const Watcher& w, const Vec2& s) {
    switch (w.kind) {
      case EventKind::TurningPoint:
        return s.w;
      case EventKind::UepCross:
      case EventKind::Escape:
        return s.d - w.level;
      case EventKind::AccelZero:
        return sys.accel(s.d, s.w);
      default:
        return 0.0;
    }
  };
  for (Watcher& w : watchers) {
    w.prev_g = g_eval(w, y);
    w.last_sign = sign_of(w.prev_g);
  }

  Vec2 k1 = rhs(y);

  // Automatic initial step (one Euler probe of the second derivative).
  double h;
  if (opt.fixed_step > 0.0) {
    h = opt.fixed_step;
  } else if (opt.initial_step > 0.0) {
    h = opt.initial_step;
  } else {
    const double scd = opt.atol + opt.rtol * std::abs(y.d);
    const double scw = opt.atol + opt.rtol * std::abs(y.w);
    const double dnf = (k1.d / scd) * (k1.d / scd) + (k1.w / scw) * (k1.w / scw);
    const double dny = (y.d / scd) * (y.d / scd) + (y.w / scw) * (y.w / scw);
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, opt.max_step);
    const Vec2 yp{y.d + h * k1.d, y.w + h * k1.w};
    const Vec2 f2 = rhs(yp);
    const double der2 = std::sqrt((f2.d - k1.d) / scd * ((f2.d - k1.d) / scd) +
                                  (f2.w - k1.w) / scw * ((f2.w - k1.w) / scw)) /
                        h;
    const double der12 = std::max(der2, std::sqrt(dnf));
    const double h1 = (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3)
                                       : std::pow(0.01 / der12, 0.2);
    h = std::min({100.0 * h, h1, opt.max_step});
  }

  double facold = 1e-4;
  bool reject_last = false;

  while (true) {
    if (traj.n_steps + traj.n_rejected > opt.max_steps)
      throw StepSizeUnderflow("step budget exhausted");

    const double remaining = t_final - t;
    if (remaining <= 4.0 * eps * std::max(1.0, std::abs(t)))
      return finish(EventKind::TimeLimit, state_at(t_final, y),
                    motion_dir(y.w));

    double h_use = std::min(h, opt.max_step);
    bool clipped = false;
    if (h_use >= remaining) {
      h_use = remaining;
      clipped = true;
    }
    if (!clipped && h_use < 4.0 * eps * std::max(1.0, std::abs(t)))
      throw StepSizeUnderflow("step size underflow at t = " +
                              std::to_string(t));

    // Seven stages, first-same-as-last.
    const Vec2 k2 = rhs({y.d + h_use * a21 * k1.d, y.w + h_use * a21 * k1.w});
    const Vec2 k3 = rhs({y.d + h_use * (a31 * k1.d + a32 * k2.d),
                         y.w + h_use * (a31 * k1.w + a32 * k2.w)});
    const Vec2 k4 =
        rhs({y.d + h_use * (a41 * k1.d + a42 * k2.d + a43 * k3.d),
             y.w + h_use * (a41 * k1.w + a42 * k2.w + a43 * k3.w)});
    const Vec2 k5 = rhs(
        {y.d + h_use * (a51 * k1.d + a52 * k2.d + a53 * k3.d + a54 * k4.d),
         y.w + h_use * (a51 * k1.w + a52 * k2.w + a53 * k3.w + a54 * k4.w)});
    const Vec2 k6 =
        rhs({y.d + h_use * (a61 * k1.d + a62 * k2.d + a63 * k3.d +
                            a64 * k4.d + a65 * k5.d),
             y.w + h_use * (a61 * k1.w + a62 * k2.w + a63 * k3.w +
                            a64 * k4.w + a65 * k5.w)});
    const Vec2 y1{
        y.d + h_use * (a71 * k1.d + a73 * k3.d + a74 * k4.d + a75 * k5.d +
                       a76 * k6.d),
        y.w + h_use * (a71 * k1.w + a73 * k3.w + a74 * k4.w + a75 * k5.w +
                       a76 * k6.w)};
    const Vec2 k7 = rhs(y1);

    const double err_d = h_use * (e1 * k1.d + e3 * k3.d + e4 * k4.d +
                                  e5 * k5.d + e6 * k6.d + e7 * k7.d);
    const double err_w = h_use * (e1 * k1.w + e3 * k3.w + e4 * k4.w +
                                  e5 * k5.w + e6 * k6.w + e7 * k7.w);
    const double scd =
        opt.atol + opt.rtol * std::max(std::abs(y.d), std::abs(y1.d));
    const double scw =
        opt.atol + opt.rtol * std::max(std::abs(y.w), std::abs(y1.w));
    const double err = std::sqrt(
        0.5 * ((err_d / scd) * (err_d / scd) + (err_w / scw) * (err_w / scw)));

    if (opt.fixed_step <= 0.0) {
      if (!std::isfinite(err) || !std::isfinite(y1.d) || !std::isfinite(y1.w)) {
        h = 0.1 * h_use;
        reject_last = true;
        ++traj.n_rejected;
        continue;
      }
      if (err > 1.0) {
        const double fac11 = std::pow(err, expo1);
        h = h_use / std::min(1.0 / facl, fac11 / safe);
        reject_last = true;
        ++traj.n_rejected;
        continue;
      }
    } else if (!std::isfinite(y1.d) || !std::isfinite(y1.w)) {
      throw StepSizeUnderflow("state diverged in fixed-step mode");
    }

    // Accepted: build the continuous extension.
    DenseStep ds;
    ds.t0 = t;
    ds.h = h_use;
    const double ydiff_d = y1.d - y.d, ydiff_w = y1.w - y.w;
    const double bspl_d = h_use * k1.d - ydiff_d;
    const double bspl_w = h_use * k1.w - ydiff_w;
    ds.c[0][0] = y.d;
    ds.c[0][1] = y.w;
    ds.c[1][0] = ydiff_d;
    ds.c[1][1] = ydiff_w;
    ds.c[2][0] = bspl_d;
    ds.c[2][1] = bspl_w;
    ds.c[3][0] = ydiff_d - h_use * k7.d - bspl_d;
    ds.c[3][1] = ydiff_w - h_use * k7.w - bspl_w;
    ds.c[4][0] = h_use * (d1 * k1.d + d3 * k3.d + d4 * k4.d + d5 * k5.d +
                          d6 * k6.d + d7 * k7.d);
    ds.c[4][1] = h_use * (d1 * k1.w + d3 * k3.w + d4 * k4.w + d5 * k5.w +
                          d6 * k6.w + d7 * k7.w);
    traj.dense.push_back(ds);
    ++traj.n_steps;

    // Locate events inside (t, t + h_use].
    std::vector<Candidate> candidates;
    auto refine = [&](const Watcher& w, double ta, double tb, double ga,
                      double gb) {
      if (ga == 0.0) return ta;
      if (gb == 0.0) return tb;
      const double gtol = 1e-10 * std::max({1.0, std::abs(ga), std::abs(gb)});
      for (int i = 0; i < 90 && (tb - ta) > 1e-16; ++i) {
        const double tm = 0.5 * (ta + tb);
        const double gm = g_eval(w, dense_eval(ds, tm));
        if (std::abs(gm) <= gtol) return tm;
        if (sign_of(gm) == sign_of(ga)) {
          ta = tm;
          ga = gm;
        } else {
          tb = tm;
          gb = gm;
        }
      }
      return 0.5 * (ta + tb);
    };
    auto add_candidate = [&](const Watcher& w, double theta) {
      const Vec2 s = dense_eval(ds, theta);
      const double te = t + theta * h_use;
      Direction dir;
      if (w.kind == EventKind::TurningPoint) {
        const int before = w.last_sign != 0 ? w.last_sign : sign_of(w.prev_g);
        dir = before >= 0 ? Direction::Forward : Direction::Backward;
      } else {
        dir = s.w >= 0.0 ? Direction::Forward : Direction::Backward;
      }
      State st = state_at(te, s);
      if (w.kind == EventKind::UepCross || w.kind == EventKind::Escape)
        st.delta = w.level;  // pin the located crossing onto the level
      candidates.push_back(
          Candidate{theta, Event{w.kind, st, dir, w.level}, w.terminal});
    };

    for (Watcher& w : watchers) {
      const double g1 = g_eval(w, y1);
      if (w.kind == EventKind::AccelZero) {
        // Interior probes classify grazes that return within one step.
        const double probes[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
        double gv[5];
        gv[0] = w.prev_g;
        gv[4] = g1;
        for (int i = 1; i <= 3; ++i)
          gv[i] = g_eval(w, dense_eval(ds, probes[i]));
        for (int i = 0; i < 4; ++i) {
          if (gv[i] * gv[i + 1] < 0.0)
            add_candidate(
                w, refine(w, probes[i], probes[i + 1], gv[i], gv[i + 1]));
        }
      } else {
        const bool crossed =
            (w.prev_g * g1 < 0.0) ||
            (w.prev_g == 0.0 && g1 != 0.0 && w.last_sign != 0 &&
             sign_of(g1) != w.last_sign);
        if (crossed) add_candidate(w, refine(w, 0.0, 1.0, w.prev_g, g1));
      }
      w.prev_g = g1;
      if (g1 != 0.0) w.last_sign = sign_of(g1);
    }

    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       if (a.theta != b.theta) return a.theta < b.theta;
                       return !a.terminal && b.terminal;
                     });

    bool terminated = false;
    for (const Candidate& c : candidates) {
      // Drop repeats of the same crossing straddling a node.
      bool duplicate = false;
      const std::size_t lookback = std::min<std::size_t>(traj.events.size(), 8);
      for (std::size_t i = traj.events.size() - lookback;
           i < traj.events.size(); ++i) {
        const Event& prev = traj.events[i];
        if (prev.kind == c.event.kind && prev.level == c.event.level &&
            std::abs(prev.state.t - c.event.state.t) <=
                1e-11 * std::max(1.0, std::abs(c.event.state.t))) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;

      if (c.terminal) {
        traj.samples.push_back(c.event.state);
        finish(c.event.kind, c.event.state, c.event.direction, c.event.level);
        terminated = true;
        break;
      }
      traj.events.push_back(c.event);
    }
    if (terminated) return traj;

    t += h_use;
    y = y1;
    k1 = k7;
    traj.samples.push_back(state_at(t, y));
    traj.t_end = t;

    if (converge_enabled && energy_of(y) <= opt.converge_energy &&
        std::abs(y.d) <= opt.converge_radius)
      return finish(EventKind::Converged, state_at(t, y), motion_dir(y.w));

    if (clipped)
      return finish(EventKind::TimeLimit, state_at(t, y), motion_dir(y.w));

    if (opt.fixed_step <= 0.0) {
      const double fac11 = std::pow(std::max(err, 1e-30), expo1);
      double fac = fac11 / std::pow(facold, beta);
      fac = std::max(1.0 / facr, std::min(1.0 / facl, fac / safe));
      double hnew = h_use / fac;
      if (reject_last) hnew = std::min(hnew, h_use);
      facold = std::max(err, 1e-4);
      reject_last = false;
      h = hnew;
    }
  }
}

State interpolate_state(const Trajectory& traj, double t) {
  const double scale =
      std::max({1.0, std::abs(traj.t_begin), std::abs(traj.t_end)});
  if (t < traj.t_begin - 1e-9 * scale || t > traj.t_end + 1e-9 * scale)
    throw OutOfSpan("interpolation time outside the integrated span");
  t = std::clamp(t, traj.t_begin, traj.t_end);

  // Sample times are exact; return the stored state on a hit.
  auto it = std::lower_bound(
      traj.samples.begin(), traj.samples.end(), t,
      [](const State& s, double tv) { return s.t < tv; });
  if (it != traj.samples.end() && it->t == t) return *it;

  if (traj.dense.empty()) return traj.samples.front();

  auto ds_it = std::upper_bound(
      traj.dense.begin(), traj.dense.end(), t,
      [](double tv, const DenseStep& s) { return tv < s.t0; });
  const DenseStep& ds = ds_it == traj.dense.begin() ? traj.dense.front()
                                                    : *(ds_it - 1);
  const double theta = std::clamp((t - ds.t0) / ds.h, 0.0, 1.0);
  const Vec2 s = dense_eval(ds, theta);
  return State{t, s.d, s.w};
}

IntegrateOptions analysis_options(const PolynomialOscillator& model,
                                  const EquilibriumSet& eq) {
  IntegrateOptions opt;
  opt.escape_delta = escape_bound(eq);
  opt.converge_energy = convergence_energy(model, eq);
  opt.converge_radius = std::min(well_radius(eq), opt.escape_delta);
  if (eq.left_uep) opt.watched_levels.push_back(eq.left_uep->location);
  if (eq.right_uep) opt.watched_levels.push_back(eq.right_uep->location);
  return opt;
}

}  // namespace geac
