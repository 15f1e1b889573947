#include "addlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace addlab::dynamics {

LagMap LagMap::rule(int i, int j, double a) {
  if (i <= j || j < 1) throw std::invalid_argument("lags need i > j >= 1");
  LagMap m;
  m.a = a;
  m.lag_i = i;
  m.lag_j = j;
  static const double pattern[3] = {0.6, 0.7, 0.8};
  m.init.resize(static_cast<std::size_t>(i));
  for (int t = 0; t < i; ++t) m.init[static_cast<std::size_t>(t)] = pattern[t % 3];
  return m;
}

std::vector<double> trajectory(const LagMap& map, std::size_t n) {
  const std::size_t i = static_cast<std::size_t>(map.lag_i);
  const std::size_t j = static_cast<std::size_t>(map.lag_j);
  if (map.lag_j < 1 || map.lag_i <= map.lag_j)
    throw std::invalid_argument("lags need i > j >= 1");
  if (map.init.size() != i) throw std::invalid_argument("init block must have lag_i entries");
  for (std::size_t t = 0; t < i; ++t) {
    double v = map.init[t];
    if (!(v > 0.0 && v < 1.0)) {
      std::ostringstream msg;
      msg << "init[" << t << "] = " << v << " is outside ]0,1[";
      throw std::domain_error(msg.str());
    }
  }
  std::vector<double> u(map.init.begin(), map.init.end());
  u.reserve(n);
  if (n < u.size()) u.resize(n);
  while (u.size() < n) {
    std::size_t t = u.size();
    double v = lag_map_step(map.a, u[t - i], u[t - j]);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "trajectory left the finite range at index " << t;
      throw std::domain_error(msg.str());
    }
    u.push_back(v);
  }
  return u;
}

std::string to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::Fixed: return "fixed";
    case OrbitKind::Periodic: return "periodic";
    case OrbitKind::Weird: return "weird";
    case OrbitKind::ZeroCollapse: return "zero-collapse";
    case OrbitKind::Aperiodic: return "aperiodic";
  }
  return "?";
}

namespace {

// Positions 1..p grouped by value equality; classes keyed to their
// smallest member.
std::vector<std::vector<int>> group_positions(const std::vector<double>& cycle, double eq_tol) {
  const int p = static_cast<int>(cycle.size());
  std::vector<int> cls(static_cast<std::size_t>(p), -1);
  int next = 0;
  for (int k = 0; k < p; ++k) {
    if (cls[static_cast<std::size_t>(k)] >= 0) continue;
    cls[static_cast<std::size_t>(k)] = next;
    for (int t = k + 1; t < p; ++t)
      if (cls[static_cast<std::size_t>(t)] < 0 &&
          std::fabs(cycle[static_cast<std::size_t>(t)] - cycle[static_cast<std::size_t>(k)]) < eq_tol)
        cls[static_cast<std::size_t>(t)] = next;
    ++next;
  }
  std::vector<std::vector<int>> classes(static_cast<std::size_t>(next));
  for (int k = 0; k < p; ++k) classes[static_cast<std::size_t>(cls[static_cast<std::size_t>(k)])].push_back(k + 1);
  return classes;  // already sorted: positions visited in order, first member smallest
}

}  // namespace

OrbitReport classify_orbit(const LagMap& map, const ClassifyOptions& opts) {
  const std::size_t total = opts.transient + opts.window;
  std::vector<double> u = trajectory(map, total);
  OrbitReport rep;

  // Collapse first: the zero tail would otherwise read as a fixed point.
  bool tail_zero = true;
  for (std::size_t t = opts.transient; t < total; ++t)
    if (std::fabs(u[t]) >= opts.collapse_threshold) {
      tail_zero = false;
      break;
    }
  if (tail_zero) {
    rep.kind = OrbitKind::ZeroCollapse;
    std::size_t first = total;
    while (first > 0 && std::fabs(u[first - 1]) < opts.collapse_threshold) --first;
    rep.transient_length = first;
    std::size_t take = std::min<std::size_t>(16, opts.window);
    rep.witness.assign(u.end() - static_cast<std::ptrdiff_t>(take), u.end());
    return rep;
  }

  const double* w = u.data() + opts.transient;
  const std::size_t wn = opts.window;
  int period = 0;
  for (int p = 1; p <= opts.p_max && static_cast<std::size_t>(2 * p) <= wn; ++p) {
    bool ok = true;
    for (std::size_t t = static_cast<std::size_t>(p); t < wn; ++t)
      if (std::fabs(w[t] - w[t - static_cast<std::size_t>(p)]) >= opts.tol) {
        ok = false;
        break;
      }
    if (ok) {
      period = p;
      break;
    }
  }

  if (period == 0) {
    rep.kind = OrbitKind::Aperiodic;
    std::size_t take = std::min<std::size_t>(64, wn);
    rep.witness.assign(u.end() - static_cast<std::ptrdiff_t>(take), u.end());
    return rep;
  }

  std::vector<double> cycle(w + wn - static_cast<std::size_t>(period), w + wn);
  const double eq_tol = opts.equality_factor * opts.tol;

  if (period == 1) {
    rep.kind = OrbitKind::Fixed;
    rep.period = 1;
    rep.distinct = 1;
    rep.equality_classes = {{1}};
    rep.witness = cycle;
    return rep;
  }

  // Phase-invariant canonical form: the lexicographically smallest class
  // pattern over all rotations of the cycle.
  std::vector<std::vector<int>> best_classes;
  std::vector<double> best_cycle;
  for (int r = 0; r < period; ++r) {
    std::vector<double> rot(cycle.size());
    for (int k = 0; k < period; ++k)
      rot[static_cast<std::size_t>(k)] = cycle[static_cast<std::size_t>((k + r) % period)];
    auto classes = group_positions(rot, eq_tol);
    if (best_classes.empty() || classes < best_classes) {
      best_classes = std::move(classes);
      best_cycle = std::move(rot);
    }
  }

  rep.period = period;
  rep.distinct = static_cast<int>(best_classes.size());
  rep.equality_classes = std::move(best_classes);
  rep.witness = std::move(best_cycle);
  rep.kind = (rep.distinct < rep.period) ? OrbitKind::Weird : OrbitKind::Periodic;
  return rep;
}

namespace {

LagMap make_map(int lag_i, int lag_j, double a, const std::vector<double>& init) {
  LagMap m = LagMap::rule(lag_i, lag_j, a);
  if (!init.empty()) {
    if (init.size() != static_cast<std::size_t>(lag_i))
      throw std::invalid_argument("init block must have lag_i entries");
    m.init = init;
  }
  return m;
}

bool same_class(const OrbitReport& x, const OrbitReport& y) {
  return x.kind == y.kind && x.period == y.period;
}

}  // namespace

ScanResult bifurcation_scan(int lag_i, int lag_j, double a_lo, double a_hi, std::size_t grid,
                            double refine_tol, const std::vector<double>& init,
                            const ClassifyOptions& opts, unsigned workers) {
  if (grid < 2) throw std::invalid_argument("scan needs at least 2 grid points");
  if (!(a_hi > a_lo)) throw std::invalid_argument("scan needs a_hi > a_lo");
  if (!(refine_tol > 0)) throw std::invalid_argument("refine_tol must be positive");

  std::vector<double> params(grid);
  const double step = (a_hi - a_lo) / static_cast<double>(grid - 1);
  for (std::size_t t = 0; t < grid; ++t) params[t] = a_lo + step * static_cast<double>(t);
  params.back() = a_hi;

  std::vector<OrbitReport> reports(grid);
  unsigned n_workers = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(grid));
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (unsigned wk = 0; wk < n_workers; ++wk)
    pool.emplace_back([&, wk]() {
      for (std::size_t t = wk; t < grid; t += n_workers)
        reports[t] = classify_orbit(make_map(lag_i, lag_j, params[t], init), opts);
    });
  for (auto& th : pool) th.join();

  ScanResult res;
  res.rows.reserve(grid);
  for (std::size_t t = 0; t < grid; ++t)
    res.rows.push_back({params[t], reports[t].kind, reports[t].period, reports[t].distinct});

  for (std::size_t t = 0; t + 1 < grid; ++t) {
    if (same_class(reports[t], reports[t + 1])) continue;
    double lo = params[t], hi = params[t + 1];
    OrbitReport left = reports[t];
    OrbitReport right = reports[t + 1];
    while (hi - lo > refine_tol) {
      double mid = 0.5 * (lo + hi);
      OrbitReport mr = classify_orbit(make_map(lag_i, lag_j, mid, init), opts);
      if (same_class(mr, left)) {
        lo = mid;
      } else {
        hi = mid;
        right = mr;
      }
    }
    res.transitions.push_back({hi, left.kind, left.period, right.kind, right.period});
  }
  return res;
}

std::vector<double> feigenbaum_estimate(const std::vector<double>& points) {
  if (points.size() < 4)
    throw std::invalid_argument("ratio estimate needs at least 4 points");
  for (std::size_t t = 1; t < points.size(); ++t)
    if (!(points[t] > points[t - 1]))
      throw std::invalid_argument("points must be strictly increasing");
  std::vector<double> out;
  out.reserve(points.size() - 2);
  for (std::size_t m = 1; m + 1 < points.size(); ++m)
    out.push_back((points[m] - points[m - 1]) / (points[m + 1] - points[m]));
  return out;
}

std::vector<double> logistic_superstable_params(std::size_t count) {
  if (count == 0) return {};
  if (count > 14)
    throw std::invalid_argument("superstable parameters beyond index 14 exceed double spacing");
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double r;
    if (k == 0)
      r = 2.0;  // F(1/2) = r/4
    else if (k == 1)
      r = 3.2;
    else
      r = out[k - 1] + (out[k - 1] - out[k - 2]) * 0.214;  // 1/delta seed
    const std::size_t steps = static_cast<std::size_t>(1) << k;
    for (int it = 0; it < 80; ++it) {
      // x and its r-derivative through 2^k map steps
      double x = 0.5, dx = 0.0;
      for (std::size_t s = 0; s < steps; ++s) {
        dx = x * (1.0 - x) + r * (1.0 - 2.0 * x) * dx;
        x = r * x * (1.0 - x);
      }
      double g = x - 0.5;
      if (dx == 0.0) break;
      double stepr = g / dx;
      r -= stepr;
      if (std::fabs(stepr) < 1e-14) break;
    }
    out.push_back(r);
  }
  return out;
}

std::vector<CollapseRow> collapse_profile(int lag_i, int lag_j,
                                          const std::vector<double>& a_values,
                                          const std::vector<double>& init, std::size_t n_max,
                                          double threshold) {
  std::vector<CollapseRow> rows;
  rows.reserve(a_values.size());
  for (double a : a_values) {
    std::vector<double> u = trajectory(make_map(lag_i, lag_j, a, init), n_max);
    std::size_t first = u.size();
    while (first > 0 && std::fabs(u[first - 1]) < threshold) --first;
    bool collapsed = first < u.size();
    rows.push_back({a, collapsed, collapsed ? first : u.size()});
  }
  return rows;
}

}  // namespace addlab::dynamics
