#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace addlab::dynamics {

// u(n) = F_a(u(n-i), u(n-j)) with F_a(x,y) = a x(1-x) y(1-y).
// lag_i > lag_j >= 1. Plain double: the scans need speed, and the
// source values carry at most 7 digits anyway.
struct LagMap {
  double a = 1.0;
  int lag_i = 2;
  int lag_j = 1;
  std::vector<double> init;  // length lag_i, values in ]0,1[

  static LagMap rule(int i, int j, double a);  // init defaults to 0.6, 0.7, 0.8 truncated/extended
};

inline double lag_map_step(double a, double x, double y) {
  return a * x * (1.0 - x) * y * (1.0 - y);
}

// First lag_i entries are the init block. Throws std::domain_error on
// non-finite values or init outside ]0,1[; the offending index is named.
std::vector<double> trajectory(const LagMap& map, std::size_t n);

enum class OrbitKind { Fixed, Periodic, Weird, ZeroCollapse, Aperiodic };

std::string to_string(OrbitKind kind);

struct OrbitReport {
  OrbitKind kind = OrbitKind::Aperiodic;
  int period = 0;     // minimal p, set for Fixed(1)/Periodic/Weird
  int distinct = 0;   // distinct-value count within one period (Weird: < period)
  // Positions 1..period grouped into equal-value classes, each class
  // sorted, classes ordered by smallest member. Phase-invariant
  // canonical form: among all rotations of the period window the
  // lexicographically smallest class pattern is reported, so reruns
  // that lock onto a different phase agree.
  std::vector<std::vector<int>> equality_classes;
  std::size_t transient_length = 0;  // ZeroCollapse: first index with tail below threshold
  std::vector<double> witness;       // one period of values (or final window sample)
};

struct ClassifyOptions {
  std::size_t transient = 5000;
  std::size_t window = 4096;
  double tol = 1e-7;
  int p_max = 256;
  double collapse_threshold = 1e-10;
  // Value-equality inside a period is tested at 10*tol: loose enough to
  // separate genuine coincidences from period-detection noise.
  double equality_factor = 10.0;
};

OrbitReport classify_orbit(const LagMap& map, const ClassifyOptions& opts = {});

// a-grid classification, then bisection on each classification change
// down to width refine_tol. A transition is a change of (kind, period).
struct Transition {
  double a;  // refined boundary
  OrbitKind from_kind;
  int from_period;
  OrbitKind to_kind;
  int to_period;
};

struct ScanRow {
  double a;
  OrbitKind kind;
  int period;
  int distinct;
};

struct ScanResult {
  std::vector<ScanRow> rows;          // parameter order
  std::vector<Transition> transitions;
};

ScanResult bifurcation_scan(int lag_i, int lag_j, double a_lo, double a_hi,
                            std::size_t grid, double refine_tol,
                            const std::vector<double>& init = {},
                            const ClassifyOptions& opts = {},
                            unsigned workers = 0);  // 0: hardware default

// delta(m) = (a_m - a_{m-1}) / (a_{m+1} - a_m) for m = 1..count-2.
// Throws std::invalid_argument for fewer than 4 points or non-increasing input.
std::vector<double> feigenbaum_estimate(const std::vector<double>& points);

// Superstable parameters of the classical one-variable logistic map,
// r_k with F^(2^k)(1/2) = 1/2, found by Newton on r. Output feeds
// feigenbaum_estimate as its self-validation oracle: the ratios must
// approach 4.6692 with no input from the two-lag system at all.
std::vector<double> logistic_superstable_params(std::size_t count);

struct CollapseRow {
  double a;
  bool collapsed;
  std::size_t transient_length;  // first index after which all terms stay below threshold
};

std::vector<CollapseRow> collapse_profile(int lag_i, int lag_j,
                                          const std::vector<double>& a_values,
                                          const std::vector<double>& init,
                                          std::size_t n_max, double threshold);

}  // namespace addlab::dynamics
