#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "mrlsnet/topology.hpp"

namespace mrls {

/// Real-valued MRLS shape for the probabilistic model. Level populations
/// need not be integral here; the model substitutes expectations for the
/// random quantities throughout.
struct MrlsShape {
  double leaves = 0;   // N1
  double spines = 0;   // N2
  double uplinks = 0;  // u, leaf degree
  double radix = 0;    // R, spine degree

  double downlinks() const { return radix - uplinks; }
  double endpoints() const { return leaves * downlinks(); }
};

MrlsShape shape_of(const MrlsSpec& spec);

/// Shape for an endpoint target: N1 = ceil(S/d), N2 = ceil(u*N1/R), the
/// same rounding the generator applies.
MrlsShape mrls_shape_for_endpoints(std::uint32_t radix, std::uint32_t uplinks,
                                   double endpoints);

/// Continuous variant (no rounding); used for locating region boundaries.
MrlsShape mrls_shape_continuous(std::uint32_t radix, std::uint32_t uplinks,
                                double endpoints);

/// Splits R into (u, d) with u/d == f; throws InfeasibleSpec when f does
/// not yield integers.
std::pair<std::uint32_t, std::uint32_t> split_radix(std::uint32_t radix, double f);

/// Expected neighborhood size of a set of x same-level switches, each of
/// degree `level_degree`, toward a level of `next_level_size` switches.
double eta(double x, double level_degree, double next_level_size);

/// Expected ball/shell cardinality sequences. Index 0 holds the sequences
/// for a leaf-centered ball, index 1 for a spine-centered one. b[i][r] is
/// the expected number of switches of the appropriate level within
/// distance r; n[i][r] = b[i][r] - b[i][r-2] is the expected shell.
struct SphereModel {
  MrlsShape shape;
  std::array<std::vector<double>, 2> b;
  std::array<std::vector<double>, 2> n;
  std::array<std::uint32_t, 2> truncation_r{0, 0};

  double shell(int start_level, std::uint32_t r) const {
    return r < n[start_level].size() ? n[start_level][r] : 0.0;
  }
};

SphereModel ball_sequence(const MrlsShape& shape, std::uint32_t r_max = 64);

double predicted_average_distance(const MrlsShape& shape);
double predicted_average_distance_star(const MrlsShape& shape);

/// P[X cap Y = empty] for independent uniform subsets of sizes x, y in a
/// universe of size n. Exact for small integral inputs, log-gamma
/// otherwise; symmetric in x and y.
double empty_intersection_prob(double n, double x, double y);

/// P[D* <= k] from the expected-sphere pair (1, k-2); throws InvalidK for
/// k < 2. The 0.5 crossing of k separates the D*=k region from D*=k+1.
double prob_dstar_leq(const MrlsShape& shape, std::uint32_t k);

/// Expected count of switch pairs whose spheres fail to meet (diagnostic;
/// prob_dstar_leq == (1 - lambda/G)^G).
double expected_empty_pairs(const MrlsShape& shape, std::uint32_t k);

/// Endpoint count at which prob_dstar_leq(., k) crosses 0.5 for radix R
/// and thickness f, located on the continuous shape.
double dstar_threshold_endpoints(std::uint32_t radix, double f, std::uint32_t k);

struct SpectrumPoint {
  double endpoints = 0;  // S
  double leaves = 0;
  double spines = 0;
  std::map<std::uint32_t, double> prob_dstar_leq;
  double predicted_a = 0;
  double predicted_theta = 0;
};

std::vector<SpectrumPoint> spectrum_sweep(std::uint32_t radix, double f,
                                          const std::vector<double>& endpoint_counts,
                                          const std::vector<std::uint32_t>& k_set);

/// Log-spaced endpoint grid helper for sweeps.
std::vector<double> log_spaced(double lo, double hi, std::size_t points);

std::uint32_t radix_for_endpoints_ft(std::uint64_t endpoints, std::uint32_t height);
std::uint32_t radix_for_endpoints_oft(std::uint64_t endpoints);
/// Smallest radix whose f-thickness MRLS stays in the target leaf-diameter
/// region (P[D* <= D+1] >= 0.5) at the requested size. Returns 0 when no
/// radix up to 4096 qualifies.
std::uint32_t radix_for_endpoints_mrls(std::uint64_t endpoints, double f,
                                       std::uint32_t target_diameter);

}  // namespace mrls
