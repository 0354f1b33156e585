#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mrlsnet/errors.hpp"
#include "mrlsnet/topology.hpp"

namespace mrls {

// Two columns of q^2+q+1 leaf switches around one column of spines. Leaves
// on both sides are indexed by the points of the projective plane PG(2,q),
// spines by its lines; leaf p connects to spine l iff p lies on l (dot
// product zero over GF(q)). Any two spines share exactly one leaf on each
// side, which makes every leaf pair lie at distance 2.
Topology build_oft(const OftSpec& spec) {
  if (!is_prime(spec.q)) {
    throw InfeasibleSpec("oft: q = " + std::to_string(spec.q) +
                         " is not prime (prime powers are not supported)");
  }
  const std::uint32_t q = spec.q;
  const std::uint32_t m = q * q + q + 1;

  // Normalized homogeneous coordinates: first nonzero coordinate is 1.
  std::vector<std::array<std::uint32_t, 3>> points;
  points.reserve(m);
  for (std::uint32_t b = 0; b < q; ++b)
    for (std::uint32_t c = 0; c < q; ++c) points.push_back({1, b, c});
  for (std::uint32_t c = 0; c < q; ++c) points.push_back({0, 1, c});
  points.push_back({0, 0, 1});

  auto on_line = [q](const std::array<std::uint32_t, 3>& x,
                     const std::array<std::uint32_t, 3>& y) {
    return (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q == 0;
  };

  // Leaves: left block [0, m), right block [m, 2m). Spines: [2m, 3m).
  Topology t;
  t.levels = {2 * m, m};
  t.radix = 2 * (q + 1);
  t.adj.assign(3 * static_cast<std::size_t>(m), {});
  for (std::uint32_t side = 0; side < 2; ++side) {
    for (std::uint32_t p = 0; p < m; ++p) {
      for (std::uint32_t l = 0; l < m; ++l) {
        if (!on_line(points[p], points[l])) continue;
        t.adj[side * m + p].push_back(2 * m + l);
        t.adj[2 * m + l].push_back(side * m + p);
      }
    }
  }

  t.endpoints_per_switch.assign(t.switch_count(), 0);
  for (std::uint32_t leaf = 0; leaf < 2 * m; ++leaf) {
    t.endpoints_per_switch[leaf] = static_cast<std::uint16_t>(q + 1);
  }
  return t;
}

}  // namespace mrls
