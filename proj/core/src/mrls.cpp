#include <algorithm>
#include <string>
#include <vector>

#include "mrlsnet/errors.hpp"
#include "mrlsnet/rng.hpp"
#include "mrlsnet/topology.hpp"

namespace mrls {

namespace {

// Edge-presence bitmap over leaf x spine.
class EdgeSet {
public:
  EdgeSet(std::uint32_t leaves, std::uint32_t spines)
      : spines_(spines), bits_((static_cast<std::uint64_t>(leaves) * spines + 63) / 64, 0) {}

  bool test(std::uint32_t leaf, std::uint32_t spine) const {
    std::uint64_t idx = static_cast<std::uint64_t>(leaf) * spines_ + spine;
    return (bits_[idx >> 6] >> (idx & 63)) & 1u;
  }
  void set(std::uint32_t leaf, std::uint32_t spine) {
    std::uint64_t idx = static_cast<std::uint64_t>(leaf) * spines_ + spine;
    bits_[idx >> 6] |= (1ULL << (idx & 63));
  }
  void clear(std::uint32_t leaf, std::uint32_t spine) {
    std::uint64_t idx = static_cast<std::uint64_t>(leaf) * spines_ + spine;
    bits_[idx >> 6] &= ~(1ULL << (idx & 63));
  }

private:
  std::uint32_t spines_;
  std::vector<std::uint64_t> bits_;
};

struct Pair {
  std::uint32_t leaf;
  std::uint32_t spine;
};

// One stub-matching pass. Returns the finalized pair list or nothing when
// the swap budget ran out.
bool try_match(const std::vector<std::uint32_t>& leaf_stub_owner,
               const std::vector<std::uint32_t>& spine_stub_owner,
               std::uint32_t leaves, std::uint32_t spines,
               std::uint64_t swap_budget, Rng& rng, std::vector<Pair>& out) {
  std::vector<std::uint32_t> spine_stubs = spine_stub_owner;
  rng.shuffle(spine_stubs);

  EdgeSet edges(leaves, spines);
  out.clear();
  out.reserve(leaf_stub_owner.size());

  for (std::size_t k = 0; k < leaf_stub_owner.size(); ++k) {
    std::uint32_t leaf = leaf_stub_owner[k];
    std::uint32_t spine = spine_stubs[k];
    if (!edges.test(leaf, spine)) {
      edges.set(leaf, spine);
      out.push_back({leaf, spine});
      continue;
    }
    // Duplicate: swap the spine side with a previously placed pair.
    bool fixed = false;
    if (!out.empty()) {
      for (std::uint64_t attempt = 0; attempt < swap_budget; ++attempt) {
        std::uint32_t m = rng.below(static_cast<std::uint32_t>(out.size()));
        Pair other = out[m];
        if (other.spine == spine || other.leaf == leaf) continue;
        if (edges.test(leaf, other.spine) || edges.test(other.leaf, spine)) continue;
        edges.clear(other.leaf, other.spine);
        edges.set(leaf, other.spine);
        edges.set(other.leaf, spine);
        out[m] = {other.leaf, spine};
        out.push_back({leaf, other.spine});
        fixed = true;
        break;
      }
    }
    if (!fixed) return false;
  }
  return true;
}

}  // namespace

MrlsSpec mrls_spec(std::uint32_t radix, std::uint32_t uplinks,
                   std::uint32_t leaves, std::uint64_t seed) {
  if (radix == 0 || uplinks == 0 || uplinks >= radix || leaves == 0) {
    throw InfeasibleSpec("mrls: need 0 < u < R and N1 > 0");
  }
  std::uint64_t stubs = static_cast<std::uint64_t>(uplinks) * leaves;
  if (stubs % radix != 0) {
    throw InfeasibleSpec("mrls: u*N1 = " + std::to_string(stubs) +
                         " is not divisible by R = " + std::to_string(radix));
  }
  MrlsSpec s;
  s.radix = radix;
  s.uplinks = uplinks;
  s.downlinks = radix - uplinks;
  s.leaves = leaves;
  s.spines = static_cast<std::uint32_t>(stubs / radix);
  s.seed = seed;
  return s;
}

MrlsSpec mrls_spec_for_endpoints(std::uint32_t radix, std::uint32_t uplinks,
                                 std::uint64_t endpoints, std::uint64_t seed) {
  if (radix == 0 || uplinks == 0 || uplinks >= radix) {
    throw InfeasibleSpec("mrls: need 0 < u < R");
  }
  std::uint32_t d = radix - uplinks;
  if (endpoints < d) {
    throw InfeasibleSpec("mrls: fewer endpoints than one full leaf switch");
  }
  MrlsSpec s;
  s.radix = radix;
  s.uplinks = uplinks;
  s.downlinks = d;
  s.leaves = static_cast<std::uint32_t>((endpoints + d - 1) / d);
  std::uint64_t stubs = static_cast<std::uint64_t>(uplinks) * s.leaves;
  s.spines = static_cast<std::uint32_t>((stubs + radix - 1) / radix);
  s.seed = seed;
  s.endpoints_total = endpoints;
  return s;
}

Topology build_mrls(const MrlsSpec& spec) {
  const std::uint32_t R = spec.radix;
  const std::uint32_t u = spec.uplinks;
  const std::uint32_t d = spec.downlinks;
  const std::uint32_t n1 = spec.leaves;
  const std::uint32_t n2 = spec.spines;

  if (R == 0 || u == 0 || d == 0 || n1 == 0 || n2 == 0) {
    throw InfeasibleSpec("mrls: all of R, u, d, N1, N2 must be positive");
  }
  if (u + d != R) {
    throw InfeasibleSpec("mrls: u + d must equal R");
  }
  std::uint64_t stubs = static_cast<std::uint64_t>(u) * n1;
  std::uint64_t spine_capacity = static_cast<std::uint64_t>(R) * n2;
  if (!spec.endpoints_total) {
    if (stubs != spine_capacity) {
      throw InfeasibleSpec("mrls: u*N1 != R*N2 (" + std::to_string(stubs) + " vs " +
                           std::to_string(spine_capacity) + ")");
    }
  } else {
    if (stubs > spine_capacity || spine_capacity - stubs >= R) {
      throw InfeasibleSpec("mrls: N2 inconsistent with u*N1 for radix R");
    }
    std::uint64_t ep_capacity = static_cast<std::uint64_t>(d) * n1;
    if (*spec.endpoints_total > ep_capacity ||
        ep_capacity - *spec.endpoints_total >= d) {
      throw InfeasibleSpec("mrls: endpoint total inconsistent with N1 leaves");
    }
  }
  // Leaf stub k belongs to leaf k/u. Spine stubs distribute u*N1 slots as
  // evenly as possible: the first (stubs mod N2 == 0 ? all : ...) spines
  // take ceil, the rest floor. In the canonical case every spine gets R.
  std::vector<std::uint32_t> leaf_stub_owner(stubs);
  for (std::uint64_t k = 0; k < stubs; ++k) {
    leaf_stub_owner[k] = static_cast<std::uint32_t>(k / u);
  }
  std::vector<std::uint32_t> spine_stub_owner;
  spine_stub_owner.reserve(stubs);
  {
    std::uint64_t base = stubs / n2;
    std::uint64_t extra = stubs % n2;
    for (std::uint32_t j = 0; j < n2; ++j) {
      std::uint64_t deg = base + (j < extra ? 1 : 0);
      for (std::uint64_t r = 0; r < deg; ++r) spine_stub_owner.push_back(j);
    }
  }

  const int kMaxRestarts = 20;
  std::uint64_t swap_budget = static_cast<std::uint64_t>(n1) * R;
  std::vector<Pair> pairs;
  bool ok = false;
  for (int restart = 0; restart < kMaxRestarts && !ok; ++restart) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(restart)));
    ok = try_match(leaf_stub_owner, spine_stub_owner, n1, n2, swap_budget, rng, pairs);
  }
  if (!ok) {
    throw GenerationStalled("mrls: random matching failed after 20 restarts (seed " +
                            std::to_string(spec.seed) + ")");
  }

  Topology t;
  t.levels = {n1, n2};
  t.radix = R;
  t.adj.assign(static_cast<std::size_t>(n1) + n2, {});
  for (std::uint32_t i = 0; i < n1; ++i) t.adj[i].reserve(u);
  // Port order is the order in which edges were finalized.
  for (const Pair& p : pairs) {
    t.adj[p.leaf].push_back(n1 + p.spine);
    t.adj[n1 + p.spine].push_back(p.leaf);
  }

  // Every leaf carries d endpoints except a short tail absorbing the
  // deficit when an exact endpoint total was requested.
  t.endpoints_per_switch.assign(t.switch_count(), 0);
  std::uint64_t remaining = spec.endpoints_total ? *spec.endpoints_total
                                                 : static_cast<std::uint64_t>(d) * n1;
  for (std::uint32_t i = 0; i < n1; ++i) {
    std::uint32_t take = static_cast<std::uint32_t>(std::min<std::uint64_t>(d, remaining));
    t.endpoints_per_switch[i] = static_cast<std::uint16_t>(take);
    remaining -= take;
  }
  if (remaining != 0) {
    throw InfeasibleSpec("mrls: endpoint distribution failed");
  }
  return t;
}

}  // namespace mrls
