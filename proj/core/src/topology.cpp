#include "mrlsnet/topology.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "mrlsnet/errors.hpp"

namespace mrls {

std::uint64_t Topology::endpoint_total() const {
  std::uint64_t s = 0;
  for (auto d : endpoints_per_switch) s += d;
  return s;
}

std::uint64_t Topology::link_count() const {
  std::uint64_t stubs = 0;
  for (const auto& ports : adj) stubs += ports.size();
  return stubs / 2;
}

std::uint32_t Topology::reverse_port(SwitchId s, std::uint32_t p) const {
  SwitchId n = adj[s][p];
  for (std::uint32_t q = 0; q < adj[n].size(); ++q) {
    if (adj[n][q] == s) return q;
  }
  return UINT32_MAX;
}

Csr make_csr(const Topology& t) {
  Csr csr;
  const std::size_t n = t.switch_count();
  csr.offsets.resize(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    csr.offsets[i + 1] = csr.offsets[i] + static_cast<std::uint32_t>(t.adj[i].size());
  }
  csr.neighbors.resize(csr.offsets[n]);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(t.adj[i].begin(), t.adj[i].end(),
              csr.neighbors.begin() + csr.offsets[i]);
  }
  return csr;
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

std::vector<ValidationIssue> validate(const Topology& t) {
  std::vector<ValidationIssue> issues;
  const std::size_t n = t.switch_count();

  std::uint64_t level_sum = 0;
  for (auto l : t.levels) level_sum += l;
  if (level_sum != n) {
    issues.push_back({"level sizes sum to " + std::to_string(level_sum) +
                          " but there are " + std::to_string(n) + " switches",
                      0, 0});
    return issues;  // ids are not trustworthy past this point
  }
  if (t.endpoints_per_switch.size() != n) {
    issues.push_back({"endpoints_per_switch has wrong length", 0, 0});
    return issues;
  }

  for (SwitchId s = 0; s < n; ++s) {
    const auto& ports = t.adj[s];
    const int level = t.level_of(s);
    std::set<SwitchId> seen;
    for (std::uint32_t p = 0; p < ports.size(); ++p) {
      SwitchId nb = ports[p];
      if (nb >= n) {
        issues.push_back({"port leads to unknown switch", s, p});
        continue;
      }
      if (nb == s) {
        issues.push_back({"self-loop", s, p});
        continue;
      }
      if (!seen.insert(nb).second) {
        issues.push_back({"duplicate edge to switch " + std::to_string(nb), s, p});
      }
      int nl = t.level_of(nb);
      if (nl != level - 1 && nl != level + 1) {
        issues.push_back({"link to non-adjacent level " + std::to_string(nl), s, p});
      }
      // Symmetry: the neighbor must list us exactly once.
      std::size_t back = 0;
      for (SwitchId x : t.adj[nb]) {
        if (x == s) ++back;
      }
      if (back != 1) {
        issues.push_back({"asymmetric adjacency with switch " + std::to_string(nb), s, p});
      }
    }
    std::uint64_t used = ports.size() + t.endpoints_per_switch[s];
    if (used > t.radix) {
      issues.push_back({"switch uses " + std::to_string(used) + " ports but radix is " +
                            std::to_string(t.radix),
                        s, 0});
    }
    if (t.endpoints_per_switch[s] > 0 && level != 0) {
      issues.push_back({"endpoints attached to non-leaf switch", s, 0});
    }
  }
  return issues;
}

}  // namespace mrls
