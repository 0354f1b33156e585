#include "mrlsnet/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mrlsnet/errors.hpp"

namespace mrls {

MrlsShape shape_of(const MrlsSpec& spec) {
  MrlsShape s;
  s.leaves = spec.leaves;
  s.spines = spec.spines;
  s.uplinks = spec.uplinks;
  s.radix = spec.radix;
  return s;
}

MrlsShape mrls_shape_for_endpoints(std::uint32_t radix, std::uint32_t uplinks,
                                   double endpoints) {
  if (uplinks == 0 || uplinks >= radix) throw InfeasibleSpec("need 0 < u < R");
  double d = radix - uplinks;
  if (endpoints < d) {
    throw InfeasibleSpec("fewer endpoints than one full leaf switch");
  }
  MrlsShape s;
  s.radix = radix;
  s.uplinks = uplinks;
  s.leaves = std::ceil(endpoints / d);
  s.spines = std::ceil(s.leaves * uplinks / radix);
  return s;
}

MrlsShape mrls_shape_continuous(std::uint32_t radix, std::uint32_t uplinks,
                                double endpoints) {
  if (uplinks == 0 || uplinks >= radix) throw InfeasibleSpec("need 0 < u < R");
  double d = radix - uplinks;
  if (endpoints < d) {
    throw InfeasibleSpec("fewer endpoints than one full leaf switch");
  }
  MrlsShape s;
  s.radix = radix;
  s.uplinks = uplinks;
  s.leaves = endpoints / d;
  s.spines = s.leaves * uplinks / radix;
  return s;
}

std::pair<std::uint32_t, std::uint32_t> split_radix(std::uint32_t radix, double f) {
  double u_real = radix * f / (1.0 + f);
  std::uint32_t u = static_cast<std::uint32_t>(std::lround(u_real));
  if (u == 0 || u >= radix || std::abs(u_real - u) > 1e-9) {
    throw InfeasibleSpec("thickness f does not split radix " + std::to_string(radix) +
                         " into integer uplinks/downlinks");
  }
  return {u, radix - u};
}

double eta(double x, double level_degree, double next_level_size) {
  if (x <= 0) return 0.0;
  return next_level_size * (1.0 - std::exp(-x * level_degree / next_level_size));
}

SphereModel ball_sequence(const MrlsShape& shape, std::uint32_t r_max) {
  SphereModel model;
  model.shape = shape;
  const double population[2] = {shape.leaves, shape.spines};
  const double degree[2] = {shape.uplinks, shape.radix};
  constexpr double kSaturation = 1.0 - 1e-9;

  for (int start = 0; start < 2; ++start) {
    auto& b = model.b[start];
    b.assign(1, 1.0);
    // Level of the ball at radius r is (start + r) mod 2.
    bool saturated[2] = {false, false};
    for (std::uint32_t r = 1; r <= r_max; ++r) {
      int level = (start + r) & 1;
      double next;
      if (r == 1) {
        next = std::min(degree[start], population[level]);
      } else {
        next = eta(b[r - 1], degree[(start + r - 1) & 1], population[level]);
      }
      b.push_back(next);
      if (next >= population[level] * kSaturation) {
        saturated[level] = true;
        if (saturated[0] && saturated[1]) break;
      }
    }
    model.truncation_r[start] = static_cast<std::uint32_t>(b.size()) - 1;

    auto& n = model.n[start];
    n.assign(b.size(), 0.0);
    n[0] = 1.0;
    if (b.size() > 1) n[1] = b[1];
    for (std::size_t r = 2; r < b.size(); ++r) n[r] = b[r] - b[r - 2];
    // Close each parity class so shells sum to the level population: the
    // eta fixpoint approaches it but never arrives.
    for (int parity = 0; parity < 2; ++parity) {
      std::size_t last = 0;
      bool found = false;
      for (std::size_t r = b.size(); r-- > 0;) {
        if ((static_cast<int>(r) & 1) == parity) {
          last = r;
          found = true;
          break;
        }
      }
      if (!found || last < 2) continue;
      int level = (start + parity) & 1;
      double tail = population[level] - b[last - 2];
      n[last] = std::max(tail, 0.0);
      b[last] = population[level];
    }
  }
  return model;
}

double predicted_average_distance(const MrlsShape& shape) {
  SphereModel m = ball_sequence(shape);
  const auto& n = m.n[0];
  double sum = 0.0;
  for (std::size_t r = 2; r < n.size(); r += 2) {
    sum += static_cast<double>(r) * n[r];
  }
  return sum / (shape.leaves - 1.0);
}

double predicted_average_distance_star(const MrlsShape& shape) {
  SphereModel m = ball_sequence(shape);
  double total = shape.leaves + shape.spines;
  double sum = 0.0;
  for (int start = 0; start < 2; ++start) {
    const auto& n = m.n[start];
    for (std::size_t r = 1; r < n.size(); ++r) {
      sum += static_cast<double>(r) * n[r];
    }
  }
  return sum / (total - 1.0);
}

namespace {

bool integral(double v) { return std::abs(v - std::round(v)) < 1e-9; }

// Exact C(n, k) for n small enough that the product fits uint64.
std::uint64_t binom_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // divides exactly at every step
  }
  return r;
}

}  // namespace

double empty_intersection_prob(double n, double x, double y) {
  if (x <= 0.0 || y <= 0.0) return 1.0;
  if (x + y > n) return 0.0;
  if (integral(n) && integral(x) && integral(y) && n <= 60) {
    std::uint64_t ni = static_cast<std::uint64_t>(std::llround(n));
    std::uint64_t xi = static_cast<std::uint64_t>(std::llround(x));
    std::uint64_t yi = static_cast<std::uint64_t>(std::llround(y));
    return static_cast<double>(binom_u64(ni - yi, xi)) /
           static_cast<double>(binom_u64(ni, xi));
  }
  // (n-x)! (n-y)! / ((n-x-y)! n!) via log-gamma; symmetric in x and y.
  double lg = std::lgamma(n - x + 1.0) + std::lgamma(n - y + 1.0) -
              std::lgamma(n - x - y + 1.0) - std::lgamma(n + 1.0);
  return std::exp(lg);
}

namespace {

struct ThresholdTerms {
  double p_empty = 0;
  double pairs = 0;  // G
};

ThresholdTerms threshold_terms(const MrlsShape& shape, std::uint32_t k) {
  if (k < 2) throw InvalidK("prob_dstar_leq needs k >= 2");
  SphereModel m = ball_sequence(shape, std::max<std::uint32_t>(2 * k, 8));
  // s is a leaf, so S_1(s) sits at the spine level with expected size u.
  // S_{k-2}(t) must sit there too: t is a leaf when k is odd, a spine when
  // k is even. Both-leaf pairs test an even distance, hence G = C(N1, 2);
  // otherwise G = N1*N2.
  double x = std::min(shape.uplinks, shape.spines);
  int t_level = (k % 2 == 1) ? 0 : 1;
  double y = m.shell(t_level, k - 2);
  ThresholdTerms terms;
  terms.p_empty = empty_intersection_prob(shape.spines, x, y);
  terms.pairs = (t_level == 0) ? shape.leaves * (shape.leaves - 1.0) / 2.0
                               : shape.leaves * shape.spines;
  return terms;
}

}  // namespace

double prob_dstar_leq(const MrlsShape& shape, std::uint32_t k) {
  ThresholdTerms terms = threshold_terms(shape, k);
  if (terms.p_empty <= 0.0) return 1.0;
  if (terms.p_empty >= 1.0) return 0.0;
  return std::exp(terms.pairs * std::log1p(-terms.p_empty));
}

double expected_empty_pairs(const MrlsShape& shape, std::uint32_t k) {
  ThresholdTerms terms = threshold_terms(shape, k);
  return terms.pairs * terms.p_empty;
}

double dstar_threshold_endpoints(std::uint32_t radix, double f, std::uint32_t k) {
  auto [u, d] = split_radix(radix, f);
  auto prob_at = [&](double s) {
    return prob_dstar_leq(mrls_shape_continuous(radix, u, s), k);
  };
  double lo = d + 1.0;
  double hi = lo * 2.0;
  // P is ~1 for tiny networks and falls toward 0; expand until it crosses.
  while (prob_at(hi) > 0.5) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) return hi;
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (prob_at(mid) > 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t points) {
  std::vector<double> out;
  if (points == 0) return out;
  if (points == 1) {
    out.push_back(lo);
    return out;
  }
  double la = std::log(lo), lb = std::log(hi);
  for (std::size_t i = 0; i < points; ++i) {
    out.push_back(std::exp(la + (lb - la) * static_cast<double>(i) /
                                    static_cast<double>(points - 1)));
  }
  return out;
}

std::vector<SpectrumPoint> spectrum_sweep(std::uint32_t radix, double f,
                                          const std::vector<double>& endpoint_counts,
                                          const std::vector<std::uint32_t>& k_set) {
  auto [u, d] = split_radix(radix, f);
  std::vector<SpectrumPoint> out;
  out.reserve(endpoint_counts.size());
  for (double s : endpoint_counts) {
    MrlsShape shape = mrls_shape_for_endpoints(radix, u, s);
    SpectrumPoint p;
    p.endpoints = s;
    p.leaves = shape.leaves;
    p.spines = shape.spines;
    for (std::uint32_t k : k_set) {
      p.prob_dstar_leq[k] = prob_dstar_leq(shape, k);
    }
    p.predicted_a = predicted_average_distance(shape);
    p.predicted_theta = 2.0 * f / p.predicted_a;
    out.push_back(std::move(p));
  }
  return out;
}

std::uint32_t radix_for_endpoints_ft(std::uint64_t endpoints, std::uint32_t height) {
  if (endpoints == 0) return 2;
  for (std::uint32_t w = 1;; ++w) {
    double cap = 2.0 * std::pow(static_cast<double>(w), height + 1.0);
    if (cap >= static_cast<double>(endpoints)) return 2 * w;
  }
}

std::uint32_t radix_for_endpoints_oft(std::uint64_t endpoints) {
  for (std::uint32_t q = 2;; ++q) {
    if (!is_prime(q)) continue;
    std::uint64_t cap = 2ULL * (static_cast<std::uint64_t>(q) * q + q + 1) * (q + 1);
    if (cap >= endpoints) return 2 * (q + 1);
  }
}

std::uint32_t radix_for_endpoints_mrls(std::uint64_t endpoints, double f,
                                       std::uint32_t target_diameter) {
  std::uint32_t k = target_diameter + 1;  // D <= target iff D* <= target+1
  for (std::uint32_t radix = 2; radix <= 4096; ++radix) {
    std::uint32_t u, d;
    try {
      std::tie(u, d) = split_radix(radix, f);
    } catch (const InfeasibleSpec&) {
      continue;
    }
    if (endpoints < d) continue;
    MrlsShape shape = mrls_shape_continuous(radix, u, static_cast<double>(endpoints));
    if (shape.uplinks > shape.spines) continue;  // leaf degree infeasible
    if (prob_dstar_leq(shape, k) >= 0.5) return radix;
  }
  return 0;
}

}  // namespace mrls
