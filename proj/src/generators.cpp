#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "etopo/harness.hpp"
#include "etopo/rng.hpp"

namespace etopo {

namespace {

bool ordered(const Range& r, double lo, double hi) {
  return r.lo <= r.hi && r.lo >= lo && r.hi <= hi;
}

std::uint64_t pair_key(std::uint64_t a, std::uint64_t b) {
  if (a > b) std::swap(a, b);
  return (a << 32) | b;
}

int pick_level(const std::vector<double>& weights, double total, Rng& rng) {
  double u = rng.uniform01() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return static_cast<int>(i + 1);
    u -= weights[i];
  }
  // Rounding can leave u just past the last positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0) return static_cast<int>(i + 1);
  }
  return 1;
}

}  // namespace

std::vector<std::string> validate_params(const GeneratorParams& p) {
  std::vector<std::string> out;
  const std::uint64_t pairs = static_cast<std::uint64_t>(p.nodes) * (p.nodes > 0 ? p.nodes - 1 : 0) / 2;
  if (p.links > pairs) {
    out.push_back("links: " + std::to_string(p.links) + " requested but only " +
                  std::to_string(pairs) + " node pairs exist");
  }
  if (p.level_weights.empty() || p.level_weights.size() > 64) {
    out.push_back("level_weights: expected between 1 and 64 weights");
  } else {
    bool negative = std::any_of(p.level_weights.begin(), p.level_weights.end(),
                                [](double w) { return !(w >= 0.0) || !std::isfinite(w); });
    double total = std::accumulate(p.level_weights.begin(), p.level_weights.end(), 0.0);
    if (negative || !(total > 0.0)) out.push_back("level_weights: must be nonnegative with a positive sum");
  }
  if (!ordered(p.swap_success, 0.0, 1.0)) out.push_back("swap_success: expected 0 <= lo <= hi <= 1");
  if (!ordered(p.photon_loss, 0.0, 1.0)) out.push_back("photon_loss: expected 0 <= lo <= hi <= 1");
  if (!ordered(p.fidelity, 0.0, 1.0)) out.push_back("fidelity: expected 0 <= lo <= hi <= 1");
  if (!ordered(p.throughput, 0.0, INFINITY)) out.push_back("throughput: expected 0 <= lo <= hi");
  if (p.resources_min < 0 || p.resources_min > p.resources_max) {
    out.push_back("resources: expected 0 <= min <= max");
  }
  return out;
}

OverlayNetwork generate_network(const GeneratorParams& params, std::uint64_t seed) {
  const auto problems = validate_params(params);
  if (!problems.empty()) throw Error(Errc::invalid_argument, problems.front());

  Rng rng(seed);
  const std::uint64_t v = params.nodes;
  const std::uint64_t pairs = v * (v > 0 ? v - 1 : 0) / 2;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> chosen;
  chosen.reserve(params.links);
  if (params.links * 2 > pairs) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> all;
    all.reserve(pairs);
    for (std::uint32_t a = 0; a < v; ++a) {
      for (std::uint32_t b = a + 1; b < v; ++b) all.emplace_back(a, b);
    }
    for (std::uint64_t i = 0; i < params.links; ++i) {
      std::swap(all[i], all[i + rng.index(all.size() - i)]);
      chosen.push_back(all[i]);
    }
  } else {
    std::unordered_set<std::uint64_t> seen;
    while (chosen.size() < params.links) {
      auto a = static_cast<std::uint32_t>(rng.index(v));
      auto b = static_cast<std::uint32_t>(rng.index(v));
      if (a == b || !seen.insert(pair_key(a, b)).second) continue;
      chosen.emplace_back(std::min(a, b), std::max(a, b));
    }
  }

  const double total = std::accumulate(params.level_weights.begin(), params.level_weights.end(), 0.0);
  std::vector<EntangledLink> links;
  links.reserve(chosen.size());
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    EntangledLink l;
    l.id = LinkId{static_cast<std::uint32_t>(i)};
    l.a = NodeId{chosen[i].first};
    l.b = NodeId{chosen[i].second};
    l.level = pick_level(params.level_weights, total, rng);
    l.swap_success = rng.uniform(params.swap_success.lo, params.swap_success.hi);
    l.photon_loss = rng.uniform(params.photon_loss.lo, params.photon_loss.hi);
    l.fidelity = rng.uniform(params.fidelity.lo, params.fidelity.hi);
    l.throughput = rng.uniform(params.throughput.lo, params.throughput.hi);
    const auto spread = static_cast<std::uint64_t>(params.resources_max - params.resources_min) + 1;
    l.resource_count = params.resources_min + static_cast<int>(rng.index(spread));
    links.push_back(l);
  }

  std::vector<NodeId> nodes;
  nodes.reserve(v);
  for (std::uint32_t n = 0; n < v; ++n) nodes.push_back(NodeId{n});
  return OverlayNetwork(std::move(nodes), std::move(links));
}

LatticeNetwork kleinberg_lattice(int k, std::int64_t n, std::uint64_t seed) {
  if (k != 1 && k != 2) throw Error(Errc::invalid_argument, "lattice dimension must be 1 or 2");
  if (n < 2) throw Error(Errc::invalid_argument, "lattice size must be at least 2");
  const std::int64_t count = k == 1 ? n : n * n;
  if (count > std::int64_t{1} << 31) throw Error(Errc::too_large, "lattice has too many nodes");

  auto id_of = [&](std::int64_t x, std::int64_t y) { return static_cast<std::uint32_t>(x + n * y); };

  LatticeNetwork out;
  out.k = k;
  out.n = n;
  std::vector<NodeId> nodes;
  nodes.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    nodes.push_back(NodeId{static_cast<std::uint32_t>(i)});
    LatticeCoord c;
    c.coords.push_back(i % n);
    if (k == 2) c.coords.push_back(i / n);
    out.placement.coords.emplace_back(nodes.back(), std::move(c));
  }

  std::vector<EntangledLink> links;
  std::unordered_set<std::uint64_t> seen;
  auto add = [&](std::uint32_t a, std::uint32_t b, std::uint64_t d) {
    if (!seen.insert(pair_key(a, b)).second) return;
    EntangledLink l;
    l.id = LinkId{static_cast<std::uint32_t>(links.size())};
    l.a = NodeId{a};
    l.b = NodeId{b};
    int level = 1;
    while ((d >> level) > 0) ++level;
    l.level = level;
    l.throughput = 1.0;
    links.push_back(l);
  };

  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t x = i % n;
    const std::int64_t y = i / n;
    if (x + 1 < n) add(id_of(x, y), id_of(x + 1, y), 1);
    if (k == 2 && y + 1 < n) add(id_of(x, y), id_of(x, y + 1), 1);
  }

  // Distance r is drawn with weight shell(r) * r^-k, shell(r) being the
  // number of lattice points at L1 distance r in an unbounded lattice, then
  // a point on that shell uniformly; out-of-range points are redrawn.
  const std::int64_t max_r = k * (n - 1);
  std::vector<double> cdf(static_cast<std::size_t>(max_r));
  double acc = 0.0;
  for (std::int64_t r = 1; r <= max_r; ++r) {
    const double shell = k == 1 ? 2.0 : 4.0 * static_cast<double>(r);
    acc += shell * std::pow(static_cast<double>(r), -k);
    cdf[static_cast<std::size_t>(r - 1)] = acc;
  }

  Rng rng(seed);
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t x = i % n;
    const std::int64_t y = i / n;
    for (;;) {
      const double u = rng.uniform01() * acc;
      const auto r = static_cast<std::int64_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin()) + 1;
      std::int64_t dx = 0;
      std::int64_t dy = 0;
      if (k == 1) {
        dx = rng.index(2) == 0 ? r : -r;
      } else {
        // Walk the diamond |dx| + |dy| = r, 4r points.
        const auto t = static_cast<std::int64_t>(rng.index(static_cast<std::uint64_t>(4 * r)));
        const std::int64_t side = t / r;
        const std::int64_t s = t % r;
        switch (side) {
          case 0: dx = r - s; dy = s; break;
          case 1: dx = -s; dy = r - s; break;
          case 2: dx = s - r; dy = -s; break;
          default: dx = s; dy = s - r; break;
        }
      }
      const std::int64_t tx = x + dx;
      const std::int64_t ty = y + dy;
      if (tx < 0 || tx >= n || ty < 0 || ty >= (k == 1 ? 1 : n)) continue;
      add(id_of(x, y), id_of(tx, ty), static_cast<std::uint64_t>(r));
      break;
    }
  }

  out.network = OverlayNetwork(std::move(nodes), std::move(links));
  return out;
}

}  // namespace etopo
