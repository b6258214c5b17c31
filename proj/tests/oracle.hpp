#pragma once

// Brute-force reference values, computed without the library: hand-written
// fields, argument-principle windings on large circles, raw simplex counts,
// and dense sign sampling of the normal component.

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#ifndef ORBIDX_CATALOG_DIR
#define ORBIDX_CATALOG_DIR "catalog"
#endif

namespace oracle {

using Q = boost::rational<long long>;
using Vec2 = std::array<double, 2>;
using Field = std::function<Vec2(double, double)>;

struct Circle {
  double cx, cy, r;
  bool outer;
};

struct Case {
  std::string name;
  int dim = 2;
  Field field;                       // n = 2
  std::function<double(double)> f1;  // n = 1
  std::vector<Circle> circles;
};

inline const std::vector<Case>& cases() {
  static const std::vector<Case> all = [] {
    std::vector<Circle> disk{{0, 0, 1, true}};
    std::vector<Circle> annulus{{0, 0, 2, true}, {0, 0, 1, false}};
    std::vector<Case> c;
    Case interval{"interval_outflow", 1, {}, [](double) { return 1.0; }, {}};
    c.push_back(interval);
    c.push_back({"disk_trivial_inward", 2, [](double x, double y) { return Vec2{-x, -y}; }, {}, disk});
    c.push_back({"disk_z3_radial", 2, [](double x, double y) { return Vec2{x, y}; }, {}, disk});
    c.push_back({"disk_z2_saddle", 2, [](double x, double y) { return Vec2{x, -y}; }, {}, disk});
    c.push_back({"disk_trivial_saddle", 2, [](double x, double y) { return Vec2{x, -y}; }, {}, disk});
    c.push_back({"disk_z3_twisted", 2,
                 [](double x, double y) { return Vec2{x + (x * x - y * y) / 2, y - x * y}; }, {}, disk});
    c.push_back({"annulus_trivial_rotational", 2, [](double x, double y) { return Vec2{x - y, x + y}; }, {},
                 annulus});
    c.push_back({"annulus_trivial_spiral", 2,
                 [](double x, double y) { return Vec2{x / 2 - (y - 1.5), x + (y - 1.5) / 2}; }, {}, annulus});
    return c;
  }();
  return all;
}

inline const Case& find_case(const std::string& name) {
  for (const auto& c : cases())
    if (c.name == name) return c;
  throw std::runtime_error("oracle: unknown case " + name);
}

// Winding of F along a circle, counterclockwise, from 2^16 samples.
inline int winding(const Field& f, double cx, double cy, double r, int samples = 1 << 16) {
  double total = 0.0;
  auto at = [&](int k) {
    double t = 2 * std::numbers::pi * k / samples;
    Vec2 v = f(cx + r * std::cos(t), cy + r * std::sin(t));
    return std::atan2(v[1], v[0]);
  };
  double prev = at(0);
  for (int k = 1; k <= samples; ++k) {
    double cur = at(k);
    double d = cur - prev;
    while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
    while (d < -std::numbers::pi) d += 2 * std::numbers::pi;
    total += d;
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

struct Complex {
  std::vector<std::vector<double>> vertices;
  std::vector<std::vector<int>> top;
  std::vector<std::vector<int>> perms;  // generator vertex permutations
};

inline nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return nlohmann::json::parse(ss.str());
}

inline Complex read_complex(const std::string& name) {
  auto j = read_json(std::string(ORBIDX_CATALOG_DIR) + "/" + name + ".json");
  Complex c;
  c.vertices = j["complex"]["vertices"].get<std::vector<std::vector<double>>>();
  c.top = j["complex"]["simplices"].get<std::vector<std::vector<int>>>();
  if (j.contains("group"))
    for (const auto& g : j["group"]["generators"]) c.perms.push_back(g["vertex_perm"].get<std::vector<int>>());
  return c;
}

// Closure of the permutation generators.
inline std::vector<std::vector<int>> perm_group(const Complex& c) {
  int n = static_cast<int>(c.vertices.size());
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> queue{id};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (const auto& g : c.perms) {
      std::vector<int> h(n);
      for (int i = 0; i < n; ++i) h[i] = g[queue[k][i]];
      if (seen.insert(h).second) queue.push_back(h);
    }
  }
  return queue;
}

using Simplex = std::vector<int>;

inline std::set<Simplex> faces(const std::vector<Simplex>& top) {
  std::set<Simplex> out;
  for (auto s : top) {
    std::sort(s.begin(), s.end());
    int m = static_cast<int>(s.size());
    for (int mask = 1; mask < (1 << m); ++mask) {
      Simplex f;
      for (int i = 0; i < m; ++i)
        if (mask & (1 << i)) f.push_back(s[i]);
      out.insert(f);
    }
  }
  return out;
}

inline int chi(const std::set<Simplex>& k) {
  int x = 0;
  for (const auto& s : k) x += (s.size() % 2 == 1) ? 1 : -1;
  return x;
}

inline std::vector<Simplex> boundary_top(const std::vector<Simplex>& top) {
  std::map<Simplex, int> count;
  for (auto s : top) {
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<long>(i));
      ++count[f];
    }
  }
  std::vector<Simplex> out;
  for (const auto& [f, n] : count)
    if (n == 1) out.push_back(f);
  return out;
}

// Euler characteristic of the orbit space from orbit counts of simplices.
inline int chi_orbits(const std::set<Simplex>& k, const std::vector<std::vector<int>>& group) {
  std::set<Simplex> done;
  int x = 0;
  for (const auto& s : k) {
    if (done.count(s)) continue;
    for (const auto& g : group) {
      Simplex t;
      for (int v : s) t.push_back(g[v]);
      std::sort(t.begin(), t.end());
      done.insert(t);
    }
    x += (s.size() % 2 == 1) ? 1 : -1;
  }
  return x;
}

struct Values {
  int order = 1;
  Q lhs{0};
  Q chi_q{0};
  Q chi_boundary{0};
  Q chi_relative{0};
  Q chi_double{0};
  int chi_underlying = 0;
  int chi_underlying_boundary = 0;
  std::vector<Q> chain;
  int exit_orbit_term = 0;  // sum of (exit orbits - gamma orbits) over levels
};

struct ChainCounts {
  std::vector<int> exit;   // upstairs chi(R_-^i)
  std::vector<int> gamma;  // upstairs chi(Gamma^i)
  std::vector<int> exit_orbits;
  std::vector<int> gamma_orbits;
};

// Level counts from sign sampling of Y . n on every boundary circle. Orbit
// counts assume the boundary has trivial isotropy, true for every case here.
inline ChainCounts chain_counts(const Case& c, int order, int samples = 1 << 16) {
  ChainCounts out;
  if (c.dim == 1) {
    int exit = (c.f1(1.0) > 0 ? 1 : 0) + (c.f1(0.0) < 0 ? 1 : 0);
    if (exit > 0) {
      out.exit.push_back(exit);
      out.gamma.push_back(0);
    }
    return out;
  }
  int arcs = 0, gamma = 0, level2 = 0;
  bool any_exit = false;
  for (const auto& circ : c.circles) {
    double sgn = circ.outer ? 1.0 : -1.0;
    auto normal = [&](double t) {
      double x = circ.cx + circ.r * std::cos(t), y = circ.cy + circ.r * std::sin(t);
      Vec2 v = c.field(x, y);
      return sgn * (v[0] * std::cos(t) + v[1] * std::sin(t));
    };
    auto tangential = [&](double t) {
      double x = circ.cx + circ.r * std::cos(t), y = circ.cy + circ.r * std::sin(t);
      Vec2 v = c.field(x, y);
      return -v[0] * std::sin(t) + v[1] * std::cos(t);
    };
    std::vector<double> t(samples);
    std::vector<bool> pos(samples);
    for (int k = 0; k < samples; ++k) {
      t[k] = (2 * std::numbers::pi * (k + 0.37)) / samples;
      pos[k] = normal(t[k]) > 0;
    }
    int changes = 0;
    for (int k = 0; k < samples; ++k) {
      int next = (k + 1) % samples;
      if (pos[k] == pos[next]) continue;
      ++changes;
      // Arc ahead of the crossing: leaving it means moving backwards.
      double w = tangential(0.5 * (t[k] + (next == 0 ? t[next] + 2 * std::numbers::pi : t[next])));
      bool exits = pos[next] ? (w < 0) : (w > 0);
      if (exits) ++level2;
    }
    bool all_pos = std::all_of(pos.begin(), pos.end(), [](bool b) { return b; });
    if (all_pos) any_exit = true;
    if (changes > 0) {
      any_exit = true;
      arcs += changes / 2;
    }
    gamma += changes;
  }
  if (!any_exit) return out;
  out.exit.push_back(arcs);
  out.gamma.push_back(gamma);
  out.exit_orbits.push_back(arcs / order);
  out.gamma_orbits.push_back(gamma / order);
  if (level2 > 0) {
    out.exit.push_back(level2);
    out.gamma.push_back(0);
    out.exit_orbits.push_back(level2 / order);
    out.gamma_orbits.push_back(0);
  }
  return out;
}

inline Values compute(const std::string& name) {
  const Case& c = find_case(name);
  Complex k = read_complex(name);
  auto group = perm_group(k);
  Values v;
  v.order = static_cast<int>(group.size());

  auto all = faces(k.top);
  auto bd = faces(boundary_top(k.top));
  int chi_m = chi(all), chi_b = chi(bd);
  v.chi_q = Q(chi_m, v.order);
  v.chi_boundary = Q(chi_b, v.order);
  v.chi_relative = v.chi_q - v.chi_boundary;
  v.chi_double = Q(2 * chi_m - chi_b, v.order);
  v.chi_underlying = chi_orbits(all, group);
  v.chi_underlying_boundary = chi_orbits(bd, group);

  int upstairs = 0;
  if (c.dim == 1) {
    // Sign changes of f on a fine grid, weighted by slope sign.
    const int n = 1 << 16;
    for (int i = 0; i < n; ++i) {
      double a = c.f1(static_cast<double>(i) / n), b = c.f1(static_cast<double>(i + 1) / n);
      if ((a < 0) != (b < 0)) upstairs += b > a ? 1 : -1;
    }
  } else {
    const double delta = 1e-3;
    for (const auto& circ : c.circles) {
      int w = winding(c.field, circ.cx, circ.cy, circ.outer ? circ.r - delta : circ.r + delta);
      upstairs += circ.outer ? w : -w;
    }
  }
  v.lhs = Q(upstairs, v.order);

  auto counts = chain_counts(c, v.order);
  for (std::size_t i = 0; i < counts.exit.size(); ++i) {
    v.chain.push_back(Q(counts.exit[i] - counts.gamma[i], v.order));
    if (c.dim == 2) v.exit_orbit_term += counts.exit_orbits[i] - counts.gamma_orbits[i];
  }
  if (c.dim == 1 && !counts.exit.empty()) v.exit_orbit_term = counts.exit[0] - counts.gamma[0];
  return v;
}

}  // namespace oracle
