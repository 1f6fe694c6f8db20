#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "potts/arith/series.hpp"
#include "potts/oracle/iterate.hpp"

namespace potts {

// Rooted planar map as a rotation system on darts 0..2E-1: sigma turns
// around vertices, alpha pairs the two darts of each edge. The atomic map
// (one vertex, no edge) has no darts.
struct RotMap {
  std::vector<int> sigma;
  std::vector<int> alpha;
  int root = 0;

  int darts() const { return static_cast<int>(sigma.size()); }
  int edges() const { return darts() / 2; }
  bool atomic() const { return sigma.empty(); }

  friend bool operator<(const RotMap& a, const RotMap& b) {
    return std::tie(a.sigma, a.alpha, a.root) < std::tie(b.sigma, b.alpha, b.root);
  }
  friend bool operator==(const RotMap& a, const RotMap& b) {
    return a.sigma == b.sigma && a.alpha == b.alpha && a.root == b.root;
  }
};

// Cycle index of every dart under a permutation, and the number of cycles.
inline std::pair<std::vector<int>, int> cycles(const std::vector<int>& perm) {
  std::vector<int> id(perm.size(), -1);
  int count = 0;
  for (std::size_t d = 0; d < perm.size(); ++d) {
    if (id[d] >= 0) continue;
    for (int e = static_cast<int>(d); id[static_cast<std::size_t>(e)] < 0; e = perm[static_cast<std::size_t>(e)])
      id[static_cast<std::size_t>(e)] = count;
    ++count;
  }
  return {id, count};
}

// Face permutation phi = sigma o alpha.
inline std::vector<int> face_permutation(const RotMap& m) {
  std::vector<int> phi(m.sigma.size());
  for (std::size_t d = 0; d < phi.size(); ++d) phi[d] = m.sigma[static_cast<std::size_t>(m.alpha[d])];
  return phi;
}

inline int vertex_count(const RotMap& m) { return m.atomic() ? 1 : cycles(m.sigma).second; }
inline int face_count(const RotMap& m) { return m.atomic() ? 1 : cycles(face_permutation(m)).second; }

// Degree of the face containing the root dart.
inline int root_face_degree(const RotMap& m) {
  if (m.atomic()) return 0;
  auto phi = face_permutation(m);
  int deg = 0;
  int d = m.root;
  do {
    ++deg;
    d = phi[static_cast<std::size_t>(d)];
  } while (d != m.root);
  return deg;
}

inline bool connected(const RotMap& m) {
  if (m.atomic()) return true;
  std::vector<char> seen(m.sigma.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int d = stack.back();
    stack.pop_back();
    for (int e : {m.sigma[static_cast<std::size_t>(d)], m.alpha[static_cast<std::size_t>(d)]}) {
      if (seen[static_cast<std::size_t>(e)]) continue;
      seen[static_cast<std::size_t>(e)] = 1;
      ++reached;
      stack.push_back(e);
    }
  }
  return reached == m.sigma.size();
}

inline bool planar(const RotMap& m) { return vertex_count(m) - m.edges() + face_count(m) == 2; }

// Relabels darts in breadth-first order from the root, visiting sigma then
// alpha images. With the root fixed this labeling is unique, so equal
// canonical forms mean isomorphic rooted maps.
inline RotMap canonical(const RotMap& m) {
  if (m.atomic()) return m;
  const std::size_t n = m.sigma.size();
  std::vector<int> label(n, -1), order;
  order.reserve(n);
  label[static_cast<std::size_t>(m.root)] = 0;
  order.push_back(m.root);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int d = order[i];
    for (int e : {m.sigma[static_cast<std::size_t>(d)], m.alpha[static_cast<std::size_t>(d)]}) {
      if (label[static_cast<std::size_t>(e)] >= 0) continue;
      label[static_cast<std::size_t>(e)] = static_cast<int>(order.size());
      order.push_back(e);
    }
  }
  if (order.size() != n) throw std::invalid_argument("canonical form of a disconnected map");
  RotMap c;
  c.sigma.resize(n);
  c.alpha.resize(n);
  c.root = 0;
  for (std::size_t d = 0; d < n; ++d) {
    c.sigma[static_cast<std::size_t>(label[d])] = label[static_cast<std::size_t>(m.sigma[d])];
    c.alpha[static_cast<std::size_t>(label[d])] = label[static_cast<std::size_t>(m.alpha[d])];
  }
  return c;
}

// Every rooted planar map with e edges, once each. alpha is fixed to the
// pairing (2i, 2i+1): any rotation system is conjugate to one with this
// alpha, so ranging over all sigma and all roots reaches every rooted map.
inline std::vector<RotMap> enumerate_rooted_maps_with(int e) {
  if (e < 0) throw std::invalid_argument("negative edge count");
  if (e == 0) return {RotMap{}};
  const int n = 2 * e;
  std::vector<int> alpha(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) alpha[static_cast<std::size_t>(d)] = d ^ 1;
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::set<RotMap> found;
  do {
    RotMap m{sigma, alpha, 0};
    if (!connected(m) || !planar(m)) continue;
    for (int r = 0; r < n; ++r) {
      m.root = r;
      found.insert(canonical(m));
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return {found.begin(), found.end()};
}

inline std::vector<RotMap> enumerate_rooted_maps(int e_max) {
  if (e_max > 5) throw std::invalid_argument("map enumeration is limited to 5 edges");
  std::vector<RotMap> out;
  for (int e = 0; e <= e_max; ++e) {
    auto layer = enumerate_rooted_maps_with(e);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// Cycle notation, e.g. "sigma=(0 1)(2 3) alpha=(0 1)(2 3) root=0".
inline std::string to_string(const RotMap& m) {
  auto perm = [](const std::vector<int>& p) {
    std::string s;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t d = 0; d < p.size(); ++d) {
      if (seen[d]) continue;
      s += "(";
      int e = static_cast<int>(d);
      bool first = true;
      while (!seen[static_cast<std::size_t>(e)]) {
        seen[static_cast<std::size_t>(e)] = 1;
        if (!first) s += " ";
        s += std::to_string(e);
        first = false;
        e = p[static_cast<std::size_t>(e)];
      }
      s += ")";
    }
    return s.empty() ? std::string("()") : s;
  };
  return "sigma=" + perm(m.sigma) + " alpha=" + perm(m.alpha) + " root=" + std::to_string(m.root);
}

// Underlying multigraph: vertex of each end of each edge.
struct EdgeList {
  int vertices = 1;
  std::vector<std::pair<int, int>> edges;
};

inline EdgeList edge_list(const RotMap& m) {
  EdgeList g;
  if (m.atomic()) return g;
  auto [vid, nv] = cycles(m.sigma);
  g.vertices = nv;
  for (std::size_t d = 0; d < m.sigma.size(); ++d) {
    auto o = static_cast<std::size_t>(m.alpha[d]);
    if (d < o) g.edges.emplace_back(vid[d], vid[o]);
  }
  return g;
}

namespace detail {

inline int find_root(std::vector<int>& parent, int v) {
  while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
  return v;
}

// Calls f(|S|, c(S)) for every edge subset S.
template <class F>
void for_each_subset(const EdgeList& g, F&& f) {
  const std::size_t e = g.edges.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e); ++mask) {
    std::vector<int> parent(static_cast<std::size_t>(g.vertices));
    std::iota(parent.begin(), parent.end(), 0);
    int comps = g.vertices, size = 0;
    for (std::size_t i = 0; i < e; ++i) {
      if (!(mask >> i & 1)) continue;
      ++size;
      int a = find_root(parent, g.edges[i].first), b = find_root(parent, g.edges[i].second);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --comps;
      }
    }
    f(size, comps);
  }
}

}  // namespace detail

// Potts polynomial P(q, nu) = sum_S q^{c(S)} (nu - 1)^{|S|}, in q and b = nu - 1.
inline Poly fk_potts(const RotMap& m) {
  Poly p;
  detail::for_each_subset(edge_list(m), [&](int size, int comps) {
    Poly::Exponents e{};
    e[sym::q] = static_cast<unsigned>(comps);
    e[sym::b] = static_cast<unsigned>(size);
    p += Poly::monomial(e, Rational(1));
  });
  return p;
}

// Tutte polynomial T(mu, nu) = sum_S (mu - 1)^{c(S) - c(G)} (nu - 1)^{|S| - v + c(S)},
// returned with mu as x and nu as y.
inline Poly tutte_poly(const RotMap& m) {
  EdgeList g = edge_list(m);
  const Poly mu1 = Poly::variable(sym::x) - Poly(1), nu1 = Poly::variable(sym::y) - Poly(1);
  Poly t;
  detail::for_each_subset(g, [&](int size, int comps) {
    t += mu1.pow(static_cast<unsigned>(comps - 1)) * nu1.pow(static_cast<unsigned>(size - g.vertices + comps));
  });
  return t;
}

// P = (mu-1)^{c} (nu-1)^{v} T with q = (mu-1)(nu-1): writing a = mu - 1,
// checks a b^v T(1+a, 1+b) = P(q = a b).
inline bool fk_tutte_consistent(const RotMap& m) {
  const Poly a = Poly::variable(sym::x), b = Poly::variable(sym::b);
  Poly t = tutte_poly(m).substitute(sym::x, a + Poly(1)).substitute(sym::y, b + Poly(1));
  Poly lhs = a * b.pow(static_cast<unsigned>(vertex_count(m))) * t;
  Poly rhs = fk_potts(m).substitute(sym::q, a * b);
  return lhs == rhs;
}

// Dual rotation system: faces become vertices.
inline RotMap dual(const RotMap& m) {
  if (m.atomic()) return m;
  return RotMap{face_permutation(m), m.alpha, m.root};
}

// T_{G*}(mu, nu) = T_G(nu, mu).
inline bool duality_check(const RotMap& m) {
  return tutte_poly(dual(m)) == tutte_poly(m).swap_vars(sym::x, sym::y);
}

inline bool has_loop(const RotMap& m) {
  for (const auto& [u, v] : edge_list(m).edges)
    if (u == v) return true;
  return false;
}

// M(y) = (1/q) sum_M P_M(q, nu) w^v t^e y^df over the enumerated maps.
inline PolySeries oracle_m_of_y(const std::vector<RotMap>& maps, int e_max) {
  PolySeries s(SizeVar::t, e_max);
  const Poly q = Poly::variable(sym::q);
  for (const auto& m : maps) {
    if (m.edges() > e_max) continue;
    Poly::Exponents e{};
    e[sym::w] = static_cast<unsigned>(vertex_count(m));
    e[sym::y] = static_cast<unsigned>(root_face_degree(m));
    s[m.edges()] += fk_potts(m).divide_exact(q).times_monomial(e);
  }
  return s;
}

inline PolySeries oracle_M1(int e_max) {
  return oracle_m_of_y(enumerate_rooted_maps(e_max), e_max).map([](const Poly& c) {
    return c.evaluate(sym::y, Rational(1));
  });
}

// Self-dual series from the subset expansion: [t^{e+2}] collects, over maps
// with e edges, sum_S beta^{2c(S) + |S| - 1 - v}. The exponent is never
// negative since |S| >= v - c(S).
inline PolySeries self_dual_oracle(const std::vector<RotMap>& maps, int e_max) {
  PolySeries s(SizeVar::t, e_max + 2);
  for (const auto& m : maps) {
    if (m.edges() > e_max) continue;
    const int v = vertex_count(m);
    Poly acc;
    detail::for_each_subset(edge_list(m), [&](int size, int comps) {
      Poly::Exponents e{};
      e[sym::b] = static_cast<unsigned>(2 * comps + size - 1 - v);
      acc += Poly::monomial(e, Rational(1));
    });
    s[m.edges() + 2] += acc;
  }
  return s;
}

}  // namespace potts
