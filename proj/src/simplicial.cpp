#include "orbidx/simplicial.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "orbidx/errors.hpp"

namespace orbidx {

namespace {

bool simplex_less(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void add_faces(const Simplex& s, std::set<Simplex>& out) {
  if (s.empty() || !out.insert(s).second) return;
  if (s.size() == 1) return;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != i) f.push_back(s[j]);
    add_faces(f, out);
  }
}

std::vector<Simplex> facets_of(const Simplex& s) {
  std::vector<Simplex> out;
  if (s.size() < 2) return out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Simplex f;
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != i) f.push_back(s[j]);
    out.push_back(std::move(f));
  }
  return out;
}

// Maximal flags sigma_0 < sigma_1 < ... < s, as lists of simplices.
void flags_ending_at(const Simplex& s, std::vector<Simplex>& prefix,
                     std::vector<std::vector<Simplex>>& out) {
  prefix.push_back(s);
  if (s.size() == 1) {
    out.emplace_back(prefix.rbegin(), prefix.rend());
  } else {
    for (const auto& f : facets_of(s)) flags_ending_at(f, prefix, out);
  }
  prefix.pop_back();
}

QuotientPresentation make_presentation(SimplicialComplex complex, GroupAction action) {
  QuotientPresentation p{std::move(complex), std::move(action), false};
  p.regular = is_regular(p.complex, p.action);
  return p;
}

void check_permutes_simplices(const SimplicialComplex& k, const GroupAction& g) {
  if (g.num_vertices() != k.pool_size())
    fail(ErrorCode::ValidationError, "vertex permutations have length " + std::to_string(g.num_vertices()) +
                                         " but the complex has " + std::to_string(k.pool_size()) + " vertices");
  for (const auto& e : g.elements())
    for (const auto& s : k.simplices())
      if (!k.contains(apply(e.vertex_perm, s)))
        fail(ErrorCode::NotSimplicial, "element " + std::to_string(e.id) + " does not map simplices to simplices");
}

}  // namespace

Simplex apply(const Permutation& perm, const Simplex& s) {
  Simplex out;
  out.reserve(s.size());
  for (int v : s) out.push_back(perm[v]);
  std::sort(out.begin(), out.end());
  return out;
}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Eigen::VectorXd> coords, int pool_size,
                                                    std::vector<Simplex> simplices) {
  if (!coords.empty() && static_cast<int>(coords.size()) != pool_size)
    fail(ErrorCode::ValidationError, "coordinate count does not match the vertex pool");
  std::set<Simplex> all;
  for (auto& s : simplices) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail(ErrorCode::ValidationError, "simplex repeats a vertex");
    for (int v : s)
      if (v < 0 || v >= pool_size) fail(ErrorCode::ValidationError, "vertex id " + std::to_string(v) + " out of range");
    add_faces(s, all);
  }
  SimplicialComplex k;
  k.pool_size_ = pool_size;
  k.coords_ = std::move(coords);
  k.simplices_.assign(all.begin(), all.end());
  std::sort(k.simplices_.begin(), k.simplices_.end(), simplex_less);
  for (std::size_t i = 0; i < k.simplices_.size(); ++i) {
    k.index_.emplace(k.simplices_[i], static_cast<int>(i));
    k.dim_ = std::max(k.dim_, static_cast<int>(k.simplices_[i].size()) - 1);
  }
  return k;
}

int SimplicialComplex::index_of(const Simplex& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

std::vector<Simplex> SimplicialComplex::simplices_of_dim(int d) const {
  std::vector<Simplex> out;
  for (const auto& s : simplices_)
    if (static_cast<int>(s.size()) - 1 == d) out.push_back(s);
  return out;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  std::set<Simplex> non_maximal;
  for (const auto& s : simplices_)
    for (auto& f : facets_of(s)) non_maximal.insert(std::move(f));
  std::vector<Simplex> out;
  for (const auto& s : simplices_)
    if (!non_maximal.count(s)) out.push_back(s);
  return out;
}

std::vector<int> SimplicialComplex::vertex_ids() const {
  std::vector<int> out;
  for (const auto& s : simplices_)
    if (s.size() == 1) out.push_back(s[0]);
  return out;
}

QuotientPresentation QuotientPresentation::create(SimplicialComplex complex, GroupAction action, double tol) {
  check_permutes_simplices(complex, action);
  const auto verts = complex.vertex_ids();
  for (int g = 1; g < action.order(); ++g) {
    const auto& perm = action.element(g).vertex_perm;
    bool moves = std::any_of(verts.begin(), verts.end(), [&](int v) { return perm[v] != v; });
    if (!moves) fail(ErrorCode::NotFaithful, "element " + std::to_string(g) + " acts trivially on the complex");
  }
  auto codim = validate_codimension2(action);
  if (!codim.passed)
    fail(ErrorCode::ValidationError, "codimension-2: element " + std::to_string(codim.offending.front()) +
                                         " fixes a subspace of codimension < 2");
  if (complex.has_coordinates()) {
    if (complex.coordinate(verts.empty() ? 0 : verts.front()).size() != action.dim())
      fail(ErrorCode::ValidationError, "coordinate dimension differs from the group dimension");
    for (const auto& e : action.elements())
      for (int v : verts) {
        double d = (e.matrix * complex.coordinate(v) - complex.coordinate(e.vertex_perm[v])).cwiseAbs().maxCoeff();
        if (d >= tol)
          fail(ErrorCode::InconsistentAction, "element " + std::to_string(e.id) + " sends vertex " +
                                                  std::to_string(v) + " off the coordinate of its image");
      }
  }
  return make_presentation(std::move(complex), std::move(action));
}

bool is_regular(const SimplicialComplex& k, const GroupAction& g) {
  for (int e = 1; e < g.order(); ++e) {
    const auto& perm = g.element(e).vertex_perm;
    for (const auto& s : k.simplices()) {
      if (apply(perm, s) != s) continue;
      for (int v : s)
        if (perm[v] != v) return false;
    }
  }
  return true;
}

Subdivision barycentric_subdivide_with_origin(const SimplicialComplex& k) {
  const auto& simplices = k.simplices();
  std::vector<Eigen::VectorXd> coords;
  if (k.has_coordinates()) {
    for (const auto& s : simplices) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(k.coordinate(s[0]).size());
      for (int v : s) c += k.coordinate(v);
      coords.push_back(c / static_cast<double>(s.size()));
    }
  }
  std::vector<Simplex> tops;
  std::vector<Simplex> prefix;
  for (const auto& top : k.maximal_simplices()) {
    std::vector<std::vector<Simplex>> flags;
    flags_ending_at(top, prefix, flags);
    for (const auto& flag : flags) {
      Simplex s;
      for (const auto& face : flag) s.push_back(k.index_of(face));
      tops.push_back(std::move(s));
    }
  }
  Subdivision out;
  out.complex = SimplicialComplex::from_simplices(std::move(coords), static_cast<int>(simplices.size()),
                                                  std::move(tops));
  out.origin.resize(simplices.size());
  for (std::size_t i = 0; i < simplices.size(); ++i) out.origin[i] = static_cast<int>(i);
  return out;
}

SimplicialComplex barycentric_subdivide(const SimplicialComplex& k) {
  return barycentric_subdivide_with_origin(k).complex;
}

QuotientPresentation subdivide_presentation(const QuotientPresentation& p) {
  check_permutes_simplices(p.complex, p.action);
  auto sd = barycentric_subdivide_with_origin(p.complex);
  const auto& old = p.complex.simplices();
  std::vector<Permutation> perms;
  for (const auto& e : p.action.elements()) {
    Permutation perm(sd.origin.size());
    for (std::size_t v = 0; v < sd.origin.size(); ++v)
      perm[v] = p.complex.index_of(apply(e.vertex_perm, old[sd.origin[v]]));
    perms.push_back(std::move(perm));
  }
  return make_presentation(std::move(sd.complex), p.action.with_permutations(std::move(perms)));
}

Regularized regularize(const QuotientPresentation& p) {
  check_permutes_simplices(p.complex, p.action);
  Regularized r{make_presentation(p.complex, p.action), 0};
  while (!r.presentation.regular) {
    if (r.subdivisions == 2)
      fail(ErrorCode::RegularizationFailed, "action still irregular after two barycentric subdivisions");
    r.presentation = subdivide_presentation(r.presentation);
    ++r.subdivisions;
  }
  return r;
}

OrbitComplex quotient_complex(const QuotientPresentation& p) {
  if (!p.regular) fail(ErrorCode::RequiresRegular, "quotient_complex needs a regular action");
  const auto& simplices = p.complex.simplices();
  std::vector<int> orbit_of(simplices.size(), -1);
  OrbitComplex q;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    if (orbit_of[i] >= 0) continue;
    const int id = static_cast<int>(q.representatives.size());
    int size = 0;
    for (const auto& e : p.action.elements()) {
      int j = p.complex.index_of(apply(e.vertex_perm, simplices[i]));
      if (orbit_of[j] < 0) {
        orbit_of[j] = id;
        ++size;
      }
    }
    q.representatives.push_back(simplices[i]);
    q.orbit_sizes.push_back(size);
  }
  for (const auto& rep : q.representatives) {
    std::vector<int> faces;
    for (const auto& f : facets_of(rep)) faces.push_back(orbit_of[p.complex.index_of(f)]);
    q.facets.push_back(std::move(faces));
  }
  return q;
}

SimplicialComplex boundary_subcomplex(const SimplicialComplex& k) {
  const int d = k.dim();
  std::vector<Simplex> faces;
  if (d >= 1) {
    std::map<Simplex, int> incidence;
    for (const auto& top : k.simplices_of_dim(d))
      for (auto& f : facets_of(top)) ++incidence[f];
    for (const auto& [face, count] : incidence) {
      if (count > 2) fail(ErrorCode::NotManifold, "a codimension-1 face lies in more than two top simplices");
      if (count == 1) faces.push_back(face);
    }
  }
  return SimplicialComplex::from_simplices(k.coordinates(), k.pool_size(), std::move(faces));
}

QuotientPresentation boundary_presentation(const QuotientPresentation& p) {
  return make_presentation(boundary_subcomplex(p.complex), p.action);
}

QuotientPresentation double_complex(const QuotientPresentation& p) {
  auto boundary = boundary_subcomplex(p.complex);
  if (boundary.empty()) fail(ErrorCode::EmptyBoundary, "cannot double a closed complex");

  const auto bverts = boundary.vertex_ids();
  std::vector<char> on_boundary(p.complex.pool_size(), 0);
  for (int v : bverts) on_boundary[v] = 1;
  for (const auto& s : p.complex.simplices()) {
    bool all = std::all_of(s.begin(), s.end(), [&](int v) { return on_boundary[v]; });
    if (all && !boundary.contains(s)) return double_complex(subdivide_presentation(p));
  }

  const int pool = p.complex.pool_size();
  auto prime = [&](int v) { return on_boundary[v] ? v : pool + v; };

  std::vector<Simplex> tops;
  for (const auto& s : p.complex.maximal_simplices()) {
    tops.push_back(s);
    Simplex t;
    for (int v : s) t.push_back(prime(v));
    tops.push_back(std::move(t));
  }
  std::vector<Eigen::VectorXd> coords;
  if (p.complex.has_coordinates()) {
    coords = p.complex.coordinates();
    coords.insert(coords.end(), p.complex.coordinates().begin(), p.complex.coordinates().end());
  }
  std::vector<Permutation> perms;
  for (const auto& e : p.action.elements()) {
    Permutation perm(2 * pool);
    for (int v = 0; v < pool; ++v) {
      perm[v] = e.vertex_perm[v];
      perm[pool + v] = pool + e.vertex_perm[v];
    }
    for (int v = 0; v < pool; ++v)
      if (!on_boundary[v]) perm[pool + v] = prime(e.vertex_perm[v]);
    perms.push_back(std::move(perm));
  }
  auto complex = SimplicialComplex::from_simplices(std::move(coords), 2 * pool, std::move(tops));
  return make_presentation(std::move(complex), p.action.with_permutations(std::move(perms)));
}

SimplicialComplex fixed_subcomplex(const QuotientPresentation& p, int g) {
  if (!p.regular) fail(ErrorCode::RequiresRegular, "fixed_subcomplex needs a regular action");
  const auto& perm = p.action.element(g).vertex_perm;
  std::vector<Simplex> fixed;
  for (const auto& s : p.complex.simplices())
    if (std::all_of(s.begin(), s.end(), [&](int v) { return perm[v] == v; })) fixed.push_back(s);
  return SimplicialComplex::from_simplices(p.complex.coordinates(), p.complex.pool_size(), std::move(fixed));
}

int euler_characteristic(const SimplicialComplex& k) {
  int chi = 0;
  for (const auto& s : k.simplices()) chi += (s.size() % 2 == 1) ? 1 : -1;
  return chi;
}

int euler_characteristic(const OrbitComplex& k) {
  int chi = 0;
  for (std::size_t i = 0; i < k.representatives.size(); ++i) chi += (k.cell_dim(i) % 2 == 0) ? 1 : -1;
  return chi;
}

}  // namespace orbidx
