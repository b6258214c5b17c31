#include "orbidx/group_action.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "orbidx/errors.hpp"

namespace orbidx {

namespace {

constexpr double kRankTol = 1e-6;

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

bool is_orthogonal(const Eigen::MatrixXd& m, double tol) {
  const auto n = m.rows();
  return max_abs_diff(m.transpose() * m, Eigen::MatrixXd::Identity(n, n)) < tol;
}

bool is_bijection(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out(inner.size());
  for (std::size_t v = 0; v < inner.size(); ++v) out[v] = outer[inner[v]];
  return out;
}

}  // namespace

int GroupAction::num_vertices() const {
  return elements_.empty() ? 0 : static_cast<int>(elements_.front().vertex_perm.size());
}

GroupAction GroupAction::trivial(int dim, int num_vertices) {
  GroupElement e;
  e.matrix = Eigen::MatrixXd::Identity(dim, dim);
  e.vertex_perm.resize(num_vertices);
  std::iota(e.vertex_perm.begin(), e.vertex_perm.end(), 0);
  e.id = 0;
  GroupAction g;
  g.dim_ = dim;
  g.elements_ = {e};
  g.table_ = {{0}};
  g.inverse_ = {0};
  g.parent_ids_ = {0};
  return g;
}

GroupAction GroupAction::close(std::span<const GroupElement> generators, int max_order,
                               double tol) {
  if (generators.empty()) fail(ErrorCode::ValidationError, "close_group needs at least one generator");
  if (max_order < 1) fail(ErrorCode::ValidationError, "max_order must be >= 1");
  const auto n = generators.front().matrix.rows();
  const auto nv = generators.front().vertex_perm.size();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    if (g.matrix.rows() != n || g.matrix.cols() != n)
      fail(ErrorCode::ValidationError, "generator " + std::to_string(i) + " has wrong matrix shape");
    if (g.vertex_perm.size() != nv)
      fail(ErrorCode::ValidationError, "generator " + std::to_string(i) + " has wrong permutation length");
    if (!is_bijection(g.vertex_perm))
      fail(ErrorCode::ValidationError, "generator " + std::to_string(i) + " permutation is not a bijection");
    if (!is_orthogonal(g.matrix, tol))
      fail(ErrorCode::NotOrthogonal, "generator " + std::to_string(i) + " is not orthogonal");
    for (std::size_t j = 0; j < i; ++j)
      if (max_abs_diff(generators[j].matrix, g.matrix) < tol)
        fail(ErrorCode::ValidationError, "generators " + std::to_string(j) + " and " + std::to_string(i) +
                                             " coincide");
  }

  GroupAction out = trivial(static_cast<int>(n), static_cast<int>(nv));
  auto& elems = out.elements_;
  elems.front().id = 0;

  auto lookup = [&](const Eigen::MatrixXd& m, const Permutation& perm) -> int {
    for (const auto& e : elems) {
      if (max_abs_diff(e.matrix, m) < tol) {
        if (e.vertex_perm != perm)
          fail(ErrorCode::InconsistentAction,
               "equal matrices carry different vertex permutations (element " + std::to_string(e.id) + ")");
        return e.id;
      }
    }
    return -1;
  };

  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& gen : generators) {
      Eigen::MatrixXd m = elems[i].matrix * gen.matrix;
      Permutation perm = compose(elems[i].vertex_perm, gen.vertex_perm);
      if (!is_orthogonal(m, tol)) fail(ErrorCode::NotOrthogonal, "product drifted from orthogonality");
      if (lookup(m, perm) >= 0) continue;
      if (static_cast<int>(elems.size()) >= max_order)
        fail(ErrorCode::OrderExceeded, "closure exceeds max_order " + std::to_string(max_order));
      elems.push_back({std::move(m), std::move(perm), static_cast<int>(elems.size())});
    }
  }

  const int order = static_cast<int>(elems.size());
  out.table_.assign(order, std::vector<int>(order, -1));
  out.inverse_.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      int c = lookup(elems[a].matrix * elems[b].matrix,
                     compose(elems[a].vertex_perm, elems[b].vertex_perm));
      if (c < 0) fail(ErrorCode::InconsistentAction, "group table is not closed");
      out.table_[a][b] = c;
      if (c == 0) out.inverse_[a] = b;
    }
  }
  out.parent_ids_.resize(order);
  std::iota(out.parent_ids_.begin(), out.parent_ids_.end(), 0);
  return out;
}

int GroupAction::find(const Eigen::MatrixXd& m, double tol) const {
  for (const auto& e : elements_)
    if (max_abs_diff(e.matrix, m) < tol) return e.id;
  return -1;
}

GroupAction GroupAction::with_permutations(std::vector<Permutation> perms) const {
  if (perms.size() != elements_.size())
    fail(ErrorCode::ValidationError, "one permutation per element required");
  GroupAction out = *this;
  for (std::size_t i = 0; i < perms.size(); ++i) out.elements_[i].vertex_perm = std::move(perms[i]);
  return out;
}

GroupAction GroupAction::subgroup(std::span<const int> ids) const {
  std::vector<int> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty() || sorted.front() != 0) fail(ErrorCode::ValidationError, "subgroup must contain the identity");
  std::vector<int> local(elements_.size(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) local[sorted[i]] = static_cast<int>(i);

  GroupAction out;
  out.dim_ = dim_;
  const int order = static_cast<int>(sorted.size());
  out.table_.assign(order, std::vector<int>(order, -1));
  out.inverse_.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    GroupElement e = elements_[sorted[a]];
    e.id = a;
    out.elements_.push_back(std::move(e));
    for (int b = 0; b < order; ++b) {
      int c = local[table_[sorted[a]][sorted[b]]];
      if (c < 0) fail(ErrorCode::ValidationError, "subgroup ids are not closed under multiplication");
      out.table_[a][b] = c;
    }
    out.inverse_[a] = local[inverse_[sorted[a]]];
  }
  for (int id : sorted) out.parent_ids_.push_back(parent_ids_[id]);
  return out;
}

std::vector<std::vector<int>> conjugacy_classes(const GroupAction& group) {
  const int order = group.order();
  std::vector<int> assigned(order, -1);
  std::vector<std::vector<int>> classes;
  for (int g = 0; g < order; ++g) {
    if (assigned[g] >= 0) continue;
    std::vector<int> cls;
    for (int k = 0; k < order; ++k) {
      int h = group.mult(group.mult(k, g), group.inverse(k));
      if (assigned[h] < 0) {
        assigned[h] = static_cast<int>(classes.size());
        cls.push_back(h);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

int class_of(const std::vector<std::vector<int>>& classes, int g) {
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (std::binary_search(classes[c].begin(), classes[c].end(), g)) return static_cast<int>(c);
  return -1;
}

GroupAction centralizer(const GroupAction& group, int g) {
  std::vector<int> ids;
  for (int k = 0; k < group.order(); ++k)
    if (group.mult(k, g) == group.mult(g, k)) ids.push_back(k);
  return group.subgroup(ids);
}

int fixed_space_dim(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m - Eigen::MatrixXd::Identity(n, n));
  const auto& sv = svd.singularValues();
  int count = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < kRankTol) ++count;
  return count;
}

Eigen::MatrixXd fixed_space_basis(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m - Eigen::MatrixXd::Identity(n, n), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < kRankTol) cols.push_back(i);
  Eigen::MatrixXd basis(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) basis.col(static_cast<Eigen::Index>(j)) = svd.matrixV().col(cols[j]);
  return basis;
}

CodimensionReport validate_codimension2(const GroupAction& group) {
  CodimensionReport report;
  for (int g = 1; g < group.order(); ++g) {
    if (fixed_space_dim(group.element(g).matrix) > group.dim() - 2) {
      report.passed = false;
      report.offending.push_back(g);
    }
  }
  return report;
}

}  // namespace orbidx
