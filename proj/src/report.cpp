#include "orbidx/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "orbidx/errors.hpp"
#include "orbidx/euler_satake.hpp"

namespace orbidx {

namespace {

using nlohmann::json;

double tidy(double x) {
  double r = std::round(x * 1e10) / 1e10;
  return r == 0.0 ? 0.0 : r;
}

json vec(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(tidy(v(i)));
  return a;
}

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(to_json(r));
  return a;
}

CheckResult error_result(const std::string& name, const Error& e) {
  return {name, Status::Error, e.what(), std::string(to_string(e.code()))};
}

int degree_1d(const FieldExpr& f, double z, double r) {
  Eigen::VectorXd a(1), b(1);
  a(0) = z - r;
  b(0) = z + r;
  double fa = f.evaluate(a)(0), fb = f.evaluate(b)(0);
  return ((fb > 0) - (fb < 0) - ((fa > 0) - (fa < 0))) / 2;
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
    case Status::Skipped: return "skipped";
  }
  return "";
}

const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> names{"theorem", "expected", "morse", "winding", "chi", "double", "inertia"};
  return names;
}

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == Status::Fail || c.status == Status::Error; });
}

VerificationReport run_verify(const Prepared& p, const std::vector<std::string>& requested) {
  const auto start = std::chrono::steady_clock::now();
  const auto& s = p.scenario;
  const auto& tol = s.tol;
  const auto& group = p.presentation.action;
  std::vector<std::string> checks = !requested.empty() ? requested : !s.checks.empty() ? s.checks : all_checks();
  for (const auto& c : checks)
    if (std::find(all_checks().begin(), all_checks().end(), c) == all_checks().end())
      fail(ErrorCode::ValidationError, "checks: unknown check '" + c + "'");

  VerificationReport r;
  r.scenario = s.name;
  r.dim = s.dim;
  r.group_order = group.order();
  r.subdivisions = p.subdivisions;
  r.equivariance_violation = p.equivariance.max_violation;

  std::optional<Error> index_error, chain_error;
  try {
    r.index = orbifold_index_sum(p.field, group, p.boundary, tol);
    r.lhs = r.index->total;
  } catch (const Error& e) {
    index_error = e;
  }
  try {
    r.chain = compute_chain(p.field, group, p.boundary, tol);
  } catch (const Error& e) {
    chain_error = e;
  }
  try {
    r.chi.chi_orb = chi_orb(p.presentation);
    r.chi.oracle = chi_orb_oracle(p.presentation);
    r.chi.chi_boundary = chi_orb(boundary_presentation(p.presentation));
    r.chi.chi_relative = chi_orb_relative(p.presentation);
    r.chi.chi_underlying = chi_underlying(p.presentation);
  } catch (const Error& e) {
    if (!chain_error) chain_error = e;
  }
  if (r.chain && !chain_error) r.rhs = r.chi.chi_relative + r.chain->total;
  const std::optional<Error>& core_error = index_error ? index_error : chain_error;

  for (const auto& name : checks) {
    CheckResult c{name, Status::Skipped, "", ""};
    bool index_only = name == "morse" || name == "winding";
    if (index_only && index_error) {
      r.checks.push_back(error_result(name, *index_error));
      continue;
    }
    if (core_error && !index_only && name != "chi" && name != "inertia") {
      r.checks.push_back(error_result(name, *core_error));
      continue;
    }
    try {
      if (name == "theorem") {
        c.status = *r.lhs == *r.rhs ? Status::Pass : Status::Fail;
        c.detail = to_string(*r.lhs) + " = " + to_string(r.chi.chi_relative) + " + " + to_string(r.chain->total);
      } else if (name == "expected") {
        const auto& e = s.expected;
        if (!e.lhs && !e.chi_relative && !e.chain_terms) {
          c.detail = "no frozen values";
        } else {
          bool ok = (!e.lhs || *e.lhs == *r.lhs) && (!e.chi_relative || *e.chi_relative == r.chi.chi_relative) &&
                    (!e.chain_terms || *e.chain_terms == r.chain->chi_terms);
          c.status = ok ? Status::Pass : Status::Fail;
          c.detail = ok ? "matches frozen values" : "differs from frozen values";
        }
      } else if (name == "morse") {
        if (!r.index->all_nondegenerate) {
          c.detail = "degenerate zero present";
        } else {
          c.status = r.index->morse_sum == r.index->total ? Status::Pass : Status::Fail;
          c.detail = "sum (-1)^lambda C_lambda = " + to_string(r.index->morse_sum);
        }
      } else if (name == "winding") {
        bool ok = true;
        const auto& recs = r.index->records;
        for (std::size_t i = 0; i < recs.size(); ++i) {
          const auto& z = recs[i].location;
          double rad = std::min(0.1, 0.5 * p.boundary.distance(z));
          for (std::size_t k = 0; k < recs.size(); ++k)
            if (k != i) rad = std::min(rad, 0.25 * (recs[k].location - z).norm());
          int w = s.dim == 2 ? winding_number_2d(p.field, z.head<2>(), rad, 64, tol.field)
                 : s.dim == 1 ? degree_1d(p.field, z(0), rad)
                              : recs[i].local_index;
          r.windings.push_back(w);
          ok = ok && w == recs[i].local_index;
        }
        c.status = ok ? Status::Pass : Status::Fail;
        c.detail = std::to_string(recs.size()) + " zeros";
      } else if (name == "chi") {
        r.chi.chi_orb = chi_orb(p.presentation);
        r.chi.oracle = chi_orb_oracle(p.presentation);
        auto once = subdivide_presentation(p.presentation);
        auto twice = subdivide_presentation(once);
        r.chi.subdivided = {chi_orb(once), chi_orb(twice)};
        bool ok = r.chi.chi_orb == r.chi.oracle && r.chi.subdivided[0] == r.chi.chi_orb &&
                  r.chi.subdivided[1] == r.chi.chi_orb;
        if (!boundary_subcomplex(p.presentation.complex).empty()) {
          r.chi.chi_boundary = chi_orb(boundary_presentation(p.presentation));
          r.chi.chi_double = chi_orb(regularize(double_complex(p.presentation)).presentation);
          ok = ok && *r.chi.chi_double == 2 * r.chi.chi_orb - r.chi.chi_boundary;
        }
        c.status = ok ? Status::Pass : Status::Fail;
        c.detail = "chi_orb = " + to_string(r.chi.chi_orb);
      } else if (name == "double") {
        std::vector<Eigen::VectorXd> zeros;
        for (const auto& rec : r.index->records) zeros.push_back(rec.location);
        auto d = build_doubled_field(p.field, group, p.boundary, zeros, *r.chain, tol);
        r.collar = d.collar();
        r.dbl = double_index_report(d, p.presentation, *r.index, *r.chain, tol);
        c.status = r.dbl->passed ? Status::Pass : Status::Fail;
        c.detail = r.dbl->passed ? "Ind(X; double) = " + to_string(r.dbl->total) : "failed " + r.dbl->first_failure;
      } else if (name == "inertia") {
        r.sectors = build_sectors(p.presentation);
        r.chi_inertia = chi_orb_inertia(p.presentation);
        bool ok = true;
        if (!boundary_subcomplex(p.presentation.complex).empty()) {
          Rational dbl = chi_orb_inertia(regularize(double_complex(p.presentation)).presentation);
          Rational bnd = chi_orb_inertia(boundary_presentation(p.presentation));
          ok = dbl == 2 * *r.chi_inertia - bnd;
        }
        if (core_error) {
          c.status = Status::Error;
          c.code = std::string(to_string(core_error->code()));
          c.detail = core_error->what();
        } else {
          r.corollary = verify_corollary(p.field, p.presentation, *r.index, *r.chain, tol);
          ok = ok && r.corollary->passed;
          c.status = ok ? Status::Pass : Status::Fail;
          c.detail = to_string(r.corollary->lhs) + " = " + to_string(r.corollary->rhs);
        }
      }
    } catch (const Error& e) {
      c = error_result(name, e);
    }
    r.checks.push_back(std::move(c));
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json to_json(const Rational& r) { return json{{"num", r.numerator()}, {"den", r.denominator()}}; }

json to_json(const VerificationReport& r, bool timing) {
  json j;
  j["schema"] = 1;
  j["scenario"] = r.scenario;
  j["dim"] = r.dim;
  j["group_order"] = r.group_order;
  j["subdivisions"] = r.subdivisions;
  if (r.lhs) j["lhs"] = to_json(*r.lhs);
  if (r.rhs) {
    j["rhs"] = {{"chi_relative", to_json(r.chi.chi_relative)},
                {"chain_terms", rationals(r.chain->chi_terms)},
                {"total", to_json(*r.rhs)}};
  }
  if (r.index) {
    json zeros = json::array();
    for (std::size_t i = 0; i < r.index->records.size(); ++i) {
      const auto& z = r.index->records[i];
      json e{{"location", vec(z.location)},
             {"isotropy", z.isotropy_order},
             {"det_sign", z.det_sign},
             {"local_index", z.local_index},
             {"orb_index", to_json(z.orb_index)},
             {"orbit", r.index->orbit_of[i]}};
      e["morse_lambda"] = z.morse_lambda ? json(*z.morse_lambda) : json(nullptr);
      if (i < r.windings.size()) e["winding"] = r.windings[i];
      zeros.push_back(e);
    }
    j["index"] = {{"total", to_json(r.index->total)},
                  {"upstairs_over_order", to_json(r.index->upstairs_over_order)},
                  {"morse_counts", rationals(r.index->morse_counts)},
                  {"morse_sum", to_json(r.index->morse_sum)},
                  {"zeros", zeros}};
  }
  if (r.chain) {
    json levels = json::array();
    for (const auto& l : r.chain->levels) {
      json isotropy = json::array();
      for (const auto& q : l.gamma) isotropy.push_back(q.isotropy_order);
      levels.push_back({{"level", l.level},
                        {"exit_arcs", l.exit_arcs.size()},
                        {"exit_points", l.exit_points.size()},
                        {"gamma_points", l.gamma.size()},
                        {"chi_exit", l.chi_exit},
                        {"chi_entry", l.chi_entry},
                        {"chi_gamma", l.chi_gamma},
                        {"exit_orbits", l.exit_orbits},
                        {"gamma_orbits", l.gamma_orbits},
                        {"gamma_isotropy", isotropy},
                        {"chi_term", to_json(l.chi_term)}});
    }
    j["chain"] = {{"levels", levels}, {"total", to_json(r.chain->total)}};
  }
  json chi{{"chi_orb", to_json(r.chi.chi_orb)},
           {"oracle", to_json(r.chi.oracle)},
           {"chi_boundary", to_json(r.chi.chi_boundary)},
           {"chi_relative", to_json(r.chi.chi_relative)},
           {"chi_underlying", r.chi.chi_underlying},
           {"subdivided", rationals(r.chi.subdivided)}};
  if (r.chi.chi_double) chi["chi_double"] = to_json(*r.chi.chi_double);
  j["chi"] = chi;
  if (r.dbl) {
    json zeros = json::array();
    for (const auto& z : r.dbl->zeros)
      zeros.push_back({{"location", vec(z.position)},
                       {"region", z.in_exit ? "R-" : "R+"},
                       {"isotropy", z.isotropy_order},
                       {"zh_index", z.zh_index},
                       {"x_index", z.x_index},
                       {"fd_index", z.fd_index},
                       {"winding", z.winding}});
    json lines = json::array();
    for (const auto& l : r.dbl->lines)
      lines.push_back({{"label", l.label}, {"lhs", to_json(l.lhs)}, {"rhs", to_json(l.rhs)}, {"pass", l.passed}});
    j["double"] = {{"epsilon", tidy(r.collar->epsilon)},
                   {"s", tidy(r.collar->s)},
                   {"interior", to_json(r.dbl->interior)},
                   {"boundary_sum", to_json(r.dbl->boundary_sum)},
                   {"total", to_json(r.dbl->total)},
                   {"zh_plus", to_json(r.dbl->zh_plus)},
                   {"zh_minus", to_json(r.dbl->zh_minus)},
                   {"chi_double", to_json(r.dbl->chi_double)},
                   {"boundary_zeros", zeros},
                   {"lines", lines}};
  }
  if (!r.sectors.empty()) {
    json sectors = json::array();
    for (std::size_t i = 0; i < r.sectors.size(); ++i) {
      const auto& s = r.sectors[i];
      json e{{"class_rep", s.class_rep},
             {"class_size", s.class_size},
             {"centralizer_order", s.centralizer.order()},
             {"chi_fixed", s.chi_fixed},
             {"chi_orb", to_json(s.chi_orb_value)}};
      if (r.corollary && i < r.corollary->sectors.size()) {
        e["zeros"] = r.corollary->sectors[i].zeros;
        e["index"] = to_json(r.corollary->sectors[i].orb_index);
      }
      sectors.push_back(e);
    }
    json inertia{{"sectors", sectors}};
    if (r.chi_inertia) inertia["chi_orb_inertia"] = to_json(*r.chi_inertia);
    if (r.corollary) {
      inertia["corollary"] = {{"lhs", to_json(r.corollary->lhs)},
                              {"chi_underlying", r.corollary->chi_underlying_q},
                              {"chi_underlying_boundary", r.corollary->chi_underlying_boundary},
                              {"chain_terms", r.corollary->chain_terms},
                              {"rhs", to_json(r.corollary->rhs)}};
    }
    j["inertia"] = inertia;
  }
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}};
    if (!c.code.empty()) e["code"] = c.code;
    checks.push_back(e);
  }
  j["checks"] = checks;
  j["verdict"] = r.passed() ? "pass" : "fail";
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

std::string summary_text(const VerificationReport& r) {
  std::ostringstream out;
  out << r.scenario << "  n=" << r.dim << "  |G|=" << r.group_order << "  subdivisions=" << r.subdivisions << "\n";
  if (r.lhs) out << "  Ind_orb(Y;Q)        " << to_string(*r.lhs) << "\n";
  if (r.rhs) {
    out << "  chi_orb(Q,dQ)       " << to_string(r.chi.chi_relative) << "\n";
    for (std::size_t i = 0; i < r.chain->chi_terms.size(); ++i)
      out << "  chi_orb(R-^" << i + 1 << ",G^" << i + 1 << ")    " << to_string(r.chain->chi_terms[i]) << "\n";
    out << "  right side          " << to_string(*r.rhs) << "\n";
  }
  for (const auto& c : r.checks) {
    out << "  " << c.name << std::string(c.name.size() < 10 ? 10 - c.name.size() : 1, ' ') << to_string(c.status);
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
  }
  out << "  verdict   " << (r.passed() ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace orbidx
