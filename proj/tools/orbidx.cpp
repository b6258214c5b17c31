#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbidx/errors.hpp"
#include "orbidx/report.hpp"

#ifndef ORBIDX_CATALOG_DIR
#define ORBIDX_CATALOG_DIR "catalog"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string scenario;
  std::string checks;
  std::string json_out;
  std::string dir = ORBIDX_CATALOG_DIR;
  bool timing = false;
  std::map<std::string, std::optional<double>> tol;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "scenario JSON file")->required();
  cmd->add_option("--json", o.json_out, "write the JSON report here ('-' for stdout)");
  cmd->add_flag("--timing", o.timing, "include wall time in the JSON report");
  for (const auto& name : orbidx::tolerance_names()) {
    std::string flag = "--tol-" + name;
    std::replace(flag.begin(), flag.end(), '_', '-');
    cmd->add_option(flag, o.tol[name], "override tolerance '" + name + "'");
  }
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

orbidx::Prepared load(const std::string& path, const Options& o) {
  auto s = orbidx::load_scenario(path);
  for (const auto& [name, value] : o.tol)
    if (value) orbidx::set_tolerance(s.tol, name, *value);
  return orbidx::prepare(s);
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) return;
  if (out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw orbidx::Error(orbidx::ErrorCode::ValidationError, "cannot write " + out);
  f << j.dump(2) << "\n";
}

int run_single(const Options& o, const std::vector<std::string>& checks, const char* section) {
  auto p = load(o.scenario, o);
  auto report = orbidx::run_verify(p, checks);
  json j = orbidx::to_json(report, o.timing);
  if (o.json_out != "-") std::cout << orbidx::summary_text(report);
  if (section && j.contains(section) && o.json_out.empty()) std::cout << j[section].dump(2) << "\n";
  emit(j, o.json_out);
  return report.passed() ? 0 : 1;
}

int run_chain(const Options& o) {
  auto p = load(o.scenario, o);
  auto contact = orbidx::verify_generic_contact(p.field, p.presentation.action, p.boundary, p.scenario.tol);
  json j{{"scenario", p.scenario.name}, {"generic_contact", contact.passed}};
  json issues = json::array();
  for (const auto& i : contact.issues) {
    json loc = json::array();
    for (Eigen::Index k = 0; k < i.location.size(); ++k) loc.push_back(i.location(k));
    issues.push_back({{"code", orbidx::to_string(i.code)}, {"message", i.message}, {"location", loc}});
  }
  j["issues"] = issues;
  if (!contact.passed) {
    if (o.json_out != "-") {
      std::cout << p.scenario.name << "  generic contact: fail\n";
      for (const auto& i : contact.issues) std::cout << "  " << orbidx::to_string(i.code) << "  " << i.message << "\n";
    }
    emit(j, o.json_out);
    return 1;
  }
  auto report = orbidx::run_verify(p, {"theorem"});
  json r = orbidx::to_json(report, o.timing);
  if (r.contains("chain")) j["chain"] = r["chain"];
  if (o.json_out != "-") {
    std::cout << p.scenario.name << "  generic contact: pass\n";
    if (r.contains("chain")) std::cout << r["chain"].dump(2) << "\n";
  }
  emit(j, o.json_out);
  return 0;
}

int run_catalog(const Options& o) {
  if (!fs::is_directory(o.dir)) throw orbidx::Error(orbidx::ErrorCode::ValidationError, "no catalog at " + o.dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(o.dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  json all = json::array();
  bool ok = true;
  std::printf("%-32s %-10s %-10s %s\n", "scenario", "lhs", "rhs", "verdict");
  for (const auto& f : files) {
    auto p = load(f.string(), o);
    auto r = orbidx::run_verify(p, split(o.checks));
    ok = ok && r.passed();
    std::printf("%-32s %-10s %-10s %s\n", r.scenario.c_str(), r.lhs ? orbidx::to_string(*r.lhs).c_str() : "-",
                r.rhs ? orbidx::to_string(*r.rhs).c_str() : "-", r.passed() ? "pass" : "fail");
    all.push_back(orbidx::to_json(r, o.timing));
  }
  emit(all, o.json_out);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbifold Poincare-Hopf verification"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "run every enabled check on a scenario");
  add_common(verify, o);
  verify->add_option("--checks", o.checks, "comma-separated subset of: theorem,expected,morse,winding,chi,double,inertia");
  auto* chi = app.add_subcommand("chi", "Euler-Satake characteristics");
  add_common(chi, o);
  auto* index = app.add_subcommand("index", "zeros, orbifold indices, Morse counts");
  add_common(index, o);
  auto* chain = app.add_subcommand("chain", "generic-contact check and exit-region chain");
  add_common(chain, o);
  auto* dbl = app.add_subcommand("double", "doubled field and index bookkeeping");
  add_common(dbl, o);
  auto* inertia = app.add_subcommand("inertia", "inertia sectors and the underlying-space identity");
  add_common(inertia, o);
  auto* catalog = app.add_subcommand("catalog", "verify every scenario in a directory");
  catalog->add_option("--dir", o.dir, "catalog directory");
  catalog->add_option("--checks", o.checks, "comma-separated check subset");
  catalog->add_option("--json", o.json_out, "write the JSON reports here ('-' for stdout)");
  catalog->add_flag("--timing", o.timing, "include wall time in the JSON reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_single(o, split(o.checks), nullptr);
    if (chi->parsed()) return run_single(o, {"chi"}, "chi");
    if (index->parsed()) return run_single(o, {"morse", "winding"}, "index");
    if (chain->parsed()) return run_chain(o);
    if (dbl->parsed()) return run_single(o, {"double"}, "double");
    if (inertia->parsed()) return run_single(o, {"inertia"}, "inertia");
    if (catalog->parsed()) return run_catalog(o);
  } catch (const orbidx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
