#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbidx/doubling.hpp"
#include "orbidx/exit_chain.hpp"
#include "orbidx/inertia.hpp"
#include "orbidx/scenario.hpp"

namespace orbidx {

enum class Status { Pass, Fail, Error, Skipped };
std::string_view to_string(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::Skipped;
  std::string detail;
  std::string code;  // error code name when status is Error
};

/// Check names accepted by run_verify, in report order.
const std::vector<std::string>& all_checks();

struct ChiSummary {
  Rational chi_orb{0};
  Rational oracle{0};
  Rational chi_boundary{0};
  Rational chi_relative{0};
  int chi_underlying = 0;
  std::vector<Rational> subdivided;  // chi_orb after 1 and 2 extra subdivisions
  std::optional<Rational> chi_double;
};

struct VerificationReport {
  std::string scenario;
  int dim = 0;
  int group_order = 1;
  int subdivisions = 0;
  double equivariance_violation = 0.0;

  std::optional<IndexSum> index;
  std::optional<ExitChain> chain;
  std::optional<Rational> lhs;
  std::optional<Rational> rhs;
  std::vector<int> windings;  // per zero record, oracle degree
  ChiSummary chi;
  std::optional<DoubleReport> dbl;
  std::optional<CollarChart> collar;
  std::vector<Sector> sectors;
  std::optional<Rational> chi_inertia;
  std::optional<CorollaryReport> corollary;

  std::vector<CheckResult> checks;
  double elapsed_ms = 0.0;

  bool passed() const;
};

/// Runs the pipeline. `checks` empty means the scenario's default list,
/// or every check when that is empty too. Module errors are recorded as
/// Error results, never thrown.
VerificationReport run_verify(const Prepared& p, const std::vector<std::string>& checks = {});

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const VerificationReport& r, bool timing = false);
std::string summary_text(const VerificationReport& r);

}  // namespace orbidx
