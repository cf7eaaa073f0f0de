#pragma once

#include "mixlab/serialization.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mixlab {

struct Check {
  std::string name;
  double value;
  double threshold;
  bool pass;
  std::string detail;
};

struct VerifyReport {
  explicit VerifyReport(std::string report_id) : id(std::move(report_id)) {}

  std::string id;
  std::vector<Check> checks;
  Json parameters = Json::object();  // grids, orders, domains actually used
  std::vector<std::string> table_header;
  std::vector<std::vector<double>> table;

  bool pass() const;
  Json to_json() const;
  void check(std::string name, double value, double threshold, bool pass, std::string detail = {});
};

struct VerifyOptions {
  std::optional<int> m;
  std::optional<double> s;
  std::optional<std::string> omega;
  std::optional<int> K;
  std::optional<std::string> kind;
  std::optional<double> tol;
  std::uint64_t seed = 42;
};

struct VerifySuite {
  std::string id;
  std::string summary;
  std::function<VerifyReport(const VerifyOptions&)> run;
};

const std::vector<VerifySuite>& verify_suites();
// Throws ContractViolation listing the available ids.
const VerifySuite& find_suite(const std::string& id);

}  // namespace mixlab
