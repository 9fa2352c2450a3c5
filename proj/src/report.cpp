#include <puritylens/report.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace puritylens {

namespace {

using json = nlohmann::ordered_json;

json stats_json(const CheckStats& s) {
  return json{{"min", s.min}, {"median", s.median}, {"max", s.max}};
}

json check_json(const CheckSummary& c) {
  return json{{"violations", c.violations}, {"stats", stats_json(c.stats)}};
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  if (header.empty()) {
    throw InvariantError("write_csv: header must be non-empty");
  }
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw InvariantError("write_csv: row width " +
                           std::to_string(row.size()) +
                           " does not match header width " +
                           std::to_string(header.size()));
    }
  }
  std::ofstream out(path, std::ios::binary);  // binary keeps '\n' endings
  if (!out) {
    throw std::runtime_error("write_csv: cannot open '" + path +
                             "' for writing");
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << header[i];
    out << (i + 1 < header.size() ? "," : "\n");
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << format_double(row[i]);
      out << (i + 1 < row.size() ? "," : "\n");
    }
  }
  if (!out) {
    throw std::runtime_error("write_csv: write to '" + path + "' failed");
  }
}

std::string to_json(const VerificationSummary& s) {
  json j;
  j["suite"] = "purity-bound-verification";
  j["seed"] = s.seed;
  j["trials"] = s.trials;
  j["tolerance"] = s.tolerance;
  j["threads"] = s.threads;
  j["dims_s"] = s.dims_s;
  j["dims_e"] = s.dims_e;
  j["violations"] = s.violations;
  j["worst_slack"] = s.worst_slack;
  j["checks"] = json{
      {"chain_p_le_a", check_json(s.chain_p_le_a)},
      {"chain_a_le_b", check_json(s.chain_a_le_b)},
      {"chain_b_le_c", check_json(s.chain_b_le_c)},
      {"ineq_linear", check_json(s.ineq_linear)},
      {"ineq_quadratic", check_json(s.ineq_quadratic)},
      {"product_analytic", check_json(s.product_analytic)},
      {"product_fd", check_json(s.product_fd)},
      {"pairing_lhs_mid", check_json(s.pairing_lhs_mid)},
      {"pairing_mid_rhs", check_json(s.pairing_mid_rhs)},
  };
  j["bound_levels"] = json{
      {"abs_p_prime", stats_json(s.level_abs_p_prime)},
      {"bound_a", stats_json(s.level_bound_a)},
      {"bound_b", stats_json(s.level_bound_b)},
      {"bound_c", stats_json(s.level_bound_c)},
  };
  j["notes"] = s.notes;
  return j.dump(2) + "\n";
}

}  // namespace puritylens
