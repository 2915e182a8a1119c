#include "gagliardo/report.hpp"

#include "gagliardo/io.hpp"

#include <cstdio>
#include <ostream>

namespace gagliardo {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const nlohmann::json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(config.dump())));
  return buf;
}

void write_csv(std::ostream& out, const Table& table, const nlohmann::json& config) {
  out << "# gagliardo-lab " << kVersion << " config_hash=" << config_hash(config)
      << " config=" << config.dump() << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << "\n";
  }
}

nlohmann::json meta(const nlohmann::json& config) {
  return {{"version", std::string(kVersion)},
          {"schema_version", kSchemaVersion},
          {"config_hash", config_hash(config)},
          {"config", config}};
}

Table sweep_table(const SweepReport& report) {
  Table t;
  t.columns = {"epsilon",      "h",           "center",          "lhs",
               "lhs_error",    "rhs",         "rhs_error",       "gap",
               "gap_error",    "flagged",     "cross_domain",    "cross_domain_error",
               "cross_star",   "cross_star_error", "full_domain", "full_domain_error",
               "full_star",    "full_star_error"};
  for (const auto& r : report.records) {
    std::string center;
    for (Eigen::Index a = 0; a < r.center.size(); ++a)
      center += (a ? ";" : "") + format_double(r.center[a]);
    t.rows.push_back({format_double(r.epsilon), format_double(r.h), center,
                      format_double(r.lhs.value), format_double(r.lhs.error_estimate),
                      format_double(r.rhs.value), format_double(r.rhs.error_estimate),
                      format_double(r.gap), format_double(r.gap_error), r.flagged ? "1" : "0",
                      format_double(r.cross_domain), format_double(r.cross_domain_error),
                      format_double(r.cross_star), format_double(r.cross_star_error),
                      format_double(r.full_domain.value), format_double(r.full_domain.error_estimate),
                      format_double(r.full_star.value), format_double(r.full_star.error_estimate)});
  }
  return t;
}

nlohmann::json to_json(const SweepReport& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    records.push_back({{"epsilon", r.epsilon},
                       {"h", r.h},
                       {"center", std::vector<double>(r.center.data(), r.center.data() + r.center.size())},
                       {"lhs", to_json(r.lhs)},
                       {"rhs", to_json(r.rhs)},
                       {"gap", r.gap},
                       {"gap_error", r.gap_error},
                       {"flagged", r.flagged},
                       {"cross_domain", r.cross_domain},
                       {"cross_domain_error", r.cross_domain_error},
                       {"cross_star", r.cross_star},
                       {"cross_star_error", r.cross_star_error},
                       {"full_domain", to_json(r.full_domain)},
                       {"full_star", to_json(r.full_star)}});
  }
  nlohmann::json j{{"params", {{"n", report.params.n}, {"sigma", report.params.sigma}, {"p", report.params.p}}},
                   {"placement", report.placement},
                   {"threshold", report.threshold},
                   {"records", records},
                   {"slopes_fitted", report.slopes_fitted},
                   {"downward_closed", report.downward_closed},
                   {"any_flagged", report.any_flagged()},
                   {"warnings", report.warnings}};
  if (report.slopes_fitted) {
    j["slope_cross_domain"] = report.slope_domain;
    j["slope_cross_star"] = report.slope_star;
  }
  return j;
}

}  // namespace gagliardo
