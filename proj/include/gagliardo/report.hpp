#pragma once

// CSV and JSON emitters. Every CSV starts with one comment line
//   # gagliardo-lab <version> config_hash=<16 hex digits> config=<compact JSON>
// followed by a header row; JSON files carry the same data under "meta".

#include "gagliardo/experiments.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gagliardo {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

std::uint64_t fnv1a64(std::string_view bytes);

/// 16 lowercase hex digits of fnv1a64 over the compact dump of `config`.
std::string config_hash(const nlohmann::json& config);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const Table& table, const nlohmann::json& config);

/// {"version", "schema_version", "config_hash", "config"}.
nlohmann::json meta(const nlohmann::json& config);

Table sweep_table(const SweepReport& report);
nlohmann::json to_json(const SweepReport& report);

}  // namespace gagliardo
