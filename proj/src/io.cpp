#include "gagliardo/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gagliardo {

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

namespace {

[[noreturn]] void parse_error(long line, const std::string& what) {
  throw std::runtime_error("gridfunction text, line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& s, long line) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  while (e > b && (e[-1] == ' ' || e[-1] == '\t' || e[-1] == '\r')) --e;
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e) parse_error(line, "cannot parse number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::string expect_key(const std::string& line, const std::string& key, long number) {
  if (line.rfind(key + "=", 0) != 0) parse_error(number, "expected '" + key + "='");
  return line.substr(key.size() + 1);
}

template <typename T>
void put(std::ostream& out, T v) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const char* what) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T)))
    throw std::runtime_error(std::string("gridfunction binary: truncated while reading ") + what +
                             " at byte " + std::to_string(static_cast<long long>(in.gcount())));
  return v;
}

}  // namespace

void write_grid_function_text(std::ostream& out, const GridFunction& u) {
  const Grid& g = u.grid();
  out << "# gridfunction v1\n";
  out << "n=" << g.dimension() << "\n";
  out << "h=" << format_double(g.h) << "\n";
  out << "lo=";
  for (int a = 0; a < g.dimension(); ++a) out << (a ? "," : "") << format_double(g.lo[a]);
  out << "\ncells=";
  for (int a = 0; a < g.dimension(); ++a) out << (a ? "," : "") << g.cells[a];
  out << "\n";
  for (Eigen::Index i = 0; i < u.values().size(); ++i) out << format_double(u.values()[i]) << "\n";
}

GridFunction read_grid_function_text(std::istream& in) {
  std::string line;
  long number = 0;
  auto next = [&]() {
    while (std::getline(in, line)) {
      ++number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next() || line != "# gridfunction v1") parse_error(number, "missing '# gridfunction v1' header");
  if (!next()) parse_error(number, "missing n=");
  const int n = static_cast<int>(parse_double(expect_key(line, "n", number), number));
  if (n < 1) parse_error(number, "dimension must be >= 1");
  if (!next()) parse_error(number, "missing h=");
  Grid g;
  g.h = parse_double(expect_key(line, "h", number), number);
  if (!next()) parse_error(number, "missing lo=");
  const auto lo = split(expect_key(line, "lo", number), ',');
  if (static_cast<int>(lo.size()) != n) parse_error(number, "lo needs " + std::to_string(n) + " entries");
  g.lo.resize(n);
  for (int a = 0; a < n; ++a) g.lo[a] = parse_double(lo[static_cast<std::size_t>(a)], number);
  if (!next()) parse_error(number, "missing cells=");
  const auto cells = split(expect_key(line, "cells", number), ',');
  if (static_cast<int>(cells.size()) != n) parse_error(number, "cells needs " + std::to_string(n) + " entries");
  g.cells.resize(n);
  for (int a = 0; a < n; ++a) g.cells[a] = static_cast<int>(parse_double(cells[static_cast<std::size_t>(a)], number));
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    parse_error(number, e.what());
  }
  Eigen::ArrayXd values(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!next())
      parse_error(number + 1, "unexpected end of input: expected " + std::to_string(g.size()) +
                                  " values, got " + std::to_string(i));
    values[i] = parse_double(line, number);
  }
  if (next()) parse_error(number, "unexpected trailing data");
  return GridFunction(std::move(g), std::move(values));
}

void write_grid_function_binary(std::ostream& out, const GridFunction& u) {
  const Grid& g = u.grid();
  out.write("GGFN", 4);
  put<std::uint32_t>(out, 1);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dimension()));
  put<double>(out, g.h);
  for (int a = 0; a < g.dimension(); ++a) put<double>(out, g.lo[a]);
  for (int a = 0; a < g.dimension(); ++a) put<std::uint64_t>(out, static_cast<std::uint64_t>(g.cells[a]));
  for (Eigen::Index i = 0; i < u.values().size(); ++i) put<double>(out, u.values()[i]);
}

GridFunction read_grid_function_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "GGFN", 4) != 0)
    throw std::runtime_error("gridfunction binary: bad magic (expected GGFN)");
  const auto version = get<std::uint32_t>(in, "version");
  if (version != 1) throw std::runtime_error("gridfunction binary: unsupported version " + std::to_string(version));
  const auto n = static_cast<int>(get<std::uint32_t>(in, "dimension"));
  if (n < 1 || n > 8) throw std::runtime_error("gridfunction binary: bad dimension");
  Grid g;
  g.h = get<double>(in, "h");
  g.lo.resize(n);
  g.cells.resize(n);
  for (int a = 0; a < n; ++a) g.lo[a] = get<double>(in, "lo");
  for (int a = 0; a < n; ++a) g.cells[a] = static_cast<int>(get<std::uint64_t>(in, "cells"));
  g.validate();
  Eigen::ArrayXd values(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) values[i] = get<double>(in, "values");
  return GridFunction(std::move(g), std::move(values));
}

GridFunction load_grid_function(const std::string& path) {
  const bool binary = path.ends_with(".bin") || path.ends_with(".ggf");
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return binary ? read_grid_function_binary(in) : read_grid_function_text(in);
}

void save_grid_function(const std::string& path, const GridFunction& u) {
  const bool binary = path.ends_with(".bin") || path.ends_with(".ggf");
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  if (binary)
    write_grid_function_binary(out, u);
  else
    write_grid_function_text(out, u);
}

void write_profile_csv(std::ostream& out, const RadialProfile& profile) {
  out << "shell,r_inner,r_outer,volume_inner,volume_outer,level\n";
  for (std::size_t k = 0; k < profile.shells(); ++k)
    out << k << "," << format_double(profile.breakpoint(k)) << ","
        << format_double(profile.breakpoint(k + 1)) << "," << format_double(profile.volume_at(k))
        << "," << format_double(profile.volume_at(k + 1)) << ","
        << format_double(profile.levels()[k]) << "\n";
}

}  // namespace gagliardo
