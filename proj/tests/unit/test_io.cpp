#include "doctest.h"
#include "gagliardo/io.hpp"
#include "gagliardo/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace gagliardo;

namespace {

GridFunction sample(int n) {
  Grid g{Eigen::VectorXd::Constant(n, -0.75), 0.1, Eigen::VectorXi::Constant(n, 7)};
  std::mt19937_64 rng(5);
  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (!g.on_boundary(i)) v[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 / 3.0;
  return GridFunction(g, v);
}

bool same(const GridFunction& a, const GridFunction& b) {
  return a.grid() == b.grid() && (a.values() == b.values()).all();
}

std::string read_error(const std::string& text) {
  std::istringstream in(text);
  try {
    read_grid_function_text(in);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-1.5e-300) == "-1.5e-300");
  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    const double x = std::ldexp(static_cast<double>(rng() >> 11), -static_cast<int>(rng() % 80));
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("text round trip") {
  for (int n : {1, 2}) {
    const GridFunction u = sample(n);
    std::stringstream s;
    write_grid_function_text(s, u);
    CHECK(same(read_grid_function_text(s), u));
  }
}

TEST_CASE("binary round trip") {
  for (int n : {1, 2, 3}) {
    const GridFunction u = sample(n);
    std::stringstream s(std::ios::in | std::ios::out | std::ios::binary);
    write_grid_function_binary(s, u);
    const std::string bytes = s.str();
    CHECK(bytes.substr(0, 4) == "GGFN");
    CHECK(bytes.size() == 4 + 4 + 4 + 8 + 16 * static_cast<std::size_t>(n) + 8 * static_cast<std::size_t>(u.grid().size()));
    CHECK(same(read_grid_function_binary(s), u));
  }
  std::stringstream bad("GGFX0000");
  CHECK_THROWS_WITH(read_grid_function_binary(bad), doctest::Contains("bad magic"));
  const GridFunction u = sample(1);
  std::stringstream s;
  write_grid_function_binary(s, u);
  std::stringstream cut(s.str().substr(0, s.str().size() - 3));
  CHECK_THROWS_WITH(read_grid_function_binary(cut), doctest::Contains("truncated"));
}

TEST_CASE("files dispatch on the extension") {
  const auto dir = std::filesystem::temp_directory_path() / "gagliardo_io_test";
  std::filesystem::create_directories(dir);
  const GridFunction u = sample(2);
  for (const char* name : {"u.txt", "u.bin", "u.ggf"}) {
    const std::string path = (dir / name).string();
    save_grid_function(path, u);
    CHECK(same(load_grid_function(path), u));
  }
  std::ifstream bin(dir / "u.bin", std::ios::binary);
  char magic[4];
  bin.read(magic, 4);
  CHECK(std::string(magic, 4) == "GGFN");
  CHECK_THROWS(load_grid_function((dir / "missing.txt").string()));
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed text reports the line") {
  CHECK(read_error("# gridfunction v2\n").find("line 1") != std::string::npos);
  CHECK(read_error("# gridfunction v1\nn=1\nh=zero\n").find("line 3") != std::string::npos);
  CHECK(read_error("# gridfunction v1\nn=1\nh=1\nlo=0\ncells=3\n1\n2\n").find("line 8") != std::string::npos);
  CHECK(read_error("# gridfunction v1\nn=1\nh=1\nlo=0\ncells=3\n0\nabc\n0\n").find("line 7") != std::string::npos);
  CHECK(read_error("# gridfunction v1\nn=2\nh=1\nlo=0\ncells=3,3\n").find("line 4") != std::string::npos);
}

TEST_CASE("negative values are caught by validation with the cell index") {
  std::istringstream in("# gridfunction v1\nn=1\nh=1\nlo=-1\ncells=5\n0\n3\n-1\n2\n0\n");
  const GridFunction u = read_grid_function_text(in);
  CHECK_THROWS_WITH(u.validate(), doctest::Contains("negative value at cell 2"));
}

TEST_CASE("profile CSV") {
  Grid g{Eigen::VectorXd::Zero(1), 1.0, Eigen::VectorXi::Constant(1, 3)};
  std::ostringstream out;
  write_profile_csv(out, rearrange(GridFunction(g, Eigen::Array3d(3, 1, 2))));
  CHECK(out.str() ==
        "shell,r_inner,r_outer,volume_inner,volume_outer,level\n"
        "0,0,0.5,0,1,3\n"
        "1,0.5,1,1,2,2\n"
        "2,1,1.5,2,3,1\n");
}

TEST_CASE("report header and hashing") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  const nlohmann::json config{{"b", 1}, {"a", "x"}};
  CHECK(config_hash(config).size() == 16);
  std::ostringstream out;
  write_csv(out, Table{{"x", "y"}, {{"1", "2"}}}, config);
  const std::string first = out.str().substr(0, out.str().find('\n'));
  CHECK(first == "# gagliardo-lab " + std::string(kVersion) + " config_hash=" + config_hash(config) +
                     " config=" + config.dump());
  CHECK(out.str().substr(first.size() + 1) == "x,y\n1,2\n");
  const nlohmann::json m = meta(config);
  CHECK(m["version"] == std::string(kVersion));
  CHECK(m["schema_version"] == kSchemaVersion);
  CHECK(m["config"] == config);
}
