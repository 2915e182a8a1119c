#pragma once

// File formats.
//
// GridFunction text form:
//   # gridfunction v1
//   n=<dimension>
//   h=<spacing>
//   lo=<lo_1>,...,<lo_n>
//   cells=<c_1>,...,<c_n>
//   <one value per line, row-major, last axis fastest>
//
// GridFunction binary form (little-endian):
//   "GGFN" | u32 version = 1 | u32 n | f64 h | n x f64 lo | n x u64 cells | f64 values...
//
// Numbers are written in the shortest form that round-trips.

#include "gagliardo/grid.hpp"
#include "gagliardo/rearrange.hpp"

#include <iosfwd>
#include <string>

namespace gagliardo {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double x);

void write_grid_function_text(std::ostream& out, const GridFunction& u);
GridFunction read_grid_function_text(std::istream& in);

void write_grid_function_binary(std::ostream& out, const GridFunction& u);
GridFunction read_grid_function_binary(std::istream& in);

/// Dispatches on the extension: ".bin" / ".ggf" binary, anything else text.
GridFunction load_grid_function(const std::string& path);
void save_grid_function(const std::string& path, const GridFunction& u);

/// CSV with columns shell, r_inner, r_outer, volume_inner, volume_outer, level.
void write_profile_csv(std::ostream& out, const RadialProfile& profile);

}  // namespace gagliardo
