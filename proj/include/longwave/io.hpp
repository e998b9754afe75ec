#pragma once

#include <string>

#include "longwave/grid.hpp"

namespace lw {

// Two-column CSV: coordinate,value with full double precision.
void write_field_csv(const std::string& path, const Field& f);
Field read_field_csv(const std::string& path);

// Binary column format, little-endian: header {u64 n, f64 length, f64 origin}
// followed by n f64 samples.
void write_field_binary(const std::string& path, const Field& f);
Field read_field_binary(const std::string& path);

}  // namespace lw
