#include "longwave/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace lw {

void write_field_csv(const std::string& path, const Field& f) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw std::runtime_error("cannot open for writing: " + path);
  std::fprintf(fp, "coordinate,value\n");
  for (std::size_t i = 0; i < f.grid.n; ++i)
    std::fprintf(fp, "%.17g,%.17g\n", f.grid.point(i), f.v[i]);
  std::fclose(fp);
}

Field read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> coords, values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("malformed CSV line: " + line);
    coords.push_back(std::stod(line.substr(0, comma)));
    values.push_back(std::stod(line.substr(comma + 1)));
  }
  const std::size_t n = values.size();
  if (n < 8) throw std::runtime_error("too few samples in " + path);
  const double spacing = coords[1] - coords[0];
  Grid g{n, spacing * static_cast<double>(n), coords[0]};
  Field f(g);
  f.v = values;
  return f;
}

void write_field_binary(const std::string& path, const Field& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const std::uint64_t n = f.grid.n;
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&f.grid.length), sizeof(double));
  out.write(reinterpret_cast<const char*>(&f.grid.origin), sizeof(double));
  out.write(reinterpret_cast<const char*>(f.v.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path);
}

Field read_field_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::uint64_t n = 0;
  double length = 0.0, origin = 0.0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&length), sizeof length);
  in.read(reinterpret_cast<char*>(&origin), sizeof origin);
  Grid g{static_cast<std::size_t>(n), length, origin};
  Field f(g);
  in.read(reinterpret_cast<char*>(f.v.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw std::runtime_error("truncated field file: " + path);
  return f;
}

}  // namespace lw
