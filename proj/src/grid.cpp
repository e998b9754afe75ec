#include "longwave/grid.hpp"

namespace lw {

Grid make_grid(std::size_t n, double length, double origin) {
  if (n < 8 || (n & (n - 1)) != 0) throw std::invalid_argument("n must be a power of two");
  if (!(length > 0.0)) throw std::invalid_argument("length must be positive");
  return Grid{n, length, origin};
}

Field operator+(const Field& a, const Field& b) {
  check_same_grid(a, b);
  Field r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.v[i] += b.v[i];
  r.mean_zero = a.mean_zero && b.mean_zero;
  return r;
}

Field operator-(const Field& a, const Field& b) {
  check_same_grid(a, b);
  Field r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.v[i] -= b.v[i];
  r.mean_zero = a.mean_zero && b.mean_zero;
  return r;
}

Field operator*(double c, const Field& a) {
  Field r = a;
  for (double& x : r.v) x *= c;
  return r;
}

Field& operator+=(Field& a, const Field& b) {
  check_same_grid(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a.v[i] += b.v[i];
  a.mean_zero = a.mean_zero && b.mean_zero;
  return a;
}

Field& operator-=(Field& a, const Field& b) {
  check_same_grid(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a.v[i] -= b.v[i];
  a.mean_zero = a.mean_zero && b.mean_zero;
  return a;
}

}  // namespace lw
