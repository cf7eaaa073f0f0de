#pragma once

#include "mixlab/common.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace mixlab {

// Uniform periodic box [-L/2, L/2)^N with `nodes` points per axis.
struct GridSpec {
  int N = 1;
  int nodes = 256;
  double L = 8.0;

  double dx() const { return L / nodes; }
  std::size_t size() const { return N == 1 ? nodes : static_cast<std::size_t>(nodes) * nodes; }
  Point coord(std::size_t idx) const;
  // Angular frequency of DFT index idx (Nyquist counted as positive).
  Point frequency(std::size_t idx) const;
  double cell_volume() const { return N == 1 ? dx() : dx() * dx(); }
  void check() const;
  bool operator==(const GridSpec& o) const { return N == o.N && nodes == o.nodes && L == o.L; }
};

struct GridFunction {
  GridSpec grid;
  std::vector<double> samples;

  GridFunction() = default;
  explicit GridFunction(GridSpec g) : grid(g), samples(g.size(), 0.0) { g.check(); }
  static GridFunction sample(const GridSpec& g, const std::function<double(const Point&)>& f);

  double norm_l2() const;  // sqrt(dx^N sum u^2)
  double dot_l2(const GridFunction& o) const;
};

// In-place unnormalized DFT (forward sign -1) on a grid-shaped array.
void dft(const GridSpec& g, std::vector<std::complex<double>>& data, bool inverse);

// Binary: little-endian uint32 N, uint32 nodes, float64 L, then float64 samples.
void write_binary(const GridFunction& u, const std::string& path);
GridFunction read_binary(const std::string& path);
// CSV with header "x,value" (N = 1) or "x,y,value" (N = 2).
void write_csv(const GridFunction& u, const std::string& path);
GridFunction read_csv(const std::string& path, const GridSpec& g);

}  // namespace mixlab
