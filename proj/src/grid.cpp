#include "mixlab/grid.hpp"

#include <fftw3.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

namespace mixlab {

void GridSpec::check() const {
  if (N != 1 && N != 2) throw ContractViolation("grid dimension must be 1 or 2");
  if (nodes < 2 || (nodes & (nodes - 1)) != 0) throw ContractViolation("grid nodes per axis must be a power of two");
  if (!(L > 0.0)) throw ContractViolation("box length must be positive");
}

Point GridSpec::coord(std::size_t idx) const {
  const double h = dx();
  if (N == 1) return {-0.5 * L + h * idx, 0.0};
  return {-0.5 * L + h * (idx / nodes), -0.5 * L + h * (idx % nodes)};
}

Point GridSpec::frequency(std::size_t idx) const {
  auto f = [&](std::size_t j) {
    const long k = j <= static_cast<std::size_t>(nodes / 2) ? static_cast<long>(j) : static_cast<long>(j) - nodes;
    return 2.0 * std::numbers::pi * k / L;
  };
  if (N == 1) return {f(idx), 0.0};
  return {f(idx / nodes), f(idx % nodes)};
}

GridFunction GridFunction::sample(const GridSpec& g, const std::function<double(const Point&)>& f) {
  GridFunction u(g);
  for (std::size_t i = 0; i < u.samples.size(); ++i) u.samples[i] = f(g.coord(i));
  return u;
}

double GridFunction::norm_l2() const { return std::sqrt(dot_l2(*this)); }

double GridFunction::dot_l2(const GridFunction& o) const {
  if (!(grid == o.grid)) throw ContractViolation("grid mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) acc += samples[i] * o.samples[i];
  return acc * grid.cell_volume();
}

namespace {

struct PlanKey {
  int N, n;
  bool inverse;
  bool operator<(const PlanKey& o) const {
    return std::tie(N, n, inverse) < std::tie(o.N, o.n, o.inverse);
  }
};

// Plans are made once per shape and reused through the new-array interface,
// which FFTW allows from any thread.
fftw_plan plan_for(const GridSpec& g, bool inverse) {
  constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  static std::mutex mu;
  static std::map<PlanKey, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mu);
  const PlanKey key{g.N, g.nodes, inverse};
  if (auto it = plans.find(key); it != plans.end()) return it->second;
  std::vector<std::complex<double>> scratch(g.size());
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  const int sign = inverse ? FFTW_BACKWARD : FFTW_FORWARD;
  fftw_plan plan = g.N == 1 ? fftw_plan_dft_1d(g.nodes, p, p, sign, kFlags)
                            : fftw_plan_dft_2d(g.nodes, g.nodes, p, p, sign, kFlags);
  plans[key] = plan;
  return plan;
}

}  // namespace

void dft(const GridSpec& g, std::vector<std::complex<double>>& data, bool inverse) {
  if (data.size() != g.size()) throw ContractViolation("transform size does not match the grid");
  fftw_plan p = plan_for(g, inverse);
  auto* d = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, d, d);
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary grid format assumes a little-endian host");

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw std::runtime_error("truncated grid file");
  return v;
}

}  // namespace

void write_binary(const GridFunction& u, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  put<std::uint32_t>(os, static_cast<std::uint32_t>(u.grid.N));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(u.grid.nodes));
  put<double>(os, u.grid.L);
  os.write(reinterpret_cast<const char*>(u.samples.data()), static_cast<std::streamsize>(u.samples.size() * 8));
}

GridFunction read_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  GridSpec g;
  g.N = static_cast<int>(get<std::uint32_t>(is));
  g.nodes = static_cast<int>(get<std::uint32_t>(is));
  g.L = get<double>(is);
  GridFunction u(g);
  is.read(reinterpret_cast<char*>(u.samples.data()), static_cast<std::streamsize>(u.samples.size() * 8));
  if (!is) throw std::runtime_error("truncated grid file " + path);
  return u;
}

void write_csv(const GridFunction& u, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os.precision(17);
  os << (u.grid.N == 1 ? "x,value\n" : "x,y,value\n");
  for (std::size_t i = 0; i < u.samples.size(); ++i) {
    const Point p = u.grid.coord(i);
    os << p[0] << ',';
    if (u.grid.N == 2) os << p[1] << ',';
    os << u.samples[i] << '\n';
  }
}

GridFunction read_csv(const std::string& path, const GridSpec& g) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  GridFunction u(g);
  std::string line;
  std::getline(is, line);  // header
  std::size_t i = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (i >= u.samples.size()) throw std::runtime_error("CSV has more rows than the grid");
    const auto pos = line.rfind(',');
    u.samples[i++] = std::stod(line.substr(pos + 1));
  }
  if (i != u.samples.size()) throw std::runtime_error("CSV row count does not match the grid");
  return u;
}

}  // namespace mixlab
