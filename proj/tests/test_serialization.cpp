#include "mixlab/grid.hpp"
#include "mixlab/serialization.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>

using namespace mixlab;

TEST_CASE("measure round trip") {
  const auto atomic = SphericalMeasure::atomic(2, {SphericalMeasure::at_angle(0.3, 0.25), SphericalMeasure::at_angle(2.0, 0.75)});
  const auto mixed = SphericalMeasure::mixture({{0.4, SphericalMeasure::uniform(2)}, {0.6, atomic}});
  for (const auto& m : {SphericalMeasure::uniform(1), SphericalMeasure::uniform(2), atomic, mixed,
                        SphericalMeasure::atomic(1, {{{1.0, 0.0}, 0.3}, {{-1.0, 0.0}, 0.7}})})
    CHECK(to_json(measure_from_json(to_json(m))) == to_json(m));
}

TEST_CASE("family and order measure round trip") {
  const MeasureFamily fam({0.0, 0.5, 1.0}, {SphericalMeasure::uniform(2), SphericalMeasure::atomic(2, {{{1.0, 0.0}, 1.0}})},
                          SphericalMeasure::uniform(2));
  CHECK(to_json(family_from_json(to_json(fam))) == to_json(fam));
  OrderMeasure mu = OrderMeasure::delta(0.5, 2.0);
  mu.add_minus(0.25, 0.1);
  mu.plus.density.push_back({1.0, 2.0, 0.5});
  CHECK(to_json(order_measure_from_json(to_json(mu))) == to_json(mu));
}

TEST_CASE("order measure shorthands") {
  const auto d = parse_order_measure("delta:0.5");
  REQUIRE(d.plus.atoms.size() == 1);
  CHECK(d.plus.atoms[0].s == 0.5);
  CHECK(d.plus.atoms[0].weight == 1.0);
  const auto l = parse_order_measure("1@0.5,-0.05@0.25");
  CHECK(l.minus.atoms.at(0).weight == doctest::Approx(0.05));
  const auto j = parse_order_measure(R"({"pos_atoms":[[1.0,1.0]],"neg_atoms":[[0.5,0.3]]})");
  CHECK(j.minus.atoms.at(0).s == 0.5);
  CHECK_THROWS_AS(parse_order_measure("delta:x"), ContractViolation);
  CHECK_THROWS_AS(parse_order_measure(R"({"pos_atoms":[[1.0]]})"), ContractViolation);
  CHECK_THROWS_AS(parse_order_measure("/nonexistent/mu.json"), ContractViolation);
}

TEST_CASE("spherical measure shorthands") {
  CHECK(parse_spherical_measure("uniform:2").is_uniform());
  CHECK(parse_spherical_measure("angle:0.5").dimension() == 2);
  CHECK_THROWS_AS(parse_spherical_measure(R"({"variant":"cone"})"), ContractViolation);
}

TEST_CASE("config hash is stable") {
  const Json a{{"m", 1}, {"s", 0.25}}, b{{"s", 0.25}, {"m", 1}}, c{{"m", 1}, {"s", 0.26}};
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a) != config_hash(c));
  CHECK(config_hash(Json::object()) == 0x9bf65e00c699fdafull);  // FNV-1a of "{}"
  CHECK(hex(0xabcull) == "0000000000000abc");
}

TEST_CASE("grid function binary and CSV round trip") {
  const GridSpec g{2, 16, 3.0};
  const auto u = GridFunction::sample(g, [](const Point& p) { return p[0] * 0.1 - p[1]; });
  const auto dir = std::filesystem::temp_directory_path();
  const auto bin = (dir / "mixlab_rt.bin").string(), csv = (dir / "mixlab_rt.csv").string();
  write_binary(u, bin);
  const auto b = read_binary(bin);
  CHECK(b.grid == g);
  CHECK(b.samples == u.samples);
  write_csv(u, csv);
  const auto c = read_csv(csv, g);
  for (std::size_t i = 0; i < u.samples.size(); ++i) CHECK(c.samples[i] == doctest::Approx(u.samples[i]).epsilon(1e-15));
  std::remove(bin.c_str());
  std::remove(csv.c_str());
}
