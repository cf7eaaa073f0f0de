#include "mixlab/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace mixlab {

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ContractViolation("cannot open '" + path + "' (expected inline JSON, a shorthand, or a file)");
  try {
    return Json::parse(is);
  } catch (const Json::exception& e) {
    throw ContractViolation("invalid JSON in '" + path + "': " + e.what());
  }
}

// Inline JSON, a JSON file, or std::nullopt for shorthand forms.
std::optional<Json> json_source(const std::string& text) {
  if (!text.empty() && (text.front() == '{' || text.front() == '[')) {
    try {
      return Json::parse(text);
    } catch (const Json::exception& e) {
      throw ContractViolation(std::string("invalid inline JSON: ") + e.what());
    }
  }
  if (text.find(':') == std::string::npos && text.find('@') == std::string::npos) return read_json_file(text);
  return std::nullopt;
}

double number(const std::string& tok, const std::string& ctx) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ContractViolation("cannot parse number '" + tok + "' in '" + ctx + "'");
  }
  if (used != tok.size()) throw ContractViolation("cannot parse number '" + tok + "' in '" + ctx + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ContractViolation(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

}  // namespace

Json to_json(const SphericalMeasure& sigma) {
  return std::visit(
      [&](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, UniformSurface>) {
          return {{"variant", "uniform"}, {"dimension", v.dimension}};
        } else if constexpr (std::is_same_v<T, AtomicMeasure>) {
          Json dirs = Json::array(), w = Json::array();
          for (const auto& a : v.atoms) {
            if (v.dimension == 1) dirs.push_back(a.direction[0] > 0 ? 1 : -1);
            else dirs.push_back(std::atan2(a.direction[1], a.direction[0]));
            w.push_back(a.weight);
          }
          Json j{{"variant", "atomic"}, {"dimension", v.dimension}, {"weights", w}};
          j[v.dimension == 1 ? "signs" : "angles"] = dirs;
          return j;
        } else {
          Json parts = Json::array();
          for (const auto& p : v.parts) parts.push_back({{"coefficient", p.coefficient}, {"measure", to_json(p.measure)}});
          return {{"variant", "mixture"}, {"parts", parts}};
        }
      },
      sigma.value());
}

SphericalMeasure measure_from_json(const Json& j) {
  return guarded("measure", [&]() -> SphericalMeasure {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "uniform") return SphericalMeasure::uniform(j.value("dimension", 1));
    if (variant == "atomic") {
      const int N = j.value("dimension", j.contains("angles") ? 2 : 1);
      const auto w = j.at("weights").get<std::vector<double>>();
      std::vector<SphereAtom> atoms;
      if (N == 1) {
        const auto signs = j.at("signs").get<std::vector<double>>();
        if (signs.size() != w.size()) throw ContractViolation("signs and weights differ in length");
        for (std::size_t i = 0; i < w.size(); ++i) atoms.push_back({{signs[i] > 0 ? 1.0 : -1.0, 0.0}, w[i]});
      } else {
        const auto ang = j.at("angles").get<std::vector<double>>();
        if (ang.size() != w.size()) throw ContractViolation("angles and weights differ in length");
        for (std::size_t i = 0; i < w.size(); ++i) atoms.push_back(SphericalMeasure::at_angle(ang[i], w[i]));
      }
      return SphericalMeasure::atomic(N, std::move(atoms));
    }
    if (variant == "mixture") {
      std::vector<MixtureComponent> parts;
      for (const auto& p : j.at("parts")) parts.push_back({p.at("coefficient").get<double>(), measure_from_json(p.at("measure"))});
      return SphericalMeasure::mixture(std::move(parts));
    }
    throw ContractViolation("unknown measure variant '" + variant + "' (uniform, atomic, mixture)");
  });
}

Json to_json(const MeasureFamily& family) {
  Json pieces = Json::array();
  for (const auto& p : family.pieces()) pieces.push_back(to_json(p));
  return {{"breakpoints", family.breakpoints()}, {"pieces", pieces}, {"tail", to_json(family.tail())}};
}

MeasureFamily family_from_json(const Json& j) {
  return guarded("family", [&]() -> MeasureFamily {
    if (j.contains("variant")) return MeasureFamily::constant(measure_from_json(j));
    std::vector<double> breaks = j.value("breakpoints", std::vector<double>{});
    std::vector<SphericalMeasure> pieces;
    if (j.contains("pieces"))
      for (const auto& p : j.at("pieces")) pieces.push_back(measure_from_json(p));
    const int N = !pieces.empty() ? pieces.front().dimension() : j.value("dimension", 1);
    SphericalMeasure tail = j.contains("tail") ? measure_from_json(j.at("tail")) : SphericalMeasure::uniform(N);
    return MeasureFamily(std::move(breaks), std::move(pieces), std::move(tail));
  });
}

Json to_json(const OrderMeasure& mu) {
  auto atoms = [](const OrderPart& p) {
    Json a = Json::array();
    for (const auto& x : p.atoms) a.push_back({x.s, x.weight});
    return a;
  };
  auto dens = [](const OrderPart& p) {
    Json a = Json::array();
    for (const auto& d : p.density) a.push_back({d.a, d.b, d.value});
    return a;
  };
  return {{"pos_atoms", atoms(mu.plus)},
          {"neg_atoms", atoms(mu.minus)},
          {"pos_density", dens(mu.plus)},
          {"neg_density", dens(mu.minus)}};
}

OrderMeasure order_measure_from_json(const Json& j) {
  return guarded("order measure", [&] {
    OrderMeasure mu;
    auto atoms = [&](const char* key, OrderPart& part) {
      if (!j.contains(key)) return;
      for (const auto& a : j.at(key)) {
        if (a.size() != 2) throw ContractViolation(std::string(key) + " entries must be [s, w]");
        part.atoms.push_back({a[0].get<double>(), a[1].get<double>()});
      }
    };
    auto dens = [&](const char* key, OrderPart& part) {
      if (!j.contains(key)) return;
      for (const auto& d : j.at(key)) {
        if (d.size() != 3) throw ContractViolation(std::string(key) + " entries must be [a, b, value]");
        part.density.push_back({d[0].get<double>(), d[1].get<double>(), d[2].get<double>()});
      }
    };
    atoms("pos_atoms", mu.plus);
    atoms("neg_atoms", mu.minus);
    dens("pos_density", mu.plus);
    dens("neg_density", mu.minus);
    check_order_measure(mu);
    return mu;
  });
}

OrderMeasure parse_order_measure(const std::string& text) {
  if (auto j = json_source(text)) return order_measure_from_json(*j);
  OrderMeasure mu;
  if (text.rfind("delta:", 0) == 0) {
    const auto parts = split(text.substr(6), ':');
    if (parts.empty() || parts.size() > 2) throw ContractViolation("expected delta:s or delta:s:w, got '" + text + "'");
    const double s = number(parts[0], text), w = parts.size() == 2 ? number(parts[1], text) : 1.0;
    if (w > 0) mu.add_plus(s, w);
    else mu.add_minus(s, -w);
  } else {
    for (const auto& term : split(text, ',')) {
      const auto at = term.find('@');
      if (at == std::string::npos) throw ContractViolation("expected w@s terms, got '" + term + "'");
      const double w = number(term.substr(0, at), text), s = number(term.substr(at + 1), text);
      if (w > 0) mu.add_plus(s, w);
      else if (w < 0) mu.add_minus(s, -w);
      else throw ContractViolation("zero weight in '" + text + "'");
    }
  }
  check_order_measure(mu);
  return mu;
}

SphericalMeasure parse_spherical_measure(const std::string& text) {
  if (text.rfind("uniform:", 0) == 0) {
    const double N = number(text.substr(8), text);
    return SphericalMeasure::uniform(static_cast<int>(N));
  }
  if (text.rfind("angle:", 0) == 0)
    return SphericalMeasure::atomic(2, {SphericalMeasure::at_angle(number(text.substr(6), text), 1.0)});
  if (auto j = json_source(text)) return measure_from_json(*j);
  throw ContractViolation("unknown measure '" + text + "' (uniform:N, angle:phi, JSON, or file)");
}

MeasureFamily parse_family(const std::string& text) {
  if (text.rfind("uniform:", 0) == 0 || text.rfind("angle:", 0) == 0)
    return MeasureFamily::constant(parse_spherical_measure(text));
  if (auto j = json_source(text)) return family_from_json(*j);
  throw ContractViolation("unknown family '" + text + "'");
}

std::uint64_t config_hash(const Json& config) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace mixlab
