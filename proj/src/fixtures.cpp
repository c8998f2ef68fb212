#include "fltz/fixtures.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fltz {

using nlohmann::json;

FanPtr projective_space_fan(int n) {
  if (n < 1) throw Error("projective_space_fan: n >= 1 required");
  IMat rays;
  for (int i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(IVec(n, -1));
  std::vector<ConeKey> max;
  for (int skip = 0; skip <= n; ++skip) {
    ConeKey c;
    for (int i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    max.push_back(c);
  }
  return Fan::build(n, rays, max);
}

FanPtr fixture_fan(const std::string& name) {
  if (name == "p1") return projective_space_fan(1);
  if (name == "p2") return projective_space_fan(2);
  if (name == "p3") return projective_space_fan(3);
  if (name.rfind("pn:", 0) == 0) return projective_space_fan(std::stoi(name.substr(3)));
  if (name == "p1xp1") {
    IMat rays = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return Fan::build(2, rays, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  }
  if (name == "blp2") {
    IMat rays = {{1, 0}, {0, 1}, {1, 1}, {-1, -1}};
    return Fan::build(2, rays, {{0, 2}, {1, 2}, {1, 3}, {3, 0}});
  }
  if (name == "c3bl") {
    IMat rays = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
    return Fan::build(3, rays, {{0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  }
  throw Error("unknown fixture: " + name);
}

FanPtr fan_from_json_text(const std::string& text) {
  json j = json::parse(text);
  int rank = j.at("rank").get<int>();
  IMat rays;
  for (const auto& row : j.at("rays")) {
    IVec r;
    for (const auto& x : row) r.push_back(Int(x.get<long long>()));
    rays.push_back(r);
  }
  std::vector<ConeKey> max;
  for (const auto& row : j.at("max_cones")) {
    ConeKey c;
    for (const auto& x : row) c.push_back(x.get<int>());
    max.push_back(c);
  }
  return Fan::build(rank, rays, max);
}

std::string fan_to_json_text(const Fan& fan) {
  json j;
  j["rank"] = fan.rank();
  json rays = json::array();
  for (const auto& r : fan.rays()) {
    json row = json::array();
    for (const auto& x : r) row.push_back(x.convert_to<long long>());
    rays.push_back(row);
  }
  j["rays"] = rays;
  json max = json::array();
  for (const auto& c : fan.max_cones()) max.push_back(c);
  j["max_cones"] = max;
  return j.dump();
}

FanPtr resolve_fan(const std::string& ref) {
  try {
    return fixture_fan(ref);
  } catch (const Error&) {
  }
  std::ifstream in(ref);
  if (!in) throw Error("cannot resolve fan reference: " + ref);
  std::ostringstream ss;
  ss << in.rdbuf();
  return fan_from_json_text(ss.str());
}

}  // namespace fltz
