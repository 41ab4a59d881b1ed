#include "quadrm/io.hpp"

#include <sstream>

#include "quadrm/error.hpp"

namespace quadrm {

nlohmann::ordered_json to_json(const CensusTable& table) {
  nlohmann::ordered_json j;
  j["q"] = table.q;
  j["m"] = table.m;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [key, count] : table.entries) {
    entries.push_back({{"rank", key.rank}, {"type", to_string(key.kind)}, {"count", to_decimal(count)}});
  }
  j["entries"] = std::move(entries);
  return j;
}

nlohmann::ordered_json to_json(const CosetQuery& query, const SpectrumMultiset& spectrum) {
  nlohmann::ordered_json j;
  j["q"] = query.q;
  j["m"] = query.m;
  j["rank"] = query.rank_type.rank;
  j["type"] = to_string(query.rank_type.type);
  j["c_class"] = to_string(query.c_class);
  j["population"] = to_decimal(spectrum.population());
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [value, mult] : spectrum.entries()) {
    entries.push_back({{"value", to_decimal(value)}, {"multiplicity", to_decimal(mult)}});
  }
  j["entries"] = std::move(entries);
  return j;
}

nlohmann::ordered_json to_json(const WeightDistribution& wd) {
  nlohmann::ordered_json j;
  j["family"] = to_string(wd.family);
  j["q"] = wd.q;
  j["m"] = wd.m;
  j["n"] = wd.params.n;
  j["k"] = wd.params.k;
  j["d"] = wd.params.d;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& [w, a] : wd.entries) rows.push_back({{"weight", w}, {"frequency", to_decimal(a)}});
  j["distribution"] = std::move(rows);
  return j;
}

std::string to_csv(const WeightDistribution& wd) {
  std::ostringstream os;
  os << "weight,frequency\n";
  for (const auto& [w, a] : wd.entries) os << w << ',' << a << '\n';
  return os.str();
}

WeightDistribution distribution_from_json(const nlohmann::json& j) {
  try {
    WeightDistribution wd;
    wd.family = parse_code_family(j.at("family").get<std::string>());
    wd.q = j.at("q").get<std::uint64_t>();
    wd.m = j.at("m").get<unsigned>();
    wd.params = {j.at("n").get<std::uint64_t>(), j.at("k").get<std::uint64_t>(), j.at("d").get<std::uint64_t>()};
    for (const auto& row : j.at("distribution")) {
      wd.entries[row.at("weight").get<std::uint64_t>()] = parse_decimal(row.at("frequency").get<std::string>());
    }
    return wd;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed distribution JSON: ") + e.what());
  }
}

}  // namespace quadrm
