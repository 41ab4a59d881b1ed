#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "quadrm/census.hpp"
#include "quadrm/code_distributions.hpp"
#include "quadrm/coset_spectra.hpp"

namespace quadrm {

// Big counts are written as decimal strings; small parameters as numbers.

nlohmann::ordered_json to_json(const CensusTable& table);
nlohmann::ordered_json to_json(const CosetQuery& query, const SpectrumMultiset& spectrum);
nlohmann::ordered_json to_json(const WeightDistribution& wd);

/// Header `weight,frequency`, ascending weights, one row per line.
std::string to_csv(const WeightDistribution& wd);

/// Inverse of to_json for distributions; throws ParseError.
WeightDistribution distribution_from_json(const nlohmann::json& j);

}  // namespace quadrm
