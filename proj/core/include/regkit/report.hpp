#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "regkit/config.hpp"
#include "regkit/construction.hpp"
#include "regkit/counting.hpp"
#include "regkit/perturb.hpp"
#include "regkit/potential.hpp"
#include "regkit/regularity.hpp"
#include "regkit/sral.hpp"
#include "regkit/weak_regularizer.hpp"

namespace regkit {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

// Reproducibility header. The worker count is deliberately left out so that
// reports do not depend on it.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> flags;  // every parsed option, canonical text
  std::map<std::string, std::string> paths;  // inputs and outputs
  SearchConfig search;
};

Json rational_json(const Rational& r);
Json to_json(const RunConfig& rc);
Json to_json(const SearchConfig& cfg);
Json to_json(const SubsetPair& w);
Json to_json(const PairVerdict& v);
Json to_json(const PartitionVerdict& v);
Json to_json(const WeakVerdict& v);
Json to_json(const QuasiVerdict& v);
Json to_json(const PairFactsReport& r);
Json to_json(const PotentialReport& r);
Json to_json(const WeakRegRun& run);
Json to_json(const PerturbOutcome& o);
Json to_json(const SralResult& r);
Json to_json(const ClaimsReport& r);
Json to_json(const ExperimentReport& r);
Json to_json(const CountingBandVerdict& v);
Json to_json(const ApproxCountingVerdict& v);
Json to_json(const BalancedWeightsVerdict& v);
Json sequence_summary(const BipartitionSequence& s);
Json to_json(const ConstructionParams& p);

// {"schema": 1, "check": ..., "run": ..., "result": ...}
Json envelope(const std::string& check, const RunConfig& rc, Json result);

// dump(2) plus a trailing newline.
std::string render(const Json& j);
void write_json(const std::string& path, const Json& j);

}  // namespace regkit
