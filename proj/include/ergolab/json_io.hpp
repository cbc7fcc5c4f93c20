#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ergolab/errors.hpp"
#include "ergolab/fberg.hpp"
#include "ergolab/measure.hpp"
#include "ergolab/removal.hpp"
#include "ergolab/stationary.hpp"
#include "ergolab/words.hpp"
#include "ergolab/zd_system.hpp"

namespace ergolab {

using Json = nlohmann::json;

// Input error carrying a JSON path such as $.space.weights[2].
class JsonPathError : public InvalidInput {
 public:
  JsonPathError(std::string path, const std::string& what)
      : InvalidInput(path + ": " + what), path_(std::move(path)), message_(what) {}
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::string message_;
};

Json parse_json_text(const std::string& text);
Json load_json_file(const std::string& file);
// sorted keys, no whitespace
std::string canonical(const Json& j);

Json to_json(const Rational& r);
Json to_json(const ExactProbabilitySpace& s);
Json to_json(const Partition& p);
Json to_json(const Coupling& c);
Json to_json(const FiniteZdSystem& sys);
Json to_json(const SubgroupSpec& g);
Json to_json(const GroupRotationSystem& rot);
Json to_json(const CombinatorialSubspace& s);
Json to_json(const VectorSequence& seq);
Json to_json(const RemovalInstance& inst);
Json to_json(const StationaryLawTruncation& law);
Json to_json(const CorrespondenceMeasure& mu);
Json to_json(const RelIndWitness& w);
Json to_json(const JoiningCheck& c);
Json to_json(const UpSet& u);

Rational rational_from_json(const Json& j, const std::string& path = "$");
ExactProbabilitySpace space_from_json(const Json& j, const std::string& path = "$");
Partition partition_from_json(const Json& j, std::size_t n, const std::string& path = "$");
IndexSet index_set_from_json(const Json& j, std::size_t n, const std::string& path = "$");
// marginals come from "marginals" when present, otherwise from the base space or the mass itself
Coupling coupling_from_json(const Json& j, const ExactProbabilitySpace* base = nullptr,
                            const std::string& path = "$");
FiniteZdSystem system_from_json(const Json& j, const std::string& path = "$");
SubgroupSpec subgroup_from_json(const Json& j, const std::string& path = "$");
GroupRotationSystem rotation_from_json(const Json& j, const std::string& path = "$");
CombinatorialSubspace subspace_from_json(const Json& j, unsigned k, const std::string& path = "$");
VectorSequence sequence_from_json(const Json& j, const std::string& path = "$");
RemovalInstance removal_from_json(const Json& j, const std::string& path = "$");
StationaryLawTruncation law_from_json(const Json& j, const std::string& path = "$");
CorrespondenceMeasure correspondence_from_json(const Json& j, const std::string& path = "$");

// Known schemas: space, partition, coupling, system, subgroup, rotation, subspace,
// sequence, removal, law, correspondence, report. "auto" guesses from the keys.
std::string detect_schema(const Json& j);
void validate_document(const Json& j, const std::string& schema);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace ergolab
