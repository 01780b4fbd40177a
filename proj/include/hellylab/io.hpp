#pragma once

#include <string>

#include <json.hpp>

#include "hellylab/concept_class.hpp"
#include "hellylab/parameters.hpp"
#include "hellylab/simulation.hpp"

namespace hellylab {

using json = nlohmann::json;

// Round to 12 significant digits so serialized results are byte-stable.
double round_sig(double value, int digits = 12);
json json_number(double value);

json class_to_json(const ConceptClass& cls);
ConceptClass class_from_json(const json& j);
ConceptClass load_class(const std::string& path);
void save_json(const json& j, const std::string& path);
json load_json(const std::string& path);

json sample_to_json(const LabeledSample& sample);
LabeledSample sample_from_json(const json& j);

json report_to_json(const ParameterReport& report);
json experiment_result_to_json(const ExperimentResult& result);
json wilson_to_json(const WilsonInterval& w);

// FNV-1a 64-bit digest of a file's bytes, as hex.
std::string file_digest(const std::string& path);

// Run metadata written as a sidecar next to every result file.
struct RunManifest {
    std::string command_line;
    std::uint64_t master_seed = 0;
    std::string tool_version;
    std::vector<std::pair<std::string, std::string>> input_digests;
    double duration_seconds = 0;
};

json manifest_to_json(const RunManifest& manifest);

extern const char* const kToolVersion;

}  // namespace hellylab
