#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "spde/harness.hpp"

namespace spde {

using json = nlohmann::json;

/// {dimension, cutoff, coefficients: interleaved re/im, row-major}.
json field_to_json(const SpectralField& u);
SpectralField field_from_json(const json& j);

/// Flat binary record: magic, dimension, cutoff, interleaved doubles.
void write_field_binary(const SpectralField& u, const std::string& path);
SpectralField read_field_binary(const std::string& path);

json scalar_function_to_json(const ScalarFunction& f);
ScalarFunction scalar_function_from_json(const json& j);

json moment_report_to_json(const MomentReport& r);
json scaling_study_to_json(const ScalingStudy& s);
json galerkin_to_json(const GalerkinMatrix& g);

/// Parse the experiment configuration; the raw text and its hash are echoed
/// into the returned config for provenance.
ExperimentConfig parse_experiment_config(const json& j);
ExperimentConfig load_experiment_config(const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(std::uint64_t h);

}  // namespace spde
