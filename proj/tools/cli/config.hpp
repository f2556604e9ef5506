#pragma once

#include "ddff/mc_oracle.hpp"
#include "ddff/noise.hpp"
#include "ddff/sequence.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ddff::cli {

using nlohmann::json;

// Numbers, or the strings "inf" / "-inf".
double number(const json& j);
double number_or(const json& obj, const std::string& key, double fallback);
int integer_or(const json& obj, const std::string& key, int fallback);
const json& require(const json& obj, const std::string& key);

// Sequence spec: {"family", "order" | "orders", "block", "qubits", "qubit",
// "parts", "pulses", "T" | "tau_min", "repeat"}.
PulseSequence parse_sequence(const json& spec);

// One noise process: classical (coupling to the listed channels, all fully
// correlated) or a spin-boson bath.
struct ClassicalProcess {
  std::vector<Channel> channels;
  ClassicalPSD psd;
};

struct NoiseConfig {
  std::vector<ClassicalProcess> processes;
  std::optional<SpinBoson> bath;
  std::vector<StaticOffset> offsets;

  NoiseModel model() const;
  std::vector<McSource> mc_sources() const;
};

// Reads "spectrum" (object or array) and "offsets" from the config root.
NoiseConfig parse_noise(const json& root, int num_qubits);

// {"min", "max", "points", "scale": "log" | "linear"} or an explicit array.
std::vector<double> parse_grid(const json& spec);

// Explicit repetition list or {"max": M} for the doubling grid.
std::vector<int> parse_repetitions(const json& spec);

std::string channel_label(Channel c);

}  // namespace ddff::cli
