#pragma once

// File formats.
//
//  signal  : little-endian uint64 length L, then L interleaved (re, im) float64 pairs
//  pulses  : <stem>.g.bin and <stem>.gamma.bin signals plus a <stem>.json sidecar
//  JSON    : scattering masses, channel realizations, climb traces, bound records

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "pulsekit/bounds.hpp"
#include "pulsekit/gabor.hpp"
#include "pulsekit/optim.hpp"
#include "pulsekit/wssus.hpp"

namespace pulsekit::io {

using json = nlohmann::json;

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_signal(const std::filesystem::path& path, const Signal& x);
Signal read_signal(const std::filesystem::path& path);

struct PulseFile {
    PulsePair pair;
    Lattice lattice;
    std::string constructor;
    json params = json::object();
};
void write_pulses(const std::filesystem::path& stem, const PulseFile& file);
PulseFile read_pulses(const std::filesystem::path& stem);

json to_json(const ScatteringMass& C);
ScatteringMass mass_from_json(const json& j);

json to_json(const ChannelRealization& h);
ChannelRealization channel_from_json(const json& j);

json trace_json(const std::string& method, const ClimbTrace& trace, std::uint64_t seed, const json& params);

json bounds_json(double area, double density, double noise_var);

void write_json(const std::filesystem::path& path, const json& j);
json read_json(const std::filesystem::path& path);

} // namespace pulsekit::io
