#pragma once

#include <string>

#include "pwmotion/euclid.hpp"
#include "pwmotion/grid.hpp"
#include "pwmotion/motion_group.hpp"

namespace pwmotion {

/// Shortest round-trippable decimal rendering (printf %.17g), used for every
/// number in artifacts so repeated runs are byte-identical.
std::string format_double(double v);

/// Each artifact is a pair <base>.json + <base>.csv: a self-describing JSON
/// header (kind, grid geometry, conventions, payload file name) and a CSV
/// payload holding indices and values. JSON keys are emitted in sorted
/// order and numbers through format_double, making files deterministic.
void save_sampled_function(const SampledFunction& f, const std::string& base_path);
SampledFunction load_sampled_function(const std::string& base_path);

void save_spectrum(const Spectrum& F, const std::string& base_path);
Spectrum load_spectrum(const std::string& base_path);

void save_sinogram(const Sinogram& s, const std::string& base_path);
Sinogram load_sinogram(const std::string& base_path);

void save_motion_function(const MotionGroupFunction& f, const std::string& base_path);
MotionGroupFunction load_motion_function(const std::string& base_path);

void save_group_matrix(const GroupFourierMatrix& m, const std::string& base_path);
GroupFourierMatrix load_group_matrix(const std::string& base_path);

}  // namespace pwmotion
