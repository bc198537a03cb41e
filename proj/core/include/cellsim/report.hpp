#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cellsim/association.hpp"
#include "cellsim/config.hpp"
#include "cellsim/experiment.hpp"
#include "cellsim/geometry.hpp"

namespace cellsim {

// One aggregate per row: swept_value, policy, sigma_s_dB, mean_rate,
// mean_rate_se, tx_capacity, cell_edge_mean, denial_fraction, n_trials.
void write_results_csv(const std::filesystem::path& path,
                       const std::vector<SweepPoint>& points);

// Rate ccdf rows: policy, K_over_M, r, ccdf.
void write_ccdf_csv(const std::filesystem::path& path,
                    const std::vector<SweepPoint>& points);

// One realization with its assignment: kind, index, x, y, serving. Indices
// are 1-based within each kind; a mobile's serving field is its station's
// index or 0 when denied, and is empty on station rows.
void write_snapshot_csv(const std::filesystem::path& path, const NetworkRealization& net,
                        const Assignment& assignment);

std::uint64_t fnv1a64(const void* data, std::size_t size);

// Flat key = value manifest: format marker, software version, subcommand,
// the resolved configuration (reproduces the run byte for byte when fed
// back in), and size plus checksum of every output file. Deliberately free
// of timestamps so reruns match exactly.
void write_manifest(const std::filesystem::path& path, const std::string& subcommand,
                    const ExperimentConfig& cfg,
                    const std::vector<std::filesystem::path>& outputs);

}  // namespace cellsim
