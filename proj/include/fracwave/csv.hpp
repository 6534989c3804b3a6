#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fracwave/attenuation_lab.hpp"
#include "fracwave/burgers_models.hpp"
#include "fracwave/dispersion.hpp"
#include "fracwave/wave_models.hpp"

// Deterministic CSV emission: 17 significant digits, '.' decimal separator,
// '\n' line endings, a '#'-prefixed metadata block first. Identical inputs
// produce byte-identical files.

namespace fracwave::csv {

using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string g17(double v);

/// "# key=value\n" lines.
std::string metadata_block(const Metadata& meta);

std::string dispersion_csv(const Metadata& meta,
                           const std::vector<DispersionPoint>& points,
                           const PowerLawFit* fit, const std::string& fit_error);

std::string traces_csv(const Metadata& meta, const ProbeTraces& traces);

std::string burgers_csv(const Metadata& meta, const BurgersRun& run);

std::string experiment_csv(const Metadata& meta, const ExperimentResult& res);

std::string sweep_csv(const Metadata& meta, const std::vector<SweepRow>& rows);

std::string matrix_csv(const Metadata& meta, const std::vector<double>& m,
                       std::size_t n);

std::string report_csv(const Metadata& meta,
                       const std::vector<std::pair<std::string, double>>& rows);

void write_file(const std::string& path, const std::string& content);

}  // namespace fracwave::csv
