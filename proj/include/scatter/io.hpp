#pragma once

#include <optional>
#include <string>

#include "scatter/duality.hpp"

namespace scatter::io {

// All writers are deterministic: 17-significant-digit floats, '#' comment
// headers carrying the config hash and artifact version.

extern const char* kVersion;

std::string format_double(double v);  // %.17g

void write_sweep_csv(const std::string& path, const duality::PhaseCurve& curve,
                     const std::string& config_hash);

void write_detections_json(const std::string& path,
                           const std::vector<duality::Detection>& detections,
                           const std::string& config_hash);

void write_residual_csv(const std::string& path,
                        const std::vector<double>& alphas,
                        const std::vector<double>& surrogate,
                        const std::vector<double>& data,
                        const std::string& config_hash);

void write_density_table(const std::string& path,
                         const std::vector<double>& alphas,
                         const std::vector<potentials::DensityVec>& psis,
                         const std::string& config_hash);

// Minimal static plot: lambda vs psi polyline with detection markers.
void write_sweep_svg(const std::string& path, const duality::PhaseCurve& curve,
                     const std::vector<duality::Detection>& detections);

// Near-field matrix cache, one file per (config hash, lambda, route):
// magic "NFD1", then little-endian u32 rows, u32 cols, f64 lambda, u8 route,
// row-major interleaved f64 (re, im). Writes are write-temp-then-rename.
std::string cache_file_name(const std::string& config_hash, double lambda,
                            nearfield::Route route);
void write_matrix_cache(const std::string& path,
                        const nearfield::NearFieldMatrix& nf);
std::optional<nearfield::NearFieldMatrix> read_matrix_cache(
    const std::string& path, double lambda, nearfield::Route route);

}  // namespace scatter::io
