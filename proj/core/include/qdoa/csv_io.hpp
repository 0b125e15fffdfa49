#ifndef QDOA_CSV_IO_HPP
#define QDOA_CSV_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qdoa/experiment_config.hpp"
#include "qdoa/sweeps.hpp"

namespace qdoa {

inline constexpr std::string_view kSweepCsvHeader =
    "sweep_var,b,estimator,rmse_deg,crlb_sqrt_deg,eta_db,trials,failures";

// Optional '#'-prefixed config echo, then the header, then one row per line.
// LF line endings; floats use the shortest exact round-trip form.
std::string sweep_to_csv(const SweepResult& result, const ExperimentConfig* echo = nullptr);

// Inverse of sweep_to_csv. Comment lines are skipped. Throws
// std::invalid_argument on a wrong header or malformed row.
SweepResult parse_sweep_csv(std::string_view text);

std::string spectrum_to_csv(const std::vector<SpectrumPoint>& points,
                            const ExperimentConfig* echo = nullptr);
std::string crlb_table_to_csv(const std::vector<CrlbRow>& rows,
                              const ExperimentConfig* echo = nullptr);

// Writes `content` to `path` ("-" writes to stdout). Throws IoError naming
// the path on failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);

void emit_csv(const SweepResult& result, const std::filesystem::path& path,
              const ExperimentConfig* echo = nullptr);

}  // namespace qdoa

#endif  // QDOA_CSV_IO_HPP
