#include "qdoa/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

namespace qdoa {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::uint64_t parse_count(std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad count field '" + std::string(text) + "'");
  }
  return v;
}

std::string comment_block(const ExperimentConfig* echo) {
  std::string out;
  if (echo) {
    std::istringstream lines(format_config(*echo, false));
    for (std::string line; std::getline(lines, line);) out += "# " + line + '\n';
  }
  return out;
}

}  // namespace

std::string spectrum_to_csv(const std::vector<SpectrumPoint>& points, const ExperimentConfig* echo) {
  std::string out = comment_block(echo);
  out += "theta_deg,pseudospectrum\n";
  for (const auto& p : points) {
    out += format_double(p.theta_deg);
    out += ',';
    out += format_double(p.value);
    out += '\n';
  }
  return out;
}

std::string crlb_table_to_csv(const std::vector<CrlbRow>& rows, const ExperimentConfig* echo) {
  std::string out = comment_block(echo);
  out +=
      "snr_db,b,effective_snr,fim_closed_form,fim_numeric,crlb_rad2,crlb_exact_rad2,"
      "crlb_sqrt_deg,eta_db\n";
  for (const auto& r : rows) {
    for (const std::string& field :
         {format_double(r.snr_db), r.bits.to_string(), format_double(r.effective_snr),
          format_double(r.fim_closed_form), format_double(r.fim_numeric),
          format_double(r.crlb_rad2), format_double(r.crlb_exact_rad2),
          format_double(r.crlb_sqrt_deg)}) {
      out += field;
      out += ',';
    }
    out += format_double(r.eta_db);
    out += '\n';
  }
  return out;
}

std::string sweep_to_csv(const SweepResult& result, const ExperimentConfig* echo) {
  std::string out = comment_block(echo);
  out += kSweepCsvHeader;
  out += '\n';
  for (const SweepRow& r : result.rows) {
    out += format_double(r.sweep_var);
    out += ',';
    out += r.bits.to_string();
    out += ',';
    out += r.estimator;
    out += ',';
    out += format_double(r.rmse_deg);
    out += ',';
    out += format_double(r.crlb_sqrt_deg);
    out += ',';
    out += format_double(r.eta_db);
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += std::to_string(r.failures);
    out += '\n';
  }
  return out;
}

SweepResult parse_sweep_csv(std::string_view text) {
  SweepResult result;
  bool header_seen = false;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kSweepCsvHeader) {
        throw std::invalid_argument("unexpected CSV header '" + std::string(line) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 8) throw std::invalid_argument("CSV row needs 8 fields: '" + std::string(line) + "'");
    SweepRow row;
    row.sweep_var = parse_double(f[0]);
    row.bits = BitDepth::parse(f[1]);
    row.estimator = std::string(f[2]);
    row.rmse_deg = parse_double(f[3]);
    row.crlb_sqrt_deg = parse_double(f[4]);
    row.eta_db = parse_double(f[5]);
    row.trials = parse_count(f[6]);
    row.failures = parse_count(f[7]);
    result.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::invalid_argument("CSV has no header line");
  return result;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path == "-") {
    std::cout.write(content.data(), static_cast<std::streamsize>(content.size()));
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path,
              const ExperimentConfig* echo) {
  write_text_file(path, sweep_to_csv(result, echo));
}

}  // namespace qdoa
