#pragma once

#include <filesystem>
#include <string>

#include "fpnn/ga_sa.hpp"

namespace fpnn::ga {

/// Fixed header of the trace CSV export.
inline constexpr const char* kTraceCsvHeader =
    "generation,best_E,mean_E,best_fitness,temperature,sa_accepts";

/// One CSV row per generation record, numbers at full round-trip precision.
void write_trace_csv(const std::filesystem::path& path,
                     const TrainingTrace& trace);

/// Parses a trace CSV back; rejects files without the exact header.
TrainingTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace fpnn::ga
