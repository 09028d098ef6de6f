#include "fpnn/trace_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "fpnn/errors.hpp"
#include "text_util.hpp"

namespace fpnn::ga {

void write_trace_csv(const std::filesystem::path& path,
                     const TrainingTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write trace file: " + path.string());
  }
  std::ostringstream body;
  body << kTraceCsvHeader << '\n';
  for (const auto& rec : trace) {
    body << rec.generation << ',' << detail::format_double(rec.best_error)
         << ',' << detail::format_double(rec.mean_error) << ','
         << detail::format_double(rec.best_fitness) << ','
         << detail::format_double(rec.temperature) << ',' << rec.sa_accepts
         << '\n';
  }
  out << body.str();
  if (!out) {
    throw ValidationError("failed while writing " + path.string());
  }
}

TrainingTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open trace file: " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) ||
      detail::trim(line) != std::string_view(kTraceCsvHeader)) {
    throw ValidationError("trace file " + path.string() +
                          " does not start with the expected header");
  }
  TrainingTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_fields(line);
    if (fields.size() != 6) {
      throw ValidationError("trace line " + std::to_string(line_no) +
                            ": expected 6 fields");
    }
    GenerationRecord rec;
    const auto gen = detail::parse_double(fields[0]);
    const auto best = detail::parse_double(fields[1]);
    const auto mean = detail::parse_double(fields[2]);
    const auto fit = detail::parse_double(fields[3]);
    const auto temp = detail::parse_double(fields[4]);
    const auto accepts = detail::parse_double(fields[5]);
    if (!gen || !best || !mean || !fit || !temp || !accepts) {
      throw ValidationError("trace line " + std::to_string(line_no) +
                            ": non-numeric field");
    }
    rec.generation = static_cast<std::size_t>(*gen);
    rec.best_error = *best;
    rec.mean_error = *mean;
    rec.best_fitness = *fit;
    rec.temperature = *temp;
    rec.sa_accepts = static_cast<std::size_t>(*accepts);
    trace.push_back(rec);
  }
  return trace;
}

}  // namespace fpnn::ga
