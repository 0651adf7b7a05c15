#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cddo/harness.hpp"

namespace cddo::report {

enum class Format { Csv, Json };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scientific notation with 17 significant digits; parses back exactly.
std::string format_double(double value);

// Summary schema: function,avg,stddev,best,worst
void write_summary(std::ostream& out, std::span<const harness::SummaryRow> rows, Format format);

// Convergence schema: iteration,best_fitness (iteration is 1-based)
void write_convergence(std::ostream& out, std::span<const double> trace, Format format);

void write_rank_table(std::ostream& out, const harness::RankTable& table, Format format);

/// Human-readable rendering of a rank table.
void print_rank_table(std::ostream& out, const harness::RankTable& table);

/// File variants throw IoError when the path cannot be written.
void write_summary_file(const std::string& path, std::span<const harness::SummaryRow> rows,
                        Format format);
void write_convergence_file(const std::string& path, std::span<const double> trace,
                            Format format);

/// Minimal summary record read back from a summary CSV; only the function
/// and avg columns are required.
struct SummaryRecord {
    suite::FunctionId function_id;
    double avg;
};

std::vector<SummaryRecord> parse_summary_csv(std::istream& in);
std::vector<SummaryRecord> read_summary_csv(const std::string& path);

}  // namespace cddo::report
