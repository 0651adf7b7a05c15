#include "cddo/report.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/core.h>
#include <fmt/ostream.h>
#include <json.hpp>

namespace cddo::report {

using harness::RankTable;
using harness::SummaryRow;
using nlohmann::ordered_json;

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return fmt::format("{:.16e}", value);
}

namespace {

// JSON has no infinity; non-finite values are written as strings.
ordered_json json_number(double value) {
    if (std::isfinite(value)) return value;
    return format_double(value);
}

template <class Writer>
void write_file(const std::string& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
    writer(out);
    out.flush();
    if (!out) throw IoError(fmt::format("failed writing '{}'", path));
}

}  // namespace

void write_summary(std::ostream& out, std::span<const SummaryRow> rows, Format format) {
    if (format == Format::Csv) {
        out << "function,avg,stddev,best,worst\n";
        for (const auto& r : rows) {
            out << suite::to_string(r.function_id) << ',' << format_double(r.avg) << ','
                << format_double(r.stddev) << ',' << format_double(r.best) << ','
                << format_double(r.worst) << '\n';
        }
        return;
    }
    ordered_json doc = ordered_json::array();
    for (const auto& r : rows) {
        doc.push_back({{"function", suite::to_string(r.function_id)},
                       {"avg", json_number(r.avg)},
                       {"stddev", json_number(r.stddev)},
                       {"best", json_number(r.best)},
                       {"worst", json_number(r.worst)}});
    }
    out << doc.dump(2) << '\n';
}

void write_convergence(std::ostream& out, std::span<const double> trace, Format format) {
    if (format == Format::Csv) {
        out << "iteration,best_fitness\n";
        for (std::size_t t = 0; t < trace.size(); ++t) {
            out << (t + 1) << ',' << format_double(trace[t]) << '\n';
        }
        return;
    }
    ordered_json doc = ordered_json::array();
    for (std::size_t t = 0; t < trace.size(); ++t) {
        doc.push_back({{"iteration", t + 1}, {"best_fitness", json_number(trace[t])}});
    }
    out << doc.dump(2) << '\n';
}

void write_rank_table(std::ostream& out, const RankTable& table, Format format) {
    if (format == Format::Csv) {
        out << "function,rank,ordering\n";
        for (const auto& f : table.per_function) {
            std::string ordering;
            for (std::size_t i = 0; i < f.tiers.size(); ++i) {
                if (i) ordering += ' ';
                for (std::size_t j = 0; j < f.tiers[i].size(); ++j) {
                    if (j) ordering += '|';
                    ordering += f.tiers[i][j];
                }
            }
            out << suite::to_string(f.function_id) << ',' << f.ranks.at(table.target) << ','
                << ordering << '\n';
        }
        for (const auto& s : table.subtotals) {
            out << s.label << ',' << fmt::format("{:.4f}", s.value()) << ",sum=" << s.rank_sum
                << " count=" << s.count << '\n';
        }
        out << "Overall," << fmt::format("{:.4f}", table.overall.value())
            << ",sum=" << table.overall.rank_sum << " count=" << table.overall.count << '\n';
        return;
    }
    auto subtotal_json = [](const harness::RankSubtotal& s) {
        return ordered_json{{"label", s.label},
                            {"rank_sum", s.rank_sum},
                            {"count", s.count},
                            {"value", s.value()}};
    };
    ordered_json doc;
    doc["target"] = table.target;
    doc["functions"] = ordered_json::array();
    for (const auto& f : table.per_function) {
        doc["functions"].push_back({{"function", suite::to_string(f.function_id)},
                                    {"rank", f.ranks.at(table.target)},
                                    {"tiers", f.tiers}});
    }
    doc["subtotals"] = ordered_json::array();
    for (const auto& s : table.subtotals) doc["subtotals"].push_back(subtotal_json(s));
    doc["overall"] = subtotal_json(table.overall);
    out << doc.dump(2) << '\n';
}

void print_rank_table(std::ostream& out, const RankTable& table) {
    fmt::print(out, "{:<6} {:>4}  {}\n", "Func", "Rank", "Ordering (best first)");
    for (const auto& f : table.per_function) {
        std::string ordering;
        for (std::size_t i = 0; i < f.tiers.size(); ++i) {
            if (i) ordering += "  ";
            for (std::size_t j = 0; j < f.tiers[i].size(); ++j) {
                if (j) ordering += ',';
                ordering += f.tiers[i][j];
            }
        }
        fmt::print(out, "{:<6} {:>4}  {}\n", suite::to_string(f.function_id),
                   f.ranks.at(table.target), ordering);
    }
    for (const auto& s : table.subtotals) {
        fmt::print(out, "{}: {}/{}={:.4f}\n", s.label, s.rank_sum, s.count, s.value());
    }
    fmt::print(out, "Overall rank of {}: {}/{}={:.4f}\n", table.target, table.overall.rank_sum,
               table.overall.count, table.overall.value());
}

void write_summary_file(const std::string& path, std::span<const SummaryRow> rows,
                        Format format) {
    write_file(path, [&](std::ostream& out) { write_summary(out, rows, format); });
}

void write_convergence_file(const std::string& path, std::span<const double> trace,
                            Format format) {
    write_file(path, [&](std::ostream& out) { write_convergence(out, trace, format); });
}

std::vector<SummaryRecord> parse_summary_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw harness::InputError("summary file is empty");

    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        for (std::string cell; std::getline(ss, cell, ',');) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
            while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
            cells.push_back(cell);
        }
        return cells;
    };

    const auto header = split(line);
    std::size_t fn_col = header.size();
    std::size_t avg_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "function") fn_col = i;
        if (header[i] == "avg") avg_col = i;
    }
    if (fn_col == header.size() || avg_col == header.size()) {
        throw harness::InputError("summary header must contain 'function' and 'avg' columns");
    }

    std::vector<SummaryRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split(line);
        if (cells.size() <= std::max(fn_col, avg_col)) {
            throw harness::InputError(fmt::format("summary line {}: too few columns", line_no));
        }
        SummaryRecord rec{suite::FunctionId::F1, 0.0};
        try {
            rec.function_id = suite::parse_function_id(cells[fn_col]);
            const auto avg = parse_real(cells[avg_col]);
            if (!avg) throw std::invalid_argument(fmt::format("bad avg '{}'", cells[avg_col]));
            rec.avg = *avg;
        } catch (const std::exception& e) {
            throw harness::InputError(fmt::format("summary line {}: {}", line_no, e.what()));
        }
        out.push_back(rec);
    }
    return out;
}

std::vector<SummaryRecord> read_summary_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path));
    return parse_summary_csv(in);
}

}  // namespace cddo::report
