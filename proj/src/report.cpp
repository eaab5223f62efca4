#include "zsplit/errors.hpp"
#include "zsplit/harness.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace zsplit {

namespace {

namespace fs = std::filesystem;

constexpr const char* kConvergenceHeader = "scheme,tau,error_max,error_l2,wall_seconds";
constexpr const char* kOrdersHeader = "scheme,fitted_order";

std::ofstream open_for_write(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

void finish(std::ofstream& out, const fs::path& path)
{
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

double parse_double(const std::string& text, const fs::path& path)
{
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw std::runtime_error("'" + path.string() + "': malformed number '" + text + "'");
    }
    return value;
}

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

void write_plot_script(const ConvergenceReport& report, const fs::path& path)
{
    auto out = open_for_write(path);
    out << "# gnuplot script: error and CPU time against step size\n"
        << "set datafile separator \",\"\n"
        << "set terminal pngcairo size 1400,600\n"
        << "set output \"convergence.png\"\n"
        << "set multiplot layout 1,2\n"
        << "set logscale xy\n"
        << "set key left top\n"
        << "set xlabel \"tau\"\n"
        << "set format y \"%.0e\"\n";

    auto emit_panel = [&](const char* title, const char* ylabel, int column) {
        out << "set title \"" << title << "\"\n"
            << "set ylabel \"" << ylabel << "\"\n"
            << "plot \\\n";
        for (std::size_t i = 0; i < report.orders.size(); ++i) {
            const std::string& scheme = report.orders[i].scheme;
            out << "  \"convergence.csv\" every ::1 using 2:(strcol(1) eq " << quote(scheme) << " ? $" << column
                << " : 1/0) with linespoints title " << quote(scheme);
            out << (i + 1 < report.orders.size() ? ", \\\n" : "\n");
        }
    };
    emit_panel("Errors", "max-norm error", 3);
    emit_panel("CPU time", "wall seconds", 5);
    out << "unset multiplot\n";
    finish(out, path);
}

} // namespace

std::string format_number(double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void emit_report(const ConvergenceReport& report, const fs::path& out_dir)
{
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create '" + out_dir.string() + "': " + ec.message());
    }

    const fs::path convergence = out_dir / "convergence.csv";
    {
        auto out = open_for_write(convergence);
        out << kConvergenceHeader << '\n';
        for (const auto& row : report.rows) {
            out << row.scheme << ',' << format_number(row.tau) << ',' << format_number(row.error_max) << ','
                << format_number(row.error_l2) << ',' << format_number(row.wall_seconds) << '\n';
        }
        finish(out, convergence);
    }

    const fs::path orders = out_dir / "orders.csv";
    {
        auto out = open_for_write(orders);
        out << kOrdersHeader << '\n';
        for (const auto& entry : report.orders) {
            out << entry.scheme << ',';
            if (entry.fitted_order) {
                out << format_number(*entry.fitted_order);
            }
            out << '\n';
        }
        finish(out, orders);
    }

    const fs::path plot = out_dir / "plot.gp";
    if (report.rows.empty()) {
        fs::remove(plot, ec);
        return;
    }
    write_plot_script(report, plot);
}

ConvergenceReport read_report(const fs::path& out_dir)
{
    ConvergenceReport report;

    const fs::path convergence = out_dir / "convergence.csv";
    std::ifstream in(convergence, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + convergence.string() + "'");
    }
    std::string line;
    if (!std::getline(in, line) || line != kConvergenceHeader) {
        throw std::runtime_error("'" + convergence.string() + "': unexpected header");
    }
    while (std::getline(in, line)) {
        const auto fields = split_fields(line);
        if (fields.size() != 5) {
            throw std::runtime_error("'" + convergence.string() + "': expected 5 fields in '" + line + "'");
        }
        report.rows.push_back({fields[0], parse_double(fields[1], convergence), parse_double(fields[2], convergence),
                               parse_double(fields[3], convergence), parse_double(fields[4], convergence)});
    }

    const fs::path orders = out_dir / "orders.csv";
    std::ifstream oin(orders, std::ios::binary);
    if (!oin) {
        throw std::runtime_error("cannot open '" + orders.string() + "'");
    }
    if (!std::getline(oin, line) || line != kOrdersHeader) {
        throw std::runtime_error("'" + orders.string() + "': unexpected header");
    }
    while (std::getline(oin, line)) {
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            throw std::runtime_error("'" + orders.string() + "': expected 2 fields in '" + line + "'");
        }
        OrderEntry entry{fields[0], std::nullopt};
        if (!fields[1].empty()) {
            entry.fitted_order = parse_double(fields[1], orders);
        }
        report.orders.push_back(std::move(entry));
    }
    return report;
}

} // namespace zsplit
