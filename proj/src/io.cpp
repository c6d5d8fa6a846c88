#include "fracwave/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fracwave/spectral.hpp"

namespace fracwave::io {

namespace {

using nlohmann::json;

json sidecar_body(const Field& field, const char* format) {
    return json{{"dim", field.grid.dim},
                {"n", field.grid.points_per_axis},
                {"L", field.grid.box_length},
                {"format", format}};
}

Grid sidecar_grid(const std::filesystem::path& data_path, std::string* format_out) {
    const std::filesystem::path sidecar = data_path.string() + ".json";
    std::ifstream in(sidecar);
    if (!in)
        throw Error("field sidecar missing: " + sidecar.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error("field sidecar " + sidecar.string() + ": " + e.what());
    }
    if (!doc.contains("dim") || !doc.contains("n") || !doc.contains("L"))
        throw Error("field sidecar " + sidecar.string() + ": needs dim, n, L");
    if (format_out) *format_out = doc.value("format", "csv");
    return make_grid(doc["dim"].get<int>(), doc["n"].get<int>(), doc["L"].get<double>());
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& body) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << body;
    }
    std::filesystem::rename(tmp, path);
}

void write_field_csv(const std::filesystem::path& path, const Field& field) {
    field.require_finite("write_field_csv");
    std::string body;
    body.reserve(field.size() * 20);
    for (double v : field.samples) {
        body += format_double(v);
        body += '\n';
    }
    write_text_atomic(path, body);
    write_text_atomic(path.string() + ".json", sidecar_body(field, "csv").dump(2) + "\n");
}

Field read_field_csv(const std::filesystem::path& path) {
    const Grid grid = sidecar_grid(path, nullptr);
    std::ifstream in(path);
    if (!in) throw Error("field file missing: " + path.string());

    std::vector<double> samples;
    samples.reserve(grid.point_count());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        samples.push_back(std::stod(line));
    }
    if (samples.size() != grid.point_count())
        throw Error("field file " + path.string() + ": got " +
                    std::to_string(samples.size()) + " samples, sidecar grid needs " +
                    std::to_string(grid.point_count()));
    Field f(grid, std::move(samples));
    f.require_finite("read_field_csv");
    return f;
}

void write_field_binary(const std::filesystem::path& path, const Field& field) {
    field.require_finite("write_field_binary");
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(reinterpret_cast<const char*>(field.samples.data()),
                  static_cast<std::streamsize>(field.samples.size() * sizeof(double)));
    }
    std::filesystem::rename(tmp, path);
    write_text_atomic(path.string() + ".json",
                      sidecar_body(field, "binary").dump(2) + "\n");
}

Field read_field_binary(const std::filesystem::path& path) {
    const Grid grid = sidecar_grid(path, nullptr);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("field file missing: " + path.string());
    std::vector<double> samples(grid.point_count());
    in.read(reinterpret_cast<char*>(samples.data()),
            static_cast<std::streamsize>(samples.size() * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != samples.size() * sizeof(double))
        throw Error("field file " + path.string() + ": truncated");
    Field f(grid, std::move(samples));
    f.require_finite("read_field_binary");
    return f;
}

Field read_field(const std::filesystem::path& path) {
    std::string format;
    sidecar_grid(path, &format);
    return format == "binary" ? read_field_binary(path) : read_field_csv(path);
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const std::vector<evolve::StateSnapshot>& trajectory,
                          const evolve::EnergyReport& report,
                          const evolve::ProblemSpec& problem) {
    CsvWriter csv({"t", "l2_u", "l2_half_lap_u", "l2_ut", "energy",
                   "dissipation_residual"});
    const double s = problem.order.s;
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        const auto& snap = trajectory[k];
        std::vector<std::string> row;
        row.push_back(format_double(snap.t));
        row.push_back(format_double(spectral::l2_norm(snap.u)));
        row.push_back(format_double(
            spectral::l2_norm(spectral::frac_laplacian(snap.u, s / 2.0))));
        row.push_back(format_double(spectral::l2_norm(snap.ut)));
        row.push_back(format_double(report.energy[k]));
        row.push_back(k < report.dissipation_residual.size()
                          ? format_double(report.dissipation_residual[k])
                          : "");
        csv.add_row(row);
    }
    csv.write(path);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    rows_.push_back(std::move(cells));
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    rows_.push_back(cells);
}

std::string CsvWriter::body() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header_.size(); ++i)
        out << (i ? "," : "") << header_[i];
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << '\n';
    }
    return out.str();
}

void CsvWriter::write(const std::filesystem::path& path) const {
    write_text_atomic(path, body());
}

} // namespace fracwave::io
