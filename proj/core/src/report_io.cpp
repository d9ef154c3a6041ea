#include "filament/report_io.hpp"

#include "filament/version.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace filament {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void append_echo(std::string& out, const ConfigEcho& echo) {
    for (const auto& [key, value] : echo) out += "# " + key + "=" + value + "\n";
}

std::vector<double> parse_csv_row(const std::string& line) {
    std::vector<double> row;
    std::istringstream in(line);
    std::string token;
    while (std::getline(in, token, ',')) row.push_back(std::strtod(token.c_str(), nullptr));
    return row;
}

template <class Traj, class FieldWriter>
std::string trajectory_csv(const Traj& trajectory, const char* kind, int components,
                           const ConfigEcho& echo, const FieldWriter& write_row) {
    if (trajectory.samples.empty()) throw std::invalid_argument("save_trajectory: empty trajectory");
    const auto& grid = [&]() -> decltype(auto) {
        if constexpr (std::is_same_v<Traj, VfeTrajectory>)
            return trajectory.samples.front().v.grid();
        else
            return trajectory.samples.front().q.grid();
    }();

    std::string out;
    out += std::string("# filament-trajectory ") + kFilamentVersion + "\n";
    out += std::string("# kind=") + kind + "\n";
    out += "# L=" + fmt17(grid.length()) + "\n";
    out += "# N=" + std::to_string(grid.cells()) + "\n";
    append_echo(out, echo);

    out += "t";
    static const char* suffix3[3] = {"x", "y", "z"};
    static const char* suffix2[2] = {"re", "im"};
    for (int i = 0; i < grid.nodes(); ++i)
        for (int c = 0; c < components; ++c)
            out += ",node" + std::to_string(i) + "_" + (components == 3 ? suffix3[c] : suffix2[c]);
    out += "\n";

    for (const auto& state : trajectory.samples) write_row(out, state);
    return out;
}

} // namespace

void save_report(const ExperimentReport& report, const std::filesystem::path& path,
                 const ConfigEcho& echo) {
    json j;
    j["name"] = report.name;
    j["version"] = kFilamentVersion;
    j["seed"] = report.seed;
    j["parameters"] = report.parameters;
    j["parameter_lists"] = report.parameter_lists;
    {
        json fitted = json::object();
        for (const auto& [key, constant] : report.fitted_constants)
            fitted[key] = {{"value", constant.value}, {"fitted_on", constant.fitted_on}};
        j["fitted_constants"] = std::move(fitted);
    }
    j["convergence_orders"] = report.convergence_orders;
    j["verdicts"] = report.verdicts;
    {
        json series = json::object();
        for (const auto& [key, table] : report.series)
            series[key] = {{"columns", table.columns}, {"rows", table.rows}};
        j["series"] = std::move(series);
    }
    if (!echo.empty()) j["config_echo"] = echo;
    write_file(path, j.dump(2) + "\n");
}

ExperimentReport load_report(const std::filesystem::path& path) {
    const json j = json::parse(read_file(path));
    ExperimentReport report;
    report.name = j.at("name").get<std::string>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.parameters = j.at("parameters").get<std::map<std::string, double>>();
    report.parameter_lists =
        j.at("parameter_lists").get<std::map<std::string, std::vector<double>>>();
    for (const auto& [key, value] : j.at("fitted_constants").items())
        report.fitted_constants[key] = {value.at("value").get<double>(),
                                        value.at("fitted_on").get<std::string>()};
    report.convergence_orders = j.at("convergence_orders").get<std::map<std::string, double>>();
    report.verdicts = j.at("verdicts").get<std::map<std::string, bool>>();
    for (const auto& [key, value] : j.at("series").items()) {
        Series table;
        table.columns = value.at("columns").get<std::vector<std::string>>();
        table.rows = value.at("rows").get<std::vector<std::vector<double>>>();
        report.series[key] = std::move(table);
    }
    return report;
}

void save_trajectory(const VfeTrajectory& trajectory, const std::filesystem::path& path,
                     const ConfigEcho& echo) {
    const std::string csv =
        trajectory_csv(trajectory, "vfe", 3, echo, [](std::string& out, const VfeState& state) {
            out += fmt17(state.t);
            for (const Vec3& node : state.v.values())
                for (int c = 0; c < 3; ++c) out += "," + fmt17(node[c]);
            out += "\n";
        });
    write_file(path, csv);
}

void save_trajectory(const NlsTrajectory& trajectory, const std::filesystem::path& path,
                     const ConfigEcho& echo) {
    const std::string csv =
        trajectory_csv(trajectory, "nls", 2, echo, [](std::string& out, const NlsState& state) {
            out += fmt17(state.t);
            for (const Complex& node : state.q.values())
                out += "," + fmt17(node.real()) + "," + fmt17(node.imag());
            out += "\n";
        });
    write_file(path, csv);
}

namespace {

struct TrajectoryText {
    double L = 0.0;
    int N = 0;
    std::string kind;
    std::vector<std::vector<double>> rows;
};

TrajectoryText parse_trajectory(const std::filesystem::path& path) {
    TrajectoryText parsed;
    std::istringstream in(read_file(path));
    std::string line;
    bool header_done = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("# kind=", 0) == 0) parsed.kind = line.substr(7);
            if (line.rfind("# L=", 0) == 0) parsed.L = std::strtod(line.c_str() + 4, nullptr);
            if (line.rfind("# N=", 0) == 0) parsed.N = std::atoi(line.c_str() + 4);
            continue;
        }
        if (!header_done) {  // column-name row
            header_done = true;
            continue;
        }
        parsed.rows.push_back(parse_csv_row(line));
    }
    if (parsed.L <= 0.0 || parsed.N < 8 || parsed.rows.empty())
        throw std::runtime_error("malformed trajectory file: " + path.string());
    return parsed;
}

} // namespace

VfeTrajectory load_vfe_trajectory(const std::filesystem::path& path) {
    const TrajectoryText parsed = parse_trajectory(path);
    if (parsed.kind != "vfe") throw std::runtime_error("not a vfe trajectory: " + path.string());
    const Grid grid(parsed.L, parsed.N);
    VfeTrajectory trajectory;
    for (const auto& row : parsed.rows) {
        if (static_cast<int>(row.size()) != 1 + 3 * grid.nodes())
            throw std::runtime_error("bad row width in " + path.string());
        VectorField v(grid);
        for (int i = 0; i < grid.nodes(); ++i)
            v[i] = Vec3(row[1 + 3 * i], row[2 + 3 * i], row[3 + 3 * i]);
        trajectory.samples.push_back({std::move(v), row[0]});
    }
    return trajectory;
}

NlsTrajectory load_nls_trajectory(const std::filesystem::path& path) {
    const TrajectoryText parsed = parse_trajectory(path);
    if (parsed.kind != "nls") throw std::runtime_error("not an nls trajectory: " + path.string());
    const Grid grid(parsed.L, parsed.N);
    NlsTrajectory trajectory;
    for (const auto& row : parsed.rows) {
        if (static_cast<int>(row.size()) != 1 + 2 * grid.nodes())
            throw std::runtime_error("bad row width in " + path.string());
        ScalarField q(grid);
        for (int i = 0; i < grid.nodes(); ++i)
            q[i] = Complex(row[1 + 2 * i], row[2 + 2 * i]);
        trajectory.samples.push_back({std::move(q), row[0]});
    }
    return trajectory;
}

std::vector<std::filesystem::path> emit_plot_data(const ExperimentReport& report,
                                                  const std::filesystem::path& directory,
                                                  const ConfigEcho& echo) {
    std::vector<std::filesystem::path> written;
    if (report.series.empty() && report.convergence_orders.empty() &&
        report.fitted_constants.empty())
        return written;
    std::filesystem::create_directories(directory);

    std::string readme;
    readme += "Plot data for report '" + report.name + "' (filament " + kFilamentVersion + ")\n\n";

    const auto write_series = [&](const std::string& key, const Series& table) {
        std::string csv;
        csv += "# report=" + report.name + "\n# series=" + key + "\n";
        append_echo(csv, echo);
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            csv += (c ? "," : "") + table.columns[c];
        csv += "\n";
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) csv += (c ? "," : "") + fmt17(row[c]);
            csv += "\n";
        }
        const std::filesystem::path path = directory / (report.name + "__" + key + ".csv");
        write_file(path, csv);
        written.push_back(path);

        readme += path.filename().string() + ": columns ";
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            readme += (c ? ", " : "") + table.columns[c];
        readme += "\n";
    };

    for (const auto& [key, table] : report.series) {
        write_series(key, table);
        // Conserved-quantity tables additionally get one drift-vs-time file
        // per functional.
        if (key.rfind("functionals", 0) == 0 && !table.columns.empty() &&
            table.columns.front() == "t") {
            for (std::size_t c = 1; c < table.columns.size(); ++c) {
                Series single;
                single.columns = {"t", table.columns[c]};
                for (const auto& row : table.rows) single.add_row({row[0], row[c]});
                write_series(key + "__" + table.columns[c], single);
            }
        }
    }

    if (!report.convergence_orders.empty()) {
        std::string csv = "# report=" + report.name + "\nquantity,order\n";
        for (const auto& [key, value] : report.convergence_orders)
            csv += key + "," + fmt17(value) + "\n";
        const std::filesystem::path path = directory / (report.name + "__convergence_orders.csv");
        write_file(path, csv);
        written.push_back(path);
        readme += path.filename().string() + ": columns quantity, order\n";
    }
    if (!report.fitted_constants.empty()) {
        std::string csv = "# report=" + report.name + "\nconstant,value,fitted_on\n";
        for (const auto& [key, constant] : report.fitted_constants)
            csv += key + "," + fmt17(constant.value) + "," + constant.fitted_on + "\n";
        const std::filesystem::path path = directory / (report.name + "__fitted_constants.csv");
        write_file(path, csv);
        written.push_back(path);
        readme += path.filename().string() + ": columns constant, value, fitted_on\n";
    }

    const std::filesystem::path readme_path = directory / (report.name + "__README.txt");
    write_file(readme_path, readme);
    written.push_back(readme_path);
    return written;
}

} // namespace filament
