#include "csv_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace tcellsim::cli {

namespace {

constexpr const char* kTrajectoryHeader = "t,N,Np,A,M,total_naive";

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << content;
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open input file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_field(const std::string& field, const std::string& path, int line_no) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0') {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": bad numeric field '" + field + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = kTrajectoryHeader;
    out += '\n';
    for (const StateVector& s : traj.samples) {
        out += format_double(s.t);
        out += ',';
        out += format_double(s.n);
        out += ',';
        out += format_double(s.n_p);
        out += ',';
        out += format_double(s.a);
        out += ',';
        out += format_double(s.m);
        out += ',';
        out += format_double(s.total_naive());
        out += '\n';
    }
    return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    write_file(path, trajectory_csv(traj));
}

Trajectory read_trajectory_csv(const std::string& path) {
    const std::string content = read_file(path);
    std::istringstream stream(content);
    std::string line;
    int line_no = 0;

    if (!std::getline(stream, line)) {
        throw std::runtime_error(path + ": empty file");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kTrajectoryHeader) {
        throw std::runtime_error(path + ": unexpected header '" + line + "'");
    }

    Trajectory traj;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 6) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 6 fields, got " +
                                     std::to_string(fields.size()));
        }
        StateVector s;
        s.t = parse_field(fields[0], path, line_no);
        s.n = parse_field(fields[1], path, line_no);
        s.n_p = parse_field(fields[2], path, line_no);
        s.a = parse_field(fields[3], path, line_no);
        s.m = parse_field(fields[4], path, line_no);
        parse_field(fields[5], path, line_no);  // derived column, recomputed
        traj.samples.push_back(s);
    }
    return traj;
}

namespace {

const char* kSeriesNames[] = {"N", "Np", "A", "M", "total_naive"};
const char* kStatNames[] = {"mean", "var", "min", "max"};

const SeriesStats& series_of(const EnsembleStats& stats, int i) {
    switch (i) {
        case 0: return stats.n;
        case 1: return stats.n_p;
        case 2: return stats.a;
        case 3: return stats.m;
        default: return stats.total_naive;
    }
}

SeriesStats& series_of(EnsembleStats& stats, int i) {
    switch (i) {
        case 0: return stats.n;
        case 1: return stats.n_p;
        case 2: return stats.a;
        case 3: return stats.m;
        default: return stats.total_naive;
    }
}

const std::vector<double>& stat_of(const SeriesStats& s, int j) {
    switch (j) {
        case 0: return s.mean;
        case 1: return s.variance;
        case 2: return s.min;
        default: return s.max;
    }
}

std::vector<double>& stat_of(SeriesStats& s, int j) {
    switch (j) {
        case 0: return s.mean;
        case 1: return s.variance;
        case 2: return s.min;
        default: return s.max;
    }
}

std::string ensemble_header() {
    std::string h = "t";
    for (const char* series : kSeriesNames) {
        for (const char* stat : kStatNames) {
            h += ',';
            h += series;
            h += '_';
            h += stat;
        }
    }
    return h;
}

}  // namespace

std::string ensemble_csv(const EnsembleStats& stats) {
    std::string out = ensemble_header();
    out += '\n';
    for (std::size_t k = 0; k < stats.t.size(); ++k) {
        out += format_double(stats.t[k]);
        for (int i = 0; i < 5; ++i) {
            const SeriesStats& series = series_of(stats, i);
            for (int j = 0; j < 4; ++j) {
                out += ',';
                out += format_double(stat_of(series, j)[k]);
            }
        }
        out += '\n';
    }
    return out;
}

void write_ensemble_csv(const EnsembleStats& stats, const std::string& path) {
    write_file(path, ensemble_csv(stats));
}

EnsembleStats read_ensemble_csv(const std::string& path) {
    const std::string content = read_file(path);
    std::istringstream stream(content);
    std::string line;
    int line_no = 0;

    if (!std::getline(stream, line)) {
        throw std::runtime_error(path + ": empty file");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != ensemble_header()) {
        throw std::runtime_error(path + ": unexpected header '" + line + "'");
    }

    EnsembleStats stats;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 21) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 21 fields, got " +
                                     std::to_string(fields.size()));
        }
        stats.t.push_back(parse_field(fields[0], path, line_no));
        std::size_t f = 1;
        for (int i = 0; i < 5; ++i) {
            SeriesStats& series = series_of(stats, i);
            for (int j = 0; j < 4; ++j) {
                stat_of(series, j).push_back(parse_field(fields[f++], path, line_no));
            }
        }
    }
    return stats;
}

namespace {

nlohmann::json compartment_json(const CompartmentError& e) {
    return nlohmann::json{{"rmse", e.rmse},
                          {"max_abs_err", e.max_abs_err},
                          {"max_rel_err", e.max_rel_err},
                          {"t_at_max_abs", e.t_at_max_abs},
                          {"pass", e.pass}};
}

}  // namespace

std::string comparison_json(const ComparisonReport& report,
                            const ToleranceProfile& tol) {
    nlohmann::json j{{"pass", report.pass},
                     {"tolerance", {{"rel_tol", tol.rel_tol}, {"abs_tol", tol.abs_tol}}},
                     {"compartments",
                      {{"N", compartment_json(report.n)},
                       {"Np", compartment_json(report.n_p)},
                       {"A", compartment_json(report.a)},
                       {"M", compartment_json(report.m)}}}};
    return j.dump(2) + "\n";
}

void write_comparison_json(const ComparisonReport& report,
                           const ToleranceProfile& tol, const std::string& path) {
    write_file(path, comparison_json(report, tol));
}

std::string comparison_table(const ComparisonReport& report) {
    std::ostringstream out;
    out << "compartment      rmse   max_abs   max_rel  t@max_abs  result\n";
    const struct {
        const char* name;
        const CompartmentError* e;
    } rows[] = {{"N", &report.n}, {"Np", &report.n_p}, {"A", &report.a},
                {"M", &report.m}};
    char buf[128];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%-11s %9.4g %9.4g %9.4g %10.4g  %s\n",
                      row.name, row.e->rmse, row.e->max_abs_err,
                      row.e->max_rel_err, row.e->t_at_max_abs,
                      row.e->pass ? "pass" : "FAIL");
        out << buf;
    }
    out << "overall: " << (report.pass ? "pass" : "FAIL") << "\n";
    return out.str();
}

}  // namespace tcellsim::cli
