#include "boxdos/csv.hpp"

#include "boxdos/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <unistd.h>

namespace boxdos::csv {

namespace {

std::string join_labels(const std::vector<QuantumNumbers>& labels) {
    std::string out;
    for (std::size_t s = 0; s < labels.size(); ++s) {
        if (s > 0) {
            out += ';';
        }
        for (std::size_t i = 0; i < labels[s].size(); ++i) {
            if (i > 0) {
                out += '|';
            }
            out += std::to_string(labels[s][i]);
        }
    }
    return out;
}

std::vector<QuantumNumbers> split_labels(const std::string& field) {
    std::vector<QuantumNumbers> out;
    std::stringstream states(field);
    std::string state;
    while (std::getline(states, state, ';')) {
        QuantumNumbers qn;
        std::stringstream numbers(state);
        std::string number;
        while (std::getline(numbers, number, '|')) {
            qn.push_back(std::stoi(number));
        }
        out.push_back(std::move(qn));
    }
    return out;
}

double parse_double(const std::string& field, std::size_t line) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(field, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != field.size()) {
        throw ValidationError("spectrum csv line " + std::to_string(line) + ": bad number '" + field + "'");
    }
    return value;
}

} // namespace

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_spectrum(std::ostream& out, const Spectrum& spectrum, bool with_labels) {
    with_labels = with_labels && spectrum.has_labels();
    out << (with_labels ? "energy,degeneracy,labels\n" : "energy,degeneracy\n");
    for (const Level& lv : spectrum.levels()) {
        out << format_number(lv.energy) << ',' << lv.degeneracy;
        if (with_labels) {
            out << ',' << join_labels(lv.labels);
        }
        out << '\n';
    }
}

Spectrum read_spectrum(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError("spectrum csv is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const bool with_labels = line == "energy,degeneracy,labels";
    if (!with_labels && line != "energy,degeneracy") {
        throw ValidationError("spectrum csv header must be 'energy,degeneracy[,labels]', got '" + line + "'");
    }
    std::vector<Level> levels;
    bool all_integer = true;
    for (std::size_t number = 2; std::getline(in, line); ++number) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::stringstream row(line);
        std::string energy_field;
        std::string degeneracy_field;
        std::string labels_field;
        std::getline(row, energy_field, ',');
        std::getline(row, degeneracy_field, ',');
        if (with_labels) {
            std::getline(row, labels_field);
        }
        Level lv;
        lv.energy = parse_double(energy_field, number);
        const double d = parse_double(degeneracy_field, number);
        if (d != std::floor(d)) {
            throw ValidationError("spectrum csv line " + std::to_string(number) + ": degeneracy is not an integer");
        }
        lv.degeneracy = static_cast<std::int64_t>(d);
        if (with_labels && !labels_field.empty()) {
            lv.labels = split_labels(labels_field);
        }
        all_integer = all_integer && lv.energy == std::floor(lv.energy);
        levels.push_back(std::move(lv));
    }
    const double e_max = levels.empty() ? 0.0 : levels.back().energy;
    return Spectrum(std::move(levels), e_max, all_integer ? 1 : 0);
}

void write_staircase(std::ostream& out, const Staircase& staircase) {
    out << "energy,N\n";
    for (std::size_t i = 0; i < staircase.size(); ++i) {
        out << format_number(staircase.energies()[i]) << ',' << staircase.counts()[i] << '\n';
    }
}

void write_dos(std::ostream& out, const DosSeries& dos) {
    out << "center,g\n";
    for (const DosSample& s : dos.samples) {
        out << format_number(s.center) << ',' << format_number(s.g) << '\n';
    }
}

void write_degeneracy(std::ostream& out, std::span<const DegeneracyPoint> points) {
    out << "energy,degeneracy\n";
    for (const DegeneracyPoint& p : points) {
        out << format_number(p.energy) << ',' << p.degeneracy << '\n';
    }
}

void write_report(std::ostream& out, std::span<const ReportRow> rows) {
    out << "label,N,alpha,beta,ln_alpha,residual_rms,points\n";
    for (const ReportRow& r : rows) {
        out << r.label << ',' << r.particles << ',' << format_number(r.fit.alpha) << ',' << format_number(r.fit.beta)
            << ',' << format_number(r.fit.ln_alpha) << ',' << format_number(r.fit.residual_rms) << ','
            << r.fit.point_count << '\n';
    }
}

void write_configs(std::ostream& out, std::span<const BosonConfig> configs) {
    out << "indices|energy\n";
    for (const BosonConfig& c : configs) {
        for (std::size_t i = 0; i < c.occupied.size(); ++i) {
            out << (i > 0 ? " " : "") << c.occupied[i] + 1;
        }
        out << '|' << format_number(c.energy) << '\n';
    }
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw ComputationError("cannot open " + tmp.string() + " for writing");
        }
        file << content;
        file.flush();
        if (!file) {
            throw ComputationError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ComputationError("cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

} // namespace boxdos::csv
