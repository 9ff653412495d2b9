#pragma once

#include "boxdos/fitlab.hpp"
#include "boxdos/manybody.hpp"
#include "boxdos/spectrum.hpp"
#include "boxdos/staircase.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

// Plain-text CSV formats. Numbers are printed with 12 significant digits ("%.12g") so the
// output is byte-for-byte reproducible.

namespace boxdos::csv {

std::string format_number(double value);

/// `energy,degeneracy[,labels]`. Labels list each state's quantum numbers joined by '|',
/// with states separated by ';' (e.g. `1|1|2;1|2|1;2|1|1`).
void write_spectrum(std::ostream& out, const Spectrum& spectrum, bool with_labels = false);

/// Parses the format written by write_spectrum. The listing is taken to be complete up to
/// its highest energy; all-integer energies are marked exact.
Spectrum read_spectrum(std::istream& in);

/// `energy,N`
void write_staircase(std::ostream& out, const Staircase& staircase);
/// `center,g`
void write_dos(std::ostream& out, const DosSeries& dos);
/// `energy,degeneracy`
void write_degeneracy(std::ostream& out, std::span<const DegeneracyPoint> points);
/// `label,N,alpha,beta,ln_alpha,residual_rms,points`
void write_report(std::ostream& out, std::span<const ReportRow> rows);
/// `indices|energy`, one configuration per line with 1-based state indices separated by spaces.
void write_configs(std::ostream& out, std::span<const BosonConfig> configs);

/// Writes `content` to a temporary file next to `path` and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace boxdos::csv
