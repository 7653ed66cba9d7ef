#pragma once

#include <string>

#include "pinvspec/spectra.hpp"

namespace pinvspec {

// shortest round-trip decimal representation
std::string format_double(double value);

// Population spectrum text format: one "tau weight" pair per line, '#'
// comments allowed.
PopulationSpectrum parse_population_spectrum(const std::string& text);
PopulationSpectrum load_population_spectrum(const std::string& path);
std::string serialize_population_spectrum(const PopulationSpectrum& spectrum);
void save_population_spectrum(const PopulationSpectrum& spectrum, const std::string& path);

// CSV with header "index,eigenvalue"
void write_empirical_spectrum_csv(const EmpiricalSpectrum& spectrum, const std::string& path);

// CSV with a leading "# atom_at_zero=<mass>" comment and header "x,nu"
void write_density_csv(const SpectralLimit& limit, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace pinvspec
