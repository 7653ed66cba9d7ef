#include "pinvspec/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pinvspec {

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

PopulationSpectrum parse_population_spectrum(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<SpectrumAtom> atoms;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double tau = 0.0, weight = 0.0;
    if (!(fields >> tau)) continue;  // blank line
    if (!(fields >> weight))
      throw std::invalid_argument("population spectrum line " + std::to_string(lineno) +
                                  ": expected 'tau weight'");
    std::string rest;
    if (fields >> rest)
      throw std::invalid_argument("population spectrum line " + std::to_string(lineno) +
                                  ": trailing content '" + rest + "'");
    atoms.push_back({tau, weight});
  }
  if (atoms.empty()) throw std::invalid_argument("population spectrum: no atoms found");
  return PopulationSpectrum(std::move(atoms));
}

PopulationSpectrum load_population_spectrum(const std::string& path) {
  return parse_population_spectrum(read_text_file(path));
}

std::string serialize_population_spectrum(const PopulationSpectrum& spectrum) {
  std::ostringstream out;
  for (const auto& a : spectrum.atoms())
    out << format_double(a.tau) << " " << format_double(a.weight) << "\n";
  return out.str();
}

void save_population_spectrum(const PopulationSpectrum& spectrum, const std::string& path) {
  write_text_file(path, serialize_population_spectrum(spectrum));
}

void write_empirical_spectrum_csv(const EmpiricalSpectrum& spectrum, const std::string& path) {
  std::ostringstream out;
  out << "index,eigenvalue\n";
  const auto& e = spectrum.eigenvalues();
  for (std::size_t i = 0; i < e.size(); ++i) out << i << "," << format_double(e[i]) << "\n";
  write_text_file(path, out.str());
}

void write_density_csv(const SpectralLimit& limit, const std::string& path) {
  std::ostringstream out;
  out << "# atom_at_zero=" << format_double(limit.atom_mass) << "\n";
  out << "x,nu\n";
  for (std::size_t i = 0; i < limit.x.size(); ++i)
    out << format_double(limit.x[i]) << "," << format_double(limit.density[i]) << "\n";
  write_text_file(path, out.str());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace pinvspec
