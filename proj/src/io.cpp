#include "photonpair/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "photonpair/errors.hpp"
#include "photonpair/units.hpp"

namespace photonpair::io {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  return out;
}

}  // namespace

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw Error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void write_profile_csv(const std::string& path, const IntensityProfile& p,
                       const std::string& axis_name,
                       const std::string& value_name) {
  std::ostringstream out;
  out << axis_name << "," << value_name << "\n";
  for (std::size_t i = 0; i < p.axis.size(); ++i)
    out << format_double(p.axis[i]) << "," << format_double(p.density[i])
        << "\n";
  write_text_atomic(path, out.str());
}

IntensityProfile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  IntensityProfile p;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2) throw ParseError(path + ": malformed profile row");
    p.axis.push_back(std::stod(cells[0]));
    p.density.push_back(std::stod(cells[1]));
  }
  return p;
}

void write_cwf_csv(const std::string& path, const ChronocyclicWigner& w) {
  std::ostringstream out;
  out << "omega_rad_fs\\t_fs";
  for (double t : w.time_axis) out << "," << format_double(t);
  out << "\n";
  for (std::size_t j = 0; j < w.omega_axis.size(); ++j) {
    out << format_double(w.omega_axis[j]);
    for (std::size_t l = 0; l < w.time_axis.size(); ++l)
      out << "," << format_double(w.values(static_cast<Eigen::Index>(j),
                                           static_cast<Eigen::Index>(l)));
    out << "\n";
  }
  write_text_atomic(path, out.str());
}

ChronocyclicWigner read_cwf_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  ChronocyclicWigner w;
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty CWF file");
  auto header = split_csv_line(line);
  for (std::size_t c = 1; c < header.size(); ++c)
    w.time_axis.push_back(std::stod(header[c]));
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ParseError(path + ": ragged CWF row");
    w.omega_axis.push_back(std::stod(cells[0]));
    std::vector<double> row;
    for (std::size_t c = 1; c < cells.size(); ++c)
      row.push_back(std::stod(cells[c]));
    rows.push_back(std::move(row));
  }
  w.values.resize(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(w.time_axis.size()));
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t l = 0; l < rows[j].size(); ++l)
      w.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) =
          rows[j][l];
  return w;
}

void write_contour_csv(const std::string& path,
                       const std::vector<wigner_numerics::Contour>& contours) {
  std::ostringstream out;
  out << "omega_thz,t_fs\n";
  bool first = true;
  for (const auto& c : contours) {
    if (!first) out << "\n";
    first = false;
    for (const auto& pt : c)
      out << format_double(pt.omega * kThzPerRadFs) << ","
          << format_double(pt.t) << "\n";
  }
  write_text_atomic(path, out.str());
}

std::vector<wigner_numerics::Contour> read_contour_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<wigner_numerics::Contour> contours;
  wigner_numerics::Contour current;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) {
      if (!current.empty()) contours.push_back(std::move(current));
      current.clear();
      continue;
    }
    const auto cells = split_csv_line(line);
    if (cells.size() != 2) throw ParseError(path + ": malformed contour row");
    current.push_back(
        {std::stod(cells[0]) / kThzPerRadFs, std::stod(cells[1])});
  }
  if (!current.empty()) contours.push_back(std::move(current));
  return contours;
}

}  // namespace photonpair::io
